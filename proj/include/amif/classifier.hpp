#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "amif/error.hpp"

namespace amif {

enum class HealthState { Good, Aged, Indeterminate };

inline std::string_view to_string(HealthState s) {
  switch (s) {
    case HealthState::Good: return "Good";
    case HealthState::Aged: return "Aged";
    case HealthState::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

// A first minimum at or below aged_max reads as Aged, at or above good_min as
// Good. The defaults split the full-series delays 1 (aged) and 4 (healthy).
struct Thresholds {
  std::size_t aged_max = 2;
  std::size_t good_min = 3;

  void validate() const {
    if (!(aged_max < good_min)) {
      throw ConfigError("thresholds need aged_max < good_min (got " + std::to_string(aged_max) + ", " +
                        std::to_string(good_min) + ")");
    }
  }
};

struct Verdict {
  HealthState state = HealthState::Indeterminate;
  std::optional<std::size_t> first_min;
  Thresholds thresholds;
};

inline Verdict classify(std::optional<std::size_t> first_min, const Thresholds& thresholds = {}) {
  thresholds.validate();
  Verdict v{HealthState::Indeterminate, first_min, thresholds};
  if (first_min) {
    if (*first_min <= thresholds.aged_max) {
      v.state = HealthState::Aged;
    } else if (*first_min >= thresholds.good_min) {
      v.state = HealthState::Good;
    }
  }
  return v;
}

}  // namespace amif
