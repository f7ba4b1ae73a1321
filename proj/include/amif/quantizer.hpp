#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amif/error.hpp"

namespace amif {

// A discrete amplitude level in [1, n].
struct QuantizedSample {
  std::uint32_t level = 1;

  friend auto operator<=>(const QuantizedSample&, const QuantizedSample&) = default;
};

// Linear min-max mapping of raw amplitudes onto levels 1..n. Immutable once
// built; changing the bounds means rebuilding all downstream histogram state.
class QuantizerSpec {
 public:
  static constexpr std::uint32_t kMaxLevels = 65536;

  QuantizerSpec(std::uint32_t levels, double lo, double hi) : levels_(levels), lo_(lo), hi_(hi) {
    if (levels < 2 || levels > kMaxLevels) {
      throw ConfigError("quantizer levels must be in [2, 65536], got " + std::to_string(levels));
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
      throw ConfigError("quantizer bounds must be finite with hi > lo");
    }
  }

  std::uint32_t levels() const noexcept { return levels_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  QuantizedSample operator()(double x) const {
    if (!std::isfinite(x)) {
      throw InputError("cannot quantize non-finite sample");
    }
    // Clamp in floating point so out-of-range inputs never overflow the cast.
    const double t = std::floor((x - lo_) * static_cast<double>(levels_) / (hi_ - lo_));
    if (!(t >= 0.0)) return {1};
    if (t >= static_cast<double>(levels_ - 1)) return {levels_};
    return {static_cast<std::uint32_t>(t) + 1};
  }

 private:
  std::uint32_t levels_;
  double lo_;
  double hi_;
};

inline QuantizedSample quantize(const QuantizerSpec& spec, double x) { return spec(x); }

// Bounds from the observed extrema. Constant input widens to [lo, lo + 1).
inline QuantizerSpec calibrate(std::span<const double> samples, std::uint32_t levels) {
  if (samples.empty()) {
    throw CalibrationError("cannot calibrate quantizer from empty input");
  }
  if (levels < 2) {
    throw CalibrationError("quantizer needs at least 2 levels");
  }
  for (double x : samples) {
    if (!std::isfinite(x)) throw CalibrationError("calibration input contains non-finite sample");
  }
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *mn;
  const double hi = (*mx > *mn) ? *mx : *mn + 1.0;
  return QuantizerSpec(levels, lo, hi);
}

inline std::vector<QuantizedSample> quantize_all(const QuantizerSpec& spec, std::span<const double> samples) {
  std::vector<QuantizedSample> out;
  out.reserve(samples.size());
  for (double x : samples) out.push_back(spec(x));
  return out;
}

}  // namespace amif
