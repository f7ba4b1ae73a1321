#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "amif/error.hpp"

namespace amif {

using RosslerState = std::array<double, 3>;

struct RosslerParams {
  double a = 0.15;
  double b = 0.2;
  double c = 10.0;
  double dt = 0.05;
  std::size_t transient_steps = 5000;
  RosslerState initial{1.0, 1.0, 1.0};
};

// Sampling stride (integration steps per emitted sample) at which the batch
// AMIF of 8192 samples, 128 levels, has its first minimum at lag 14. Chosen
// by the stride sweep in tests/test_rossler_calibration.cpp.
inline constexpr std::size_t kRosslerCalibratedStride = 2;

namespace detail {

inline RosslerState rossler_rhs(const RosslerState& s, const RosslerParams& p) {
  return {-s[1] - s[2], s[0] + p.a * s[1], p.b + s[2] * (s[0] - p.c)};
}

inline RosslerState rk4_step(const RosslerState& s, const RosslerParams& p) {
  auto axpy = [](const RosslerState& x, double h, const RosslerState& k) {
    return RosslerState{x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2]};
  };
  const double h = p.dt;
  const auto k1 = rossler_rhs(s, p);
  const auto k2 = rossler_rhs(axpy(s, h / 2, k1), p);
  const auto k3 = rossler_rhs(axpy(s, h / 2, k2), p);
  const auto k4 = rossler_rhs(axpy(s, h, k3), p);
  RosslerState next;
  for (int i = 0; i < 3; ++i) next[i] = s[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return next;
}

}  // namespace detail

// Full states after the transient, one every `stride` RK4 steps.
inline std::vector<RosslerState> rossler_trajectory(std::size_t samples, std::size_t stride,
                                                    const RosslerParams& params = {}) {
  if (samples < 1) throw ConfigError("at least one Rossler sample must be requested");
  if (stride < 1) throw ConfigError("sample stride must be >= 1");
  if (!(params.dt > 0.0)) throw ConfigError("integration step must be positive");
  RosslerState s = params.initial;
  std::size_t step = 0;
  auto advance = [&] {
    s = detail::rk4_step(s, params);
    ++step;
    if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || !std::isfinite(s[2])) {
      throw IntegrationError("Rossler state diverged at step " + std::to_string(step));
    }
  };
  for (std::size_t i = 0; i < params.transient_steps; ++i) advance();
  std::vector<RosslerState> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t k = 0; k < stride; ++k) advance();
    out.push_back(s);
  }
  return out;
}

// x coordinate only.
inline std::vector<double> rossler_generate(std::size_t samples, std::size_t stride = kRosslerCalibratedStride,
                                            const RosslerParams& params = {}) {
  const auto states = rossler_trajectory(samples, stride, params);
  std::vector<double> x;
  x.reserve(states.size());
  for (const auto& s : states) x.push_back(s[0]);
  return x;
}

}  // namespace amif
