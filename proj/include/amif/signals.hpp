#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace amif::signals {

// Zero-mean, unit-variance rescaling in place.
inline void standardize(std::vector<double>& x) {
  if (x.empty()) return;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size());
  const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
  for (double& v : x) v = (v - mean) * scale;
}

inline std::vector<double> white_noise(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<double> x(count);
  for (double& v : x) v = gauss(rng);
  return x;
}

// Gaussian AR(2) with a spectral peak at `period` samples; pole radius sets
// the bandwidth (closer to 1 is narrower). Output is standardized.
inline std::vector<double> resonant_ar2(std::size_t count, double period, double pole_radius, std::uint64_t seed) {
  constexpr std::size_t kBurnIn = 1000;
  const double w = 2.0 * std::numbers::pi / period;
  const double a1 = 2.0 * pole_radius * std::cos(w);
  const double a2 = -pole_radius * pole_radius;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double x1 = 0.0;
  double x2 = 0.0;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count + kBurnIn; ++t) {
    const double x = a1 * x1 + a2 * x2 + gauss(rng);
    x2 = x1;
    x1 = x;
    if (t >= kBurnIn) out.push_back(x);
  }
  standardize(out);
  return out;
}

// Slowly varying narrowband vibration: first AMIF minimum near a quarter of
// the 16-sample period.
inline std::vector<double> narrowband_regime(std::size_t count, std::uint64_t seed) {
  return resonant_ar2(count, 16.0, 0.95, seed);
}

// Energy moved towards high frequencies over a wide band: first AMIF minimum
// at lag 1.
inline std::vector<double> broadband_regime(std::size_t count, std::uint64_t seed) {
  return resonant_ar2(count, 4.0, 0.8, seed);
}

inline std::vector<double> sine(std::size_t count, double period, double phase = 0.0) {
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) {
    x[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / period + phase);
  }
  return x;
}

}  // namespace amif::signals
