#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace amif {

namespace detail {

// FFTW planning is not thread-safe; execution of distinct plans is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

inline std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in, int sign) {
  std::vector<std::complex<double>> src(in.begin(), in.end());
  std::vector<std::complex<double>> out(in.size());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(in.size()), reinterpret_cast<fftw_complex*>(src.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace detail

inline std::vector<std::complex<double>> forward_dft(std::span<const double> x) {
  std::vector<std::complex<double>> c(x.begin(), x.end());
  return detail::dft(c, FFTW_FORWARD);
}

inline std::vector<double> amplitude_spectrum(std::span<const double> x) {
  const auto spectrum = forward_dft(x);
  std::vector<double> mag(spectrum.size());
  std::transform(spectrum.begin(), spectrum.end(), mag.begin(), [](auto z) { return std::abs(z); });
  return mag;
}

struct Surrogate {
  std::vector<double> series;
  double max_imag_residue = 0.0;  // largest |Im| of the inverse transform
};

// Fourier-phase randomization over the full series. DC and Nyquist bins keep
// their phase; every other bin keeps its magnitude and gets a uniform random
// phase, mirrored onto its conjugate partner.
inline Surrogate phase_surrogate_detailed(std::span<const double> series, std::uint64_t seed) {
  const std::size_t n = series.size();
  if (n < 2) return {std::vector<double>(series.begin(), series.end()), 0.0};

  auto spectrum = forward_dft(series);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (std::size_t k = 1; 2 * k < n; ++k) {
    const double mag = std::abs(spectrum[k]);
    spectrum[k] = std::polar(mag, phase(rng));
    spectrum[n - k] = std::conj(spectrum[k]);
  }
  const auto inverse = detail::dft(spectrum, FFTW_BACKWARD);
  Surrogate out;
  out.series.resize(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.series[i] = inverse[i].real() * scale;
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(inverse[i].imag() * scale));
  }
  return out;
}

inline std::vector<double> phase_surrogate(std::span<const double> series, std::uint64_t seed) {
  return phase_surrogate_detailed(series, seed).series;
}

}  // namespace amif
