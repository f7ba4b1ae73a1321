#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "amif/error.hpp"

namespace amif {

struct EmbeddingSpec {
  std::size_t dim = 1;
  std::size_t delay = 1;
};

// Delay vectors stored row-major, `dim` coordinates per point.
struct Embedding {
  std::size_t dim = 0;
  std::vector<double> coords;

  std::size_t size() const noexcept { return dim == 0 ? 0 : coords.size() / dim; }
  std::span<const double> point(std::size_t i) const { return std::span<const double>(coords).subspan(i * dim, dim); }
};

inline Embedding takens_embed(std::span<const double> series, const EmbeddingSpec& spec) {
  if (spec.dim < 1 || spec.delay < 1) throw ConfigError("embedding dimension and delay must be >= 1");
  const std::size_t span_len = (spec.dim - 1) * spec.delay;
  if (series.size() < span_len + 1) {
    throw SizingError("series of " + std::to_string(series.size()) + " samples too short for dim " +
                      std::to_string(spec.dim) + ", delay " + std::to_string(spec.delay));
  }
  const std::size_t points = series.size() - span_len;
  Embedding out{spec.dim, {}};
  out.coords.reserve(points * spec.dim);
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t k = 0; k < spec.dim; ++k) out.coords.push_back(series[i + k * spec.delay]);
  }
  return out;
}

// Cao's E1/E2 statistics, index d - 1 for d = 1..d_max.
struct CaoProfile {
  std::vector<double> e1;
  std::vector<double> e2;
};

namespace detail {

struct CaoMeans {
  double e;       // mean ratio of (d+1)- to d-dimensional neighbour distance
  double e_star;  // mean |x_{i+d tau} - x_{n(i)+d tau}|
};

// Exhaustive max-norm nearest neighbours in dimension d over the points that
// also have a (d+1)-th coordinate. Zero-distance neighbours are skipped.
inline CaoMeans cao_means(std::span<const double> x, std::size_t d, std::size_t tau) {
  const std::size_t count = x.size() - d * tau;
  double sum_ratio = 0.0;
  double sum_star = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < count; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = i;
    for (std::size_t j = 0; j < count; ++j) {
      if (j == i) continue;
      double dist = 0.0;
      for (std::size_t k = 0; k < d && dist < best; ++k) {
        dist = std::max(dist, std::abs(x[i + k * tau] - x[j + k * tau]));
      }
      if (dist < best && dist > 0.0) {
        best = dist;
        best_j = j;
      }
    }
    if (best_j == i) continue;
    const double extra = std::abs(x[i + d * tau] - x[best_j + d * tau]);
    sum_ratio += std::max(best, extra) / best;
    sum_star += extra;
    ++used;
  }
  if (used == 0) throw DegenerateInputError("all neighbour distances are zero");
  return {sum_ratio / static_cast<double>(used), sum_star / static_cast<double>(used)};
}

}  // namespace detail

inline constexpr std::size_t kCaoMaxSeries = 20000;

inline CaoProfile cao_profile(std::span<const double> series, std::size_t tau, std::size_t d_max) {
  if (tau < 1) throw ConfigError("delay must be >= 1");
  if (d_max < 2) throw ConfigError("d_max must be >= 2");
  if (series.size() > kCaoMaxSeries) {
    throw SizingError("exhaustive neighbour search is capped at " + std::to_string(kCaoMaxSeries) + " samples");
  }
  if (series.size() < (d_max + 1) * tau + 2) {
    throw SizingError("series too short for a " + std::to_string(d_max + 1) + "-dimensional embedding");
  }
  const auto [mn, mx] = std::minmax_element(series.begin(), series.end());
  if (*mn == *mx) throw DegenerateInputError("constant series has no neighbour structure");

  std::vector<detail::CaoMeans> means;
  means.reserve(d_max + 1);
  for (std::size_t d = 1; d <= d_max + 1; ++d) means.push_back(detail::cao_means(series, d, tau));

  CaoProfile out;
  for (std::size_t d = 1; d <= d_max; ++d) {
    const auto& lo = means[d - 1];
    const auto& hi = means[d];
    if (lo.e_star <= 0.0) throw DegenerateInputError("E* vanished at d = " + std::to_string(d));
    out.e1.push_back(hi.e / lo.e);
    out.e2.push_back(hi.e_star / lo.e_star);
  }
  return out;
}

}  // namespace amif
