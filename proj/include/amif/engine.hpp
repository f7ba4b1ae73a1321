#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amif/error.hpp"
#include "amif/histogram.hpp"
#include "amif/quantizer.hpp"

namespace amif {

// Sizing shared by the batch and streaming paths.
struct AmifParams {
  std::uint32_t levels = 128;
  std::size_t window = 512;  // m, number of (x_i, x_{i+l}) pairs per lag
  std::size_t max_lag = 15;  // L

  std::size_t buffer_size() const noexcept { return window + max_lag; }

  void validate() const {
    if (levels < 2 || levels > QuantizerSpec::kMaxLevels) {
      throw ConfigError("levels must be in [2, 65536], got " + std::to_string(levels));
    }
    if (window < 2) throw SizingError("window must hold at least 2 samples");
    if (max_lag < 1 || max_lag >= window) {
      throw SizingError("max lag must satisfy 1 <= L < m (L = " + std::to_string(max_lag) +
                        ", m = " + std::to_string(window) + ")");
    }
  }
};

// AMIF in bits for lags 0..L. values[0] is the marginal entropy of A.
struct AmifProfile {
  std::vector<double> values;
  std::size_t window_size = 0;
  std::uint32_t levels = 0;

  std::size_t max_lag() const noexcept { return values.empty() ? 0 : values.size() - 1; }
};

inline double marginal_entropy(const MarginalHistogram& h) {
  if (h.total() == 0) throw InputError("entropy of an empty histogram is undefined");
  const double total = static_cast<double>(h.total());
  double entropy = 0.0;
  for (std::uint32_t c : h.counts()) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    entropy -= p * std::log2(p);
  }
  return entropy;
}

// Plug-in mutual information of one joint histogram against its marginals,
// all normalized by m.
inline double mutual_information(const JointHistogram& joint, const MarginalHistogram& a, const MarginalHistogram& b,
                                 std::size_t m) {
  const double md = static_cast<double>(m);
  const std::uint32_t n = joint.levels();
  double mi = 0.0;
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t c = 0; c < n; ++c) {
      const std::uint32_t v = joint.at(r, c);
      if (v == 0) continue;
      const double p_ab = v / md;
      const double p_a = a.counts()[r] / md;
      const double p_b = b.counts()[c] / md;
      mi += p_ab * std::log2(p_ab / (p_a * p_b));
    }
  }
  return mi;
}

// Batch AMIF over the leading m + L samples of `series`.
inline AmifProfile batch_amif(std::span<const QuantizedSample> series, const AmifParams& params) {
  params.validate();
  if (series.size() < params.buffer_size()) {
    throw SizingError("series of " + std::to_string(series.size()) + " samples is shorter than m + L = " +
                      std::to_string(params.buffer_size()));
  }
  const auto h = build_histograms(series, params.window, params.max_lag, params.levels);
  AmifProfile profile{{}, params.window, params.levels};
  profile.values.reserve(params.max_lag + 1);
  profile.values.push_back(marginal_entropy(h.a));
  for (std::size_t l = 1; l <= params.max_lag; ++l) {
    profile.values.push_back(mutual_information(h.joint[l - 1], h.a, h.b[l - 1], params.window));
  }
  return profile;
}

// Smallest strict local minimum over lags 1..L-1; lag 0 is the left
// neighbour of lag 1. Plateaus never qualify.
inline std::optional<std::size_t> first_minimum(std::span<const double> values) {
  if (values.size() < 3) return std::nullopt;
  for (std::size_t l = 1; l + 1 < values.size(); ++l) {
    if (values[l] < values[l - 1] && values[l] < values[l + 1]) return l;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> first_minimum(const AmifProfile& profile) { return first_minimum(profile.values); }

// Contribution-cell recomputation counters.
struct WorkStats {
  std::size_t last_max_per_lag = 0;  // max over lags, most recent update
  std::size_t peak_per_lag = 0;      // max over lags and all updates
  std::uint64_t total_cells = 0;     // summed over lags and updates
  std::uint64_t updates = 0;         // incremental (post warm-up) samples
};

// Sliding-window AMIF over a stream of quantized samples. Each new sample
// touches one added and one removed bin of the shared histogram A and one
// added/removed pair per lag; only the joint rows and columns whose marginal
// or joint counts moved are re-evaluated.
class StreamingEngine {
 public:
  static constexpr std::size_t kDefaultResyncEvery = 65536;
  static constexpr std::size_t kMaxCacheCells = std::size_t{1} << 26;

  explicit StreamingEngine(const AmifParams& params, std::size_t resync_every = kDefaultResyncEvery)
      : params_(params),
        resync_every_(resync_every),
        window_((params.validate(), params.buffer_size())),
        marginal_a_(params.levels) {
    const std::size_t n = params_.levels;
    if (n * n * params_.max_lag > kMaxCacheCells) {
      throw SizingError("levels^2 * max_lag exceeds the contribution cache limit");
    }
    log2_count_.resize(params_.window + 1, 0.0);
    for (std::size_t v = 1; v <= params_.window; ++v) log2_count_[v] = std::log2(static_cast<double>(v));
    inv_m_ = 1.0 / static_cast<double>(params_.window);
    lags_.reserve(params_.max_lag);
    for (std::size_t l = 1; l <= params_.max_lag; ++l) {
      lags_.push_back(LagState{l, JointHistogram(params_.levels), MarginalHistogram(params_.levels),
                               std::vector<double>(n * n, 0.0), 0.0});
    }
  }

  const AmifParams& params() const noexcept { return params_; }
  bool warm() const noexcept { return warm_; }
  const SampleWindow& window() const noexcept { return window_; }
  const MarginalHistogram& marginal_a() const noexcept { return marginal_a_; }
  const MarginalHistogram& marginal_b(std::size_t lag) const { return lag_at(lag).marginal_b; }
  const JointHistogram& joint(std::size_t lag) const { return lag_at(lag).joint; }
  std::span<const double> contributions(std::size_t lag) const { return lag_at(lag).contributions; }
  double lag_amif(std::size_t lag) const { return lag_at(lag).amif; }
  const WorkStats& work() const noexcept { return work_; }
  std::size_t samples_since_resync() const noexcept { return since_resync_; }

  // Feeds one sample. Returns true once the window holds m + L samples.
  bool update(QuantizedSample s) {
    if (s.level < 1 || s.level > params_.levels) {
      throw InputError("level " + std::to_string(s.level) + " outside [1, " + std::to_string(params_.levels) + "]");
    }
    const auto evicted = window_.push(s);
    if (!warm_) {
      if (window_.full()) {
        rebuild();
        warm_ = true;
      }
      return warm_;
    }
    slide(*evicted);
    if (resync_every_ != 0 && since_resync_ >= resync_every_) resync();
    return true;
  }

  std::optional<AmifProfile> push(QuantizedSample s) {
    if (!update(s)) return std::nullopt;
    return profile();
  }

  AmifProfile profile() const {
    if (!warm_) throw SizingError("engine is still warming up");
    AmifProfile p{{}, params_.window, params_.levels};
    p.values.reserve(params_.max_lag + 1);
    p.values.push_back(marginal_entropy(marginal_a_));
    for (const auto& lag : lags_) p.values.push_back(lag.amif);
    return p;
  }

  // Recomputes every contribution cell and per-lag sum from the integer
  // histograms. Histograms are left untouched.
  void resync() {
    if (!warm_) return;
    const std::uint32_t n = params_.levels;
    const auto a = marginal_a_.counts();
    for (auto& lag : lags_) {
      const auto b = lag.marginal_b.counts();
      double sum = 0.0;
      for (std::uint32_t r = 0; r < n; ++r) {
        for (std::uint32_t c = 0; c < n; ++c) {
          const double t = term(lag.joint.at(r, c), a[r], b[c]);
          lag.contributions[static_cast<std::size_t>(r) * n + c] = t;
          sum += t;
        }
      }
      lag.amif = sum;
    }
    since_resync_ = 0;
  }

  // Drops all samples and histogram state, keeping the configuration.
  void reset() {
    window_.clear();
    marginal_a_.clear();
    for (auto& lag : lags_) {
      lag.joint.clear();
      lag.marginal_b.clear();
      std::fill(lag.contributions.begin(), lag.contributions.end(), 0.0);
      lag.amif = 0.0;
    }
    warm_ = false;
    since_resync_ = 0;
    work_ = {};
  }

 private:
  struct LagState {
    std::size_t lag;
    JointHistogram joint;
    MarginalHistogram marginal_b;
    std::vector<double> contributions;  // n x n, row-major
    double amif;
  };

  const LagState& lag_at(std::size_t lag) const {
    if (lag < 1 || lag > lags_.size()) throw SizingError("lag " + std::to_string(lag) + " out of range");
    return lags_[lag - 1];
  }

  // p_ab * log2(p_ab / (p_a p_b)) with all three probabilities over m.
  // The table maps a zero count to 0, so an empty cell yields exactly 0.
  double term(std::uint32_t v, std::uint32_t va, std::uint32_t vb) const noexcept {
    return v * inv_m_ * (log2_count_[v] + log2_count_[params_.window] - log2_count_[va] - log2_count_[vb]);
  }

  void rebuild() {
    const std::size_t m = params_.window;
    marginal_a_.clear();
    for (std::size_t i = 0; i < m; ++i) marginal_a_.add(window_[i]);
    for (auto& lag : lags_) {
      lag.joint.clear();
      lag.marginal_b.clear();
      for (std::size_t i = 0; i < m; ++i) {
        lag.marginal_b.add(window_[i + lag.lag]);
        lag.joint.add(window_[i], window_[i + lag.lag]);
      }
    }
    warm_ = true;
    resync();
  }

  // Window already advanced: index 0 is the oldest retained sample.
  void slide(QuantizedSample evicted) {
    const std::size_t m = params_.window;
    const QuantizedSample a_add = window_[m - 1];
    const QuantizedSample a_rem = evicted;
    marginal_a_.add(a_add);
    marginal_a_.remove(a_rem);

    const std::uint32_t n = params_.levels;
    const auto a = marginal_a_.counts();
    const std::size_t row_add = a_add.level - 1;
    const std::size_t row_rem = a_rem.level - 1;
    const bool rows_changed = row_add != row_rem;

    std::size_t max_cells = 0;
    for (auto& lag : lags_) {
      const QuantizedSample b_add = window_[m - 1 + lag.lag];
      const QuantizedSample b_rem = window_[lag.lag - 1];
      lag.marginal_b.add(b_add);
      lag.marginal_b.remove(b_rem);
      lag.joint.add(a_add, b_add);
      lag.joint.remove(a_rem, b_rem);

      const auto b = lag.marginal_b.counts();
      const std::size_t col_add = b_add.level - 1;
      const std::size_t col_rem = b_rem.level - 1;
      const bool cols_changed = col_add != col_rem;

      const std::uint32_t* joint = lag.joint.counts().data();
      double* cache = lag.contributions.data();
      const double* log2c = log2_count_.data();
      const double log2m = log2c[m];
      double fresh_sum = 0.0;
      double stale_sum = 0.0;
      std::size_t cells = 0;
      auto refresh_row = [&](std::size_t r) {
        const std::uint32_t* jr = joint + r * n;
        double* cr = cache + r * n;
        const double base = log2m - log2c[a[r]];
        double f0 = 0.0, f1 = 0.0, s0 = 0.0, s1 = 0.0;
        std::size_t c = 0;
        for (; c + 1 < n; c += 2) {
          const double t0 = jr[c] * inv_m_ * (log2c[jr[c]] + base - log2c[b[c]]);
          const double t1 = jr[c + 1] * inv_m_ * (log2c[jr[c + 1]] + base - log2c[b[c + 1]]);
          s0 += cr[c];
          s1 += cr[c + 1];
          f0 += t0;
          f1 += t1;
          cr[c] = t0;
          cr[c + 1] = t1;
        }
        for (; c < n; ++c) {
          const double t = term(jr[c], a[r], b[c]);
          s0 += cr[c];
          f0 += t;
          cr[c] = t;
        }
        fresh_sum += f0 + f1;
        stale_sum += s0 + s1;
        cells += n;
      };
      auto refresh_cols = [&](std::size_t skip0, std::size_t skip1, bool skip) {
        const double bc0 = log2m - log2c[b[col_add]];
        const double bc1 = log2m - log2c[b[col_rem]];
        double f0 = 0.0, f1 = 0.0, s0 = 0.0, s1 = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (skip && (r == skip0 || r == skip1)) continue;
          const std::size_t i0 = r * n + col_add;
          const std::size_t i1 = r * n + col_rem;
          const double la = log2c[a[r]];
          const double t0 = joint[i0] * inv_m_ * (log2c[joint[i0]] + bc0 - la);
          const double t1 = joint[i1] * inv_m_ * (log2c[joint[i1]] + bc1 - la);
          s0 += cache[i0];
          s1 += cache[i1];
          f0 += t0;
          f1 += t1;
          cache[i0] = t0;
          cache[i1] = t1;
          cells += 2;
        }
        fresh_sum += f0 + f1;
        stale_sum += s0 + s1;
      };
      if (rows_changed) {
        refresh_row(row_add);
        refresh_row(row_rem);
      }
      if (cols_changed) refresh_cols(row_add, row_rem, rows_changed);
      const double delta = fresh_sum - stale_sum;
      // With neither rows nor columns changed the added and removed pairs
      // coincide and nothing moved.
      lag.amif += delta;
      max_cells = std::max(max_cells, cells);
      work_.total_cells += cells;
    }
    work_.last_max_per_lag = max_cells;
    work_.peak_per_lag = std::max(work_.peak_per_lag, max_cells);
    ++work_.updates;
    ++since_resync_;
  }

  AmifParams params_;
  std::size_t resync_every_;
  SampleWindow window_;
  MarginalHistogram marginal_a_;
  std::vector<LagState> lags_;
  std::vector<double> log2_count_;
  double inv_m_ = 0.0;
  bool warm_ = false;
  std::size_t since_resync_ = 0;
  WorkStats work_;
};

}  // namespace amif
