#pragma once

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amif/error.hpp"
#include "amif/quantizer.hpp"

namespace amif {

// Fixed-capacity FIFO of quantized samples. Index 0 is the oldest element.
class SampleWindow {
 public:
  explicit SampleWindow(std::size_t capacity) : buffer_(capacity) {
    if (capacity == 0) throw SizingError("sample window capacity must be positive");
  }

  std::size_t capacity() const noexcept { return buffer_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool full() const noexcept { return count_ == buffer_.size(); }

  // Appends s. Returns the evicted oldest sample when the window was full.
  std::optional<QuantizedSample> push(QuantizedSample s) {
    if (count_ < buffer_.size()) {
      buffer_[(head_ + count_) % buffer_.size()] = s;
      ++count_;
      return std::nullopt;
    }
    const QuantizedSample evicted = buffer_[head_];
    buffer_[head_] = s;
    head_ = (head_ + 1) % buffer_.size();
    return evicted;
  }

  QuantizedSample operator[](std::size_t i) const noexcept { return buffer_[(head_ + i) % buffer_.size()]; }

  std::vector<QuantizedSample> contents() const {
    std::vector<QuantizedSample> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) out.push_back((*this)[i]);
    return out;
  }

  void clear() noexcept {
    head_ = 0;
    count_ = 0;
  }

 private:
  std::vector<QuantizedSample> buffer_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
};

// Exact integer histogram over levels 1..n.
class MarginalHistogram {
 public:
  explicit MarginalHistogram(std::uint32_t levels) : counts_(levels, 0) {}

  static MarginalHistogram from_counts(std::vector<std::uint32_t> counts) {
    MarginalHistogram h(0);
    h.counts_ = std::move(counts);
    for (auto c : h.counts_) h.total_ += c;
    return h;
  }

  std::uint32_t levels() const noexcept { return static_cast<std::uint32_t>(counts_.size()); }
  std::uint64_t total() const noexcept { return total_; }

  std::uint32_t operator[](QuantizedSample s) const { return counts_[index(s)]; }
  std::span<const std::uint32_t> counts() const noexcept { return counts_; }

  void add(QuantizedSample s) {
    ++counts_[index(s)];
    ++total_;
  }

  void remove(QuantizedSample s) {
    auto& c = counts_[index(s)];
    if (c == 0) {
      throw ConsistencyFault("marginal histogram decrement of empty bin " + std::to_string(s.level));
    }
    --c;
    --total_;
  }

  void clear() noexcept {
    std::fill(counts_.begin(), counts_.end(), 0u);
    total_ = 0;
  }

  friend bool operator==(const MarginalHistogram&, const MarginalHistogram&) = default;

 private:
  std::size_t index(QuantizedSample s) const {
    if (s.level < 1 || s.level > counts_.size()) {
      throw InputError("level " + std::to_string(s.level) + " outside [1, " + std::to_string(counts_.size()) + "]");
    }
    return s.level - 1;
  }

  std::vector<std::uint32_t> counts_;
  std::uint64_t total_ = 0;
};

// n x n histogram of (earlier, later) level pairs, row-major with the earlier
// sample selecting the row.
class JointHistogram {
 public:
  explicit JointHistogram(std::uint32_t levels)
      : levels_(levels), counts_(static_cast<std::size_t>(levels) * levels, 0) {}

  std::uint32_t levels() const noexcept { return levels_; }
  std::uint64_t total() const noexcept { return total_; }

  std::uint32_t operator()(QuantizedSample row, QuantizedSample col) const { return counts_[index(row, col)]; }
  std::uint32_t at(std::size_t row, std::size_t col) const noexcept { return counts_[row * levels_ + col]; }
  std::span<const std::uint32_t> counts() const noexcept { return counts_; }

  void add(QuantizedSample row, QuantizedSample col) {
    ++counts_[index(row, col)];
    ++total_;
  }

  void remove(QuantizedSample row, QuantizedSample col) {
    auto& c = counts_[index(row, col)];
    if (c == 0) {
      throw ConsistencyFault("joint histogram decrement of empty cell (" + std::to_string(row.level) + ", " +
                             std::to_string(col.level) + ")");
    }
    --c;
    --total_;
  }

  void clear() noexcept {
    std::fill(counts_.begin(), counts_.end(), 0u);
    total_ = 0;
  }

  MarginalHistogram row_sums() const {
    std::vector<std::uint32_t> sums(levels_, 0);
    for (std::uint32_t r = 0; r < levels_; ++r) {
      for (std::uint32_t c = 0; c < levels_; ++c) sums[r] += at(r, c);
    }
    return MarginalHistogram::from_counts(std::move(sums));
  }

  MarginalHistogram column_sums() const {
    std::vector<std::uint32_t> sums(levels_, 0);
    for (std::uint32_t r = 0; r < levels_; ++r) {
      for (std::uint32_t c = 0; c < levels_; ++c) sums[c] += at(r, c);
    }
    return MarginalHistogram::from_counts(std::move(sums));
  }

  friend bool operator==(const JointHistogram&, const JointHistogram&) = default;

 private:
  std::size_t index(QuantizedSample row, QuantizedSample col) const {
    if (row.level < 1 || row.level > levels_ || col.level < 1 || col.level > levels_) {
      throw InputError("joint cell (" + std::to_string(row.level) + ", " + std::to_string(col.level) +
                       ") outside the level alphabet");
    }
    return static_cast<std::size_t>(row.level - 1) * levels_ + (col.level - 1);
  }

  std::uint32_t levels_;
  std::vector<std::uint32_t> counts_;
  std::uint64_t total_ = 0;
};

// Histograms for one window under the shared-A alignment: with a window of
// m + L samples, A covers [0, m), B_l covers [l, l + m) and AB_l the pairs
// (x_i, x_{i+l}) for i in [0, m).
struct WindowHistograms {
  MarginalHistogram a;
  std::vector<MarginalHistogram> b;   // b[l - 1] for l = 1..L
  std::vector<JointHistogram> joint;  // joint[l - 1]
};

inline WindowHistograms build_histograms(std::span<const QuantizedSample> window, std::size_t m, std::size_t max_lag,
                                         std::uint32_t levels) {
  if (window.size() < m + max_lag) {
    throw SizingError("window of " + std::to_string(window.size()) + " samples is shorter than m + L = " +
                      std::to_string(m + max_lag));
  }
  WindowHistograms h{MarginalHistogram(levels), {}, {}};
  h.b.assign(max_lag, MarginalHistogram(levels));
  h.joint.assign(max_lag, JointHistogram(levels));
  for (std::size_t i = 0; i < m; ++i) h.a.add(window[i]);
  for (std::size_t l = 1; l <= max_lag; ++l) {
    for (std::size_t i = 0; i < m; ++i) {
      h.b[l - 1].add(window[i + l]);
      h.joint[l - 1].add(window[i], window[i + l]);
    }
  }
  return h;
}

}  // namespace amif
