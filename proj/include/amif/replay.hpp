#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>

#include "amif/error.hpp"

namespace amif {

// Blocking FIFO with a fixed capacity. push waits while full; pop waits while
// empty and returns nothing once the queue is closed and drained.
template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

  BoundedQueue(const BoundedQueue&) = delete;
  BoundedQueue& operator=(const BoundedQueue&) = delete;

  // Returns false if the queue was closed before the item could be queued.
  bool push(T item) {
    std::unique_lock lock(mutex_);
    not_full_.wait(lock, [&] { return closed_ || items_.size() < capacity_; });
    if (closed_) return false;
    items_.push_back(std::move(item));
    not_empty_.notify_one();
    return true;
  }

  std::optional<T> pop() {
    std::unique_lock lock(mutex_);
    not_empty_.wait(lock, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return item;
  }

  void close() {
    std::lock_guard lock(mutex_);
    closed_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

  std::size_t capacity() const noexcept { return capacity_; }

 private:
  std::size_t capacity_;
  std::deque<T> items_;
  bool closed_ = false;
  std::mutex mutex_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
};

struct ReplayReport {
  std::size_t delivered = 0;
  double elapsed_seconds = 0.0;
};

// Delivers samples to `sink(index, value)` in order. At rate_hz > 0 sample i
// is released at start + i / rate_hz and the run ends at start + N / rate_hz,
// so pacing errors do not accumulate. rate_hz == 0 runs unthrottled.
template <typename Sink>
ReplayReport replay(std::span<const double> samples, double rate_hz, Sink&& sink) {
  if (!(rate_hz >= 0.0)) throw ConfigError("replay rate must be >= 0");
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto due = [&](std::size_t i) {
    return start + std::chrono::duration_cast<clock::duration>(
                       std::chrono::duration<double>(static_cast<double>(i) / rate_hz));
  };
  ReplayReport report;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (rate_hz > 0.0) std::this_thread::sleep_until(due(i));
    try {
      sink(i, samples[i]);
    } catch (const SampleError&) {
      throw;
    } catch (const std::exception& e) {
      throw SampleError(e.what(), i);
    }
    ++report.delivered;
  }
  if (rate_hz > 0.0 && !samples.empty()) std::this_thread::sleep_until(due(samples.size()));
  report.elapsed_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return report;
}

}  // namespace amif
