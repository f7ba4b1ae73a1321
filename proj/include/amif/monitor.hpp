#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>

#include "amif/classifier.hpp"
#include "amif/engine.hpp"
#include "amif/error.hpp"
#include "amif/ingest.hpp"
#include "amif/quantizer.hpp"
#include "amif/replay.hpp"
#include "json.hpp"

namespace amif {

struct RunConfig {
  std::uint32_t levels = 32;
  std::size_t window = 512;
  std::size_t max_lag = 15;
  Thresholds thresholds;
  std::optional<double> lo;  // explicit quantizer bounds; both or neither
  std::optional<double> hi;
  std::size_t resync_every = StreamingEngine::kDefaultResyncEvery;
  std::size_t emit_every = 512;
  InputFormat format = InputFormat::Csv;
  double replay_rate_hz = 0.0;
  bool threaded = false;
  std::size_t queue_capacity = 4096;
  bool include_profile = true;
  bool timestamps = false;

  AmifParams params() const { return {levels, window, max_lag}; }

  void validate() const {
    params().validate();
    thresholds.validate();
    if (lo.has_value() != hi.has_value()) throw ConfigError("quantizer bounds need both lo and hi");
    if (lo) QuantizerSpec(levels, *lo, *hi);
    if (emit_every < 1) throw ConfigError("emit cadence must be >= 1");
    if (!(replay_rate_hz >= 0.0)) throw ConfigError("replay rate must be >= 0");
  }

  bool explicit_bounds() const noexcept { return lo.has_value(); }
};

// Explicit bounds if configured, otherwise min/max of the given samples.
inline QuantizerSpec resolve_quantizer(const RunConfig& config, std::span<const double> samples) {
  if (config.explicit_bounds()) return QuantizerSpec(config.levels, *config.lo, *config.hi);
  return calibrate(samples, config.levels);
}

struct VerdictRecord {
  std::size_t sample_index = 0;
  std::optional<AmifProfile> profile;
  std::optional<std::size_t> first_min;
  HealthState state = HealthState::Indeterminate;
  std::optional<std::int64_t> timestamp_ns;
};

// Field order is part of the output format: sample_index, first_min, state,
// then profile and timestamp_ns when present.
inline nlohmann::ordered_json to_json(const VerdictRecord& r) {
  nlohmann::ordered_json j;
  j["sample_index"] = r.sample_index;
  j["first_min"] = r.first_min ? nlohmann::ordered_json(*r.first_min) : nlohmann::ordered_json(nullptr);
  j["state"] = to_string(r.state);
  if (r.profile) j["profile"] = r.profile->values;
  if (r.timestamp_ns) j["timestamp_ns"] = *r.timestamp_ns;
  return j;
}

inline std::string format_record(const VerdictRecord& r) { return to_json(r).dump(); }

// quantize -> stream update -> first minimum -> classify, one sample at a time.
class Monitor {
 public:
  Monitor(const RunConfig& config, QuantizerSpec quantizer)
      : config_((config.validate(), config)),
        quantizer_(quantizer),
        engine_(config.params(), config.resync_every) {
    if (quantizer_.levels() != config_.levels) throw ConfigError("quantizer and engine disagree on level count");
  }

  std::optional<VerdictRecord> push(double x) {
    const std::size_t index = seen_++;
    try {
      if (!engine_.update(quantizer_(x))) return std::nullopt;
    } catch (const Error& e) {
      throw SampleError(e.what(), index);
    }
    const std::size_t first_warm = engine_.params().buffer_size() - 1;
    if ((index - first_warm) % config_.emit_every != 0) return std::nullopt;

    VerdictRecord r;
    r.sample_index = index;
    AmifProfile profile = engine_.profile();
    r.first_min = first_minimum(profile);
    r.state = classify(r.first_min, config_.thresholds).state;
    if (config_.include_profile) r.profile = std::move(profile);
    if (config_.timestamps) {
      r.timestamp_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
    }
    return r;
  }

  std::size_t samples_seen() const noexcept { return seen_; }
  const StreamingEngine& engine() const noexcept { return engine_; }
  const QuantizerSpec& quantizer() const noexcept { return quantizer_; }

 private:
  RunConfig config_;
  QuantizerSpec quantizer_;
  StreamingEngine engine_;
  std::size_t seen_ = 0;
};

struct MonitorSummary {
  std::size_t samples = 0;
  std::size_t records = 0;
};

// Runs the pipeline over an in-memory series. With config.threaded the
// samples are replayed by a producer thread through a bounded queue (blocking
// when full); otherwise everything runs on the calling thread. Both modes
// produce the same records.
template <typename RecordSink>
MonitorSummary run_monitor(std::span<const double> samples, const RunConfig& config, const QuantizerSpec& quantizer,
                           RecordSink&& sink) {
  Monitor monitor(config, quantizer);
  MonitorSummary summary;
  auto consume = [&](double x) {
    if (auto record = monitor.push(x)) {
      sink(*record);
      ++summary.records;
    }
    ++summary.samples;
  };

  if (!config.threaded) {
    replay(samples, config.replay_rate_hz, [&](std::size_t, double x) { consume(x); });
    return summary;
  }

  BoundedQueue<double> queue(config.queue_capacity);
  std::exception_ptr producer_error;
  std::thread producer([&] {
    try {
      replay(samples, config.replay_rate_hz, [&](std::size_t i, double x) {
        if (!queue.push(x)) throw SampleError("consumer stopped", i);
      });
    } catch (...) {
      producer_error = std::current_exception();
    }
    queue.close();
  });
  try {
    while (auto x = queue.pop()) consume(*x);
  } catch (...) {
    queue.close();
    producer.join();
    throw;
  }
  producer.join();
  if (producer_error) std::rethrow_exception(producer_error);
  return summary;
}

// Streams straight from a reader; quantizer bounds must already be fixed.
template <typename RecordSink>
MonitorSummary run_monitor(SampleReader& reader, const RunConfig& config, const QuantizerSpec& quantizer,
                           RecordSink&& sink) {
  Monitor monitor(config, quantizer);
  MonitorSummary summary;
  while (auto x = reader.next()) {
    if (auto record = monitor.push(*x)) {
      sink(*record);
      ++summary.records;
    }
    ++summary.samples;
  }
  return summary;
}

}  // namespace amif
