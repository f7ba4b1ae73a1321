#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "amif/monitor.hpp"
#include "amif/signals.hpp"

namespace amif {

struct BenchReport {
  std::uint32_t levels = 0;
  std::size_t window = 0;
  std::size_t max_lag = 0;
  std::uint64_t samples = 0;
  std::uint64_t records = 0;
  std::uint64_t record_bytes = 0;         // formatted output, discarded
  double seconds = 0.0;
  double samples_per_second = 0.0;
  std::size_t peak_cells_per_lag = 0;     // worst single-lag recomputation count
  double mean_cells_per_sample = 0.0;     // summed over all lags
  double mean_cells_per_lag = 0.0;
  std::size_t cell_bound_per_lag = 0;     // 4n + 4
};

// Drives the full monitor pipeline with synthetic broadband input for at
// least `duration_seconds` of wall time.
inline BenchReport bench(const RunConfig& config, double duration_seconds, std::uint64_t seed = 1) {
  RunConfig cfg = config;
  cfg.threaded = false;
  cfg.replay_rate_hz = 0.0;
  cfg.timestamps = false;
  cfg.validate();

  const std::vector<double> block = signals::white_noise(std::size_t{1} << 16, seed);
  const QuantizerSpec quantizer = resolve_quantizer(cfg, block);
  Monitor monitor(cfg, quantizer);

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto budget = std::chrono::duration<double>(duration_seconds);
  BenchReport report;
  std::size_t pos = 0;
  do {
    for (int k = 0; k < 4096; ++k) {
      if (auto record = monitor.push(block[pos])) {
        report.record_bytes += format_record(*record).size();
        ++report.records;
      }
      pos = (pos + 1) % block.size();
      ++report.samples;
    }
  } while (clock::now() - start < budget);
  report.seconds = std::chrono::duration<double>(clock::now() - start).count();

  const auto& work = monitor.engine().work();
  report.levels = cfg.levels;
  report.window = cfg.window;
  report.max_lag = cfg.max_lag;
  report.samples_per_second = static_cast<double>(report.samples) / report.seconds;
  report.peak_cells_per_lag = work.peak_per_lag;
  if (work.updates > 0) {
    report.mean_cells_per_sample = static_cast<double>(work.total_cells) / static_cast<double>(work.updates);
    report.mean_cells_per_lag = report.mean_cells_per_sample / static_cast<double>(cfg.max_lag);
  }
  report.cell_bound_per_lag = 4 * static_cast<std::size_t>(cfg.levels) + 4;
  return report;
}

inline void write_report(std::ostream& out, const BenchReport& r) {
  out << "levels=" << r.levels << '\n'
      << "window=" << r.window << '\n'
      << "max_lag=" << r.max_lag << '\n'
      << "samples=" << r.samples << '\n'
      << "records=" << r.records << '\n'
      << "seconds=" << r.seconds << '\n'
      << "samples_per_second=" << r.samples_per_second << '\n'
      << "peak_cells_per_lag=" << r.peak_cells_per_lag << '\n'
      << "cell_bound_per_lag=" << r.cell_bound_per_lag << '\n'
      << "mean_cells_per_lag=" << r.mean_cells_per_lag << '\n'
      << "mean_cells_per_sample=" << r.mean_cells_per_sample << '\n'
      << "realtime_factor_12khz=" << r.samples_per_second / 12000.0 << '\n';
}

}  // namespace amif
