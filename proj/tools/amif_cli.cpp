// Command-line front end: batch analysis, streaming monitor, replay emulator,
// surrogate and Rossler generators, Cao statistics and the throughput bench.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amif/amif.hpp"
#include "json.hpp"

namespace {

struct InputOptions {
  std::string path = "-";
  std::string format = "csv";
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("-i,--input", in.path, "Input file, or - for standard input")->capture_default_str();
  cmd->add_option("-f,--format", in.format, "Input format")
      ->check(CLI::IsMember({"csv", "raw16"}))
      ->capture_default_str();
}

std::vector<double> load(const InputOptions& in) {
  const auto format = amif::parse_format(in.format);
  if (in.path == "-") return amif::read_samples(std::cin, format);
  return amif::ingest(in.path, format);
}

void write_csv(std::ostream& out, double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  out.write(buf, end - buf);
  out.put('\n');
}

struct BoundsOptions {
  std::optional<double> lo;
  std::optional<double> hi;
};

void add_bounds_options(CLI::App* cmd, BoundsOptions& b) {
  auto* lo = cmd->add_option("--lo", b.lo, "Fixed quantizer lower bound (default: input minimum)");
  auto* hi = cmd->add_option("--hi", b.hi, "Fixed quantizer upper bound (default: input maximum)");
  lo->needs(hi);
  hi->needs(lo);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming auto-mutual-information monitor for vibration signals"};
  app.require_subcommand(1);

  // analyze
  InputOptions analyze_in;
  BoundsOptions analyze_bounds;
  std::uint32_t analyze_levels = 128;
  std::size_t analyze_lag = 15;
  std::optional<std::size_t> analyze_window;
  amif::Thresholds analyze_thresholds;
  auto* analyze = app.add_subcommand("analyze", "Batch AMIF profile of a whole file");
  add_input_options(analyze, analyze_in);
  add_bounds_options(analyze, analyze_bounds);
  analyze->add_option("-n,--levels", analyze_levels, "Quantization levels")->capture_default_str();
  analyze->add_option("-L,--max-lag", analyze_lag, "Largest lag")->capture_default_str();
  analyze->add_option("-m,--window", analyze_window, "Pairs per lag (default: all samples minus max lag)");
  analyze->add_option("--aged-max", analyze_thresholds.aged_max)->capture_default_str();
  analyze->add_option("--good-min", analyze_thresholds.good_min)->capture_default_str();

  // monitor
  InputOptions monitor_in;
  BoundsOptions monitor_bounds;
  amif::RunConfig monitor_cfg;
  bool no_profile = false;
  auto* monitor = app.add_subcommand("monitor", "Stream samples through the engine, one JSON record per emission");
  add_input_options(monitor, monitor_in);
  add_bounds_options(monitor, monitor_bounds);
  monitor->add_option("-n,--levels", monitor_cfg.levels)->capture_default_str();
  monitor->add_option("-m,--window", monitor_cfg.window)->capture_default_str();
  monitor->add_option("-L,--max-lag", monitor_cfg.max_lag)->capture_default_str();
  monitor->add_option("--aged-max", monitor_cfg.thresholds.aged_max)->capture_default_str();
  monitor->add_option("--good-min", monitor_cfg.thresholds.good_min)->capture_default_str();
  monitor->add_option("--resync-every", monitor_cfg.resync_every, "Samples between cache rebuilds (0 = never)")
      ->capture_default_str();
  monitor->add_option("--emit-every", monitor_cfg.emit_every)->capture_default_str();
  monitor->add_option("--rate", monitor_cfg.replay_rate_hz, "Replay rate in Hz (0 = unthrottled)")
      ->capture_default_str();
  monitor->add_flag("--threaded", monitor_cfg.threaded, "Replay on a producer thread via a bounded queue");
  monitor->add_option("--queue", monitor_cfg.queue_capacity)->capture_default_str();
  monitor->add_flag("--no-profile", no_profile, "Omit the AMIF profile from records");
  monitor->add_flag("--timestamps", monitor_cfg.timestamps, "Add wall-clock timestamp_ns to records");

  // replay
  InputOptions replay_in;
  double replay_rate = 12000.0;
  auto* replay_cmd = app.add_subcommand("replay", "Re-emit recorded samples as csv at a fixed rate");
  add_input_options(replay_cmd, replay_in);
  replay_cmd->add_option("--rate", replay_rate, "Samples per second (0 = unthrottled)")->capture_default_str();

  // surrogate
  InputOptions surrogate_in;
  std::uint64_t surrogate_seed = 1;
  auto* surrogate = app.add_subcommand("surrogate", "Fourier phase-randomized surrogate, written as csv");
  add_input_options(surrogate, surrogate_in);
  surrogate->add_option("--seed", surrogate_seed)->capture_default_str();

  // gen-rossler
  std::size_t rossler_samples = 8192;
  std::size_t rossler_stride = amif::kRosslerCalibratedStride;
  amif::RosslerParams rossler;
  auto* gen = app.add_subcommand("gen-rossler", "Rossler x-coordinate series as csv");
  gen->add_option("--samples", rossler_samples)->capture_default_str();
  gen->add_option("--stride", rossler_stride, "RK4 steps per emitted sample")->capture_default_str();
  gen->add_option("--a", rossler.a)->capture_default_str();
  gen->add_option("--b", rossler.b)->capture_default_str();
  gen->add_option("--c", rossler.c)->capture_default_str();
  gen->add_option("--dt", rossler.dt)->capture_default_str();
  gen->add_option("--transient", rossler.transient_steps)->capture_default_str();

  // cao
  InputOptions cao_in;
  std::size_t cao_delay = 1;
  std::size_t cao_dmax = 10;
  auto* cao = app.add_subcommand("cao", "Cao E1/E2 embedding statistics");
  add_input_options(cao, cao_in);
  cao->add_option("-t,--delay", cao_delay)->capture_default_str();
  cao->add_option("-d,--dmax", cao_dmax)->capture_default_str();

  // bench
  amif::RunConfig bench_cfg;
  double bench_seconds = 2.0;
  auto* bench = app.add_subcommand("bench", "Throughput of the full monitor pipeline on synthetic input");
  bench->add_option("-n,--levels", bench_cfg.levels)->capture_default_str();
  bench->add_option("-m,--window", bench_cfg.window)->capture_default_str();
  bench->add_option("-L,--max-lag", bench_cfg.max_lag)->capture_default_str();
  bench->add_option("--duration", bench_seconds, "Seconds of wall time")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      const auto raw = load(analyze_in);
      amif::RunConfig cfg;
      cfg.levels = analyze_levels;
      cfg.lo = analyze_bounds.lo;
      cfg.hi = analyze_bounds.hi;
      const auto spec = amif::resolve_quantizer(cfg, raw);
      const auto series = amif::quantize_all(spec, raw);
      if (series.size() <= analyze_lag) throw amif::SizingError("input shorter than max lag");
      const amif::AmifParams params{analyze_levels, analyze_window.value_or(series.size() - analyze_lag),
                                    analyze_lag};
      const auto profile = amif::batch_amif(series, params);
      const auto fm = amif::first_minimum(profile);
      nlohmann::ordered_json j;
      j["samples"] = raw.size();
      j["levels"] = params.levels;
      j["window"] = params.window;
      j["max_lag"] = params.max_lag;
      j["lo"] = spec.lo();
      j["hi"] = spec.hi();
      j["first_min"] = fm ? nlohmann::ordered_json(*fm) : nlohmann::ordered_json(nullptr);
      j["state"] = amif::to_string(amif::classify(fm, analyze_thresholds).state);
      j["profile"] = profile.values;
      std::cout << j.dump() << '\n';
    } else if (*monitor) {
      monitor_cfg.lo = monitor_bounds.lo;
      monitor_cfg.hi = monitor_bounds.hi;
      monitor_cfg.format = amif::parse_format(monitor_in.format);
      monitor_cfg.include_profile = !no_profile;
      monitor_cfg.validate();
      auto emit = [](const amif::VerdictRecord& r) { std::cout << amif::format_record(r) << '\n'; };
      if (monitor_in.path == "-" && monitor_cfg.explicit_bounds() && !monitor_cfg.threaded &&
          monitor_cfg.replay_rate_hz == 0.0) {
        // Fixed bounds let standard input stream without buffering.
        amif::SampleReader reader(std::cin, monitor_cfg.format);
        amif::run_monitor(reader, monitor_cfg, amif::resolve_quantizer(monitor_cfg, {}), emit);
      } else {
        const auto raw = load(monitor_in);
        amif::run_monitor(raw, monitor_cfg, amif::resolve_quantizer(monitor_cfg, raw), emit);
      }
    } else if (*replay_cmd) {
      const auto raw = load(replay_in);
      const auto report = amif::replay(raw, replay_rate, [](std::size_t, double x) { write_csv(std::cout, x); });
      std::cout.flush();
      std::cerr << "delivered=" << report.delivered << "\nelapsed_seconds=" << report.elapsed_seconds << '\n';
    } else if (*surrogate) {
      const auto raw = load(surrogate_in);
      for (double x : amif::phase_surrogate(raw, surrogate_seed)) write_csv(std::cout, x);
    } else if (*gen) {
      for (double x : amif::rossler_generate(rossler_samples, rossler_stride, rossler)) write_csv(std::cout, x);
    } else if (*cao) {
      const auto raw = load(cao_in);
      const auto profile = amif::cao_profile(raw, cao_delay, cao_dmax);
      nlohmann::ordered_json j;
      j["delay"] = cao_delay;
      j["e1"] = profile.e1;
      j["e2"] = profile.e2;
      std::cout << j.dump() << '\n';
    } else if (*bench) {
      amif::write_report(std::cout, amif::bench(bench_cfg, bench_seconds));
    }
  } catch (const amif::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
