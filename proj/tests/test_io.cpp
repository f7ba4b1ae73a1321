#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "amif/bench.hpp"
#include "amif/ingest.hpp"
#include "amif/monitor.hpp"
#include "amif/replay.hpp"
#include "amif/signals.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

std::vector<double> parse(const std::string& text, amif::InputFormat format) {
  std::istringstream in(text);
  return amif::read_samples(in, format);
}

TEST(Ingest, CsvLines) {
  EXPECT_EQ(parse("1.0\n2.0\n", amif::InputFormat::Csv), (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(parse("\n  -3.5 \r\n\n+4e-1\n7", amif::InputFormat::Csv), (std::vector<double>{-3.5, 0.4, 7.0}));
}

TEST(Ingest, CsvMalformedLineNamesOffset) {
  try {
    parse("1.0\n\n2.x\n", amif::InputFormat::Csv);
    FAIL() << "expected ParseError";
  } catch (const amif::ParseError& e) {
    EXPECT_EQ(e.offset(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse("1.0, 2.0\n", amif::InputFormat::Csv), amif::ParseError);
}

TEST(Ingest, Raw16LittleEndian) {
  const std::string bytes{'\x00', '\x40', '\x00', '\xC0'};
  EXPECT_EQ(parse(bytes, amif::InputFormat::Raw16), (std::vector<double>{0.5, -0.5}));
  const std::string extremes{'\xFF', '\x7F', '\x00', '\x80'};
  EXPECT_EQ(parse(extremes, amif::InputFormat::Raw16), (std::vector<double>{32767.0 / 32768.0, -1.0}));
}

TEST(Ingest, Raw16OddByteCount) {
  const std::string bytes{'\x00', '\x40', '\x01'};
  try {
    parse(bytes, amif::InputFormat::Raw16);
    FAIL() << "expected ParseError";
  } catch (const amif::ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(Ingest, FullLengthCsvFile) {
  const auto path = fs::temp_directory_path() / "amif_ingest_120000.csv";
  {
    std::ofstream out(path);
    for (int i = 0; i < 120000; ++i) out << (i % 97) * 0.25 - 3.0 << '\n';
  }
  const auto x = amif::ingest(path.string(), amif::InputFormat::Csv);
  ASSERT_EQ(x.size(), 120000u);
  EXPECT_EQ(x[5], 5 * 0.25 - 3.0);
  fs::remove(path);
  EXPECT_THROW(amif::ingest((fs::temp_directory_path() / "amif_missing.csv").string(), amif::InputFormat::Csv),
               amif::Error);
}

TEST(Ingest, FormatNames) {
  EXPECT_EQ(amif::parse_format("csv"), amif::InputFormat::Csv);
  EXPECT_EQ(amif::parse_format("raw16"), amif::InputFormat::Raw16);
  EXPECT_THROW(amif::parse_format("wav"), amif::ConfigError);
}

TEST(Replay, EmptyInputCompletesImmediately) {
  std::size_t calls = 0;
  const auto r = amif::replay({}, 12000.0, [&](std::size_t, double) { ++calls; });
  EXPECT_EQ(r.delivered, 0u);
  EXPECT_EQ(calls, 0u);
  EXPECT_LT(r.elapsed_seconds, 0.01);
}

TEST(Replay, UnthrottledPreservesOrder) {
  std::vector<double> x(1000000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
  std::vector<double> got;
  got.reserve(x.size());
  const auto r = amif::replay(x, 0.0, [&](std::size_t i, double v) {
    ASSERT_EQ(i, got.size());
    got.push_back(v);
  });
  EXPECT_EQ(r.delivered, x.size());
  EXPECT_EQ(got, x);
}

TEST(Replay, PacingMatchesRate) {
  const std::vector<double> x(6000, 0.0);
  const auto r = amif::replay(x, 12000.0, [](std::size_t, double) {});
  EXPECT_NEAR(r.elapsed_seconds, 0.5, 0.005);
}

TEST(Replay, SinkRejectionCarriesIndex) {
  const std::vector<double> x(10, 0.0);
  try {
    amif::replay(x, 0.0, [](std::size_t i, double) {
      if (i == 6) throw std::runtime_error("full");
    });
    FAIL() << "expected SampleError";
  } catch (const amif::SampleError& e) {
    EXPECT_EQ(e.index(), 6u);
  }
  EXPECT_THROW(amif::replay(x, -1.0, [](std::size_t, double) {}), amif::ConfigError);
}

TEST(BoundedQueue, BlocksProducerUntilConsumerDrains) {
  amif::BoundedQueue<int> q(4);
  std::vector<int> got;
  std::thread producer([&] {
    for (int i = 0; i < 1000; ++i) q.push(i);
    q.close();
  });
  while (auto v = q.pop()) got.push_back(*v);
  producer.join();
  ASSERT_EQ(got.size(), 1000u);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(got[i], i);
  EXPECT_FALSE(q.push(1));
}

amif::RunConfig small_config() {
  amif::RunConfig cfg;
  cfg.levels = 32;
  cfg.window = 512;
  cfg.max_lag = 15;
  cfg.emit_every = 64;
  return cfg;
}

std::vector<std::string> run_lines(const std::vector<double>& x, const amif::RunConfig& cfg) {
  std::vector<std::string> lines;
  amif::run_monitor(x, cfg, amif::resolve_quantizer(cfg, x),
                    [&](const amif::VerdictRecord& r) { lines.push_back(amif::format_record(r)); });
  return lines;
}

TEST(Monitor, ConstantInputIsIndeterminate) {
  const std::vector<double> x(3000, 0.25);
  const auto cfg = small_config();
  std::size_t records = 0;
  amif::run_monitor(x, cfg, amif::resolve_quantizer(cfg, x), [&](const amif::VerdictRecord& r) {
    EXPECT_FALSE(r.first_min.has_value());
    EXPECT_EQ(r.state, amif::HealthState::Indeterminate);
    ++records;
  });
  EXPECT_EQ(records, (3000 - 527) / 64 + 1);
}

TEST(Monitor, RecordFormat) {
  amif::VerdictRecord r;
  r.sample_index = 526;
  r.first_min = 4;
  r.state = amif::HealthState::Good;
  r.profile = amif::AmifProfile{{2.5, 1.0}, 512, 32};
  EXPECT_EQ(amif::format_record(r), R"({"sample_index":526,"first_min":4,"state":"Good","profile":[2.5,1.0]})");
  r.first_min.reset();
  r.profile.reset();
  r.state = amif::HealthState::Indeterminate;
  r.timestamp_ns = 17;
  EXPECT_EQ(amif::format_record(r), R"({"sample_index":526,"first_min":null,"state":"Indeterminate","timestamp_ns":17})");
}

TEST(Monitor, SampleIndexStrictlyIncreasingAndCadence) {
  const auto x = amif::signals::white_noise(5000, 2);
  const auto cfg = small_config();
  std::optional<std::size_t> prev;
  amif::run_monitor(x, cfg, amif::resolve_quantizer(cfg, x), [&](const amif::VerdictRecord& r) {
    if (prev) {
      EXPECT_EQ(r.sample_index, *prev + cfg.emit_every);
    } else {
      EXPECT_EQ(r.sample_index, cfg.window + cfg.max_lag - 1);
    }
    prev = r.sample_index;
  });
}

TEST(Monitor, NonFiniteSampleNamesIndex) {
  auto x = amif::signals::white_noise(1000, 2);
  const auto cfg = small_config();
  const auto q = amif::resolve_quantizer(cfg, x);
  x[700] = std::numeric_limits<double>::quiet_NaN();
  try {
    amif::run_monitor(x, cfg, q, [](const amif::VerdictRecord&) {});
    FAIL() << "expected SampleError";
  } catch (const amif::SampleError& e) {
    EXPECT_EQ(e.index(), 700u);
  }
}

TEST(Monitor, ThreadedModeMatchesSingleThreaded) {
  const auto x = amif::signals::narrowband_regime(20000, 4);
  auto cfg = small_config();
  const auto single = run_lines(x, cfg);
  cfg.threaded = true;
  cfg.queue_capacity = 16;
  const auto threaded = run_lines(x, cfg);
  EXPECT_EQ(single, threaded);
  EXPECT_FALSE(single.empty());
}

TEST(Monitor, ByteIdenticalAcrossRuns) {
  const auto x = amif::signals::broadband_regime(8000, 6);
  const auto cfg = small_config();
  EXPECT_EQ(run_lines(x, cfg), run_lines(x, cfg));
}

TEST(Monitor, RecordsMatchOfflineBatchOnSameWindow) {
  const auto x = amif::signals::narrowband_regime(6000, 8);
  const auto cfg = small_config();
  const auto q = amif::resolve_quantizer(cfg, x);
  const auto levels = amif::quantize_all(q, x);
  std::size_t checked = 0;
  amif::run_monitor(x, cfg, q, [&](const amif::VerdictRecord& r) {
    const std::size_t start = r.sample_index + 1 - (cfg.window + cfg.max_lag);
    const auto ref = amif::batch_amif(std::span(levels).subspan(start, cfg.window + cfg.max_lag), cfg.params());
    ASSERT_TRUE(r.profile.has_value());
    for (std::size_t l = 0; l <= cfg.max_lag; ++l) ASSERT_NEAR(r.profile->values[l], ref.values[l], 1e-9);
    EXPECT_EQ(r.first_min, amif::first_minimum(ref));
    ++checked;
  });
  EXPECT_GT(checked, 50u);
}

TEST(Monitor, TwoRegimeStreamSwitchesFromGoodToAged) {
  auto x = amif::signals::narrowband_regime(6000, 11);
  const std::size_t boundary = x.size();
  const auto tail = amif::signals::broadband_regime(6000, 12);
  x.insert(x.end(), tail.begin(), tail.end());

  auto cfg = small_config();
  cfg.emit_every = 8;
  const std::size_t span = cfg.window + cfg.max_lag;
  const auto q = amif::resolve_quantizer(cfg, x);
  const auto levels = amif::quantize_all(q, x);
  std::size_t good = 0, aged = 0;
  amif::run_monitor(x, cfg, q, [&](const amif::VerdictRecord& r) {
    // Oracle: batch verdict on the same window.
    const auto ref = amif::batch_amif(std::span(levels).subspan(r.sample_index + 1 - span, span), cfg.params());
    ASSERT_EQ(r.state, amif::classify(amif::first_minimum(ref)).state) << r.sample_index;
    if (r.sample_index < boundary) {
      EXPECT_EQ(r.state, amif::HealthState::Good) << r.sample_index;
      ++good;
    } else if (r.sample_index >= boundary + span - 1) {
      EXPECT_EQ(r.state, amif::HealthState::Aged) << r.sample_index;
      ++aged;
    }
  });
  EXPECT_GT(good, 100u);
  EXPECT_GT(aged, 100u);
}

TEST(Monitor, StreamingReaderNeedsNoBuffering) {
  auto cfg = small_config();
  cfg.lo = -4.0;
  cfg.hi = 4.0;
  const auto x = amif::signals::narrowband_regime(3000, 1);
  std::ostringstream text;
  for (double v : x) text << v << '\n';
  std::istringstream in(text.str());
  amif::SampleReader reader(in, amif::InputFormat::Csv);
  std::size_t records = 0;
  const auto summary =
      amif::run_monitor(reader, cfg, amif::resolve_quantizer(cfg, {}), [&](const amif::VerdictRecord&) { ++records; });
  EXPECT_EQ(summary.samples, 3000u);
  EXPECT_EQ(summary.records, records);
  EXPECT_GT(records, 0u);
}

TEST(RunConfig, Validation) {
  amif::RunConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.lo = 1.0;
  EXPECT_THROW(cfg.validate(), amif::ConfigError);
  cfg.hi = 0.5;
  EXPECT_THROW(cfg.validate(), amif::ConfigError);
  cfg = {};
  cfg.max_lag = cfg.window;
  EXPECT_THROW(cfg.validate(), amif::SizingError);
  cfg = {};
  cfg.thresholds = {3, 3};
  EXPECT_THROW(cfg.validate(), amif::ConfigError);
  cfg = {};
  cfg.emit_every = 0;
  EXPECT_THROW(cfg.validate(), amif::ConfigError);
}

TEST(Bench, WorkCounterBoundAndLinearInLag) {
  amif::RunConfig cfg;
  cfg.levels = 32;
  cfg.max_lag = 15;
  const auto base = amif::bench(cfg, 0.3);
  EXPECT_LE(base.peak_cells_per_lag, 132u);
  EXPECT_EQ(base.cell_bound_per_lag, 132u);
  cfg.max_lag = 30;
  const auto doubled = amif::bench(cfg, 0.3);
  EXPECT_NEAR(doubled.mean_cells_per_sample / base.mean_cells_per_sample, 2.0, 0.1);
  std::ostringstream out;
  amif::write_report(out, base);
  EXPECT_NE(out.str().find("samples_per_second="), std::string::npos);
}

}  // namespace
