#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amif/error.hpp"

namespace amif {

enum class InputFormat { Csv, Raw16 };

inline InputFormat parse_format(std::string_view name) {
  if (name == "csv") return InputFormat::Csv;
  if (name == "raw16") return InputFormat::Raw16;
  throw ConfigError("unknown input format '" + std::string(name) + "' (expected csv or raw16)");
}

// Pulls one raw sample at a time from a stream.
//   csv:   one decimal number per line; blank lines are skipped.
//   raw16: little-endian int16, scaled to [-1, 1) by 1/32768.
class SampleReader {
 public:
  SampleReader(std::istream& in, InputFormat format) : in_(in), format_(format) {}

  std::optional<double> next() { return format_ == InputFormat::Csv ? next_csv() : next_raw16(); }

 private:
  std::optional<double> next_csv() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::string_view text(line);
      while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
      while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
      if (text.empty()) continue;
      if (text.front() == '+') text.remove_prefix(1);
      double value = 0.0;
      const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || end != text.data() + text.size()) {
        throw ParseError("csv line " + std::to_string(line_no_) + ": malformed value '" + line + "'", line_no_);
      }
      return value;
    }
    return std::nullopt;
  }

  std::optional<double> next_raw16() {
    char bytes[2];
    in_.read(bytes, 2);
    const auto got = static_cast<std::size_t>(in_.gcount());
    if (got == 0) return std::nullopt;
    if (got == 1) {
      throw ParseError("raw16 input has odd byte count; dangling byte at offset " + std::to_string(byte_offset_),
                       byte_offset_);
    }
    byte_offset_ += 2;
    const auto lo = static_cast<std::uint16_t>(static_cast<unsigned char>(bytes[0]));
    const auto hi = static_cast<std::uint16_t>(static_cast<unsigned char>(bytes[1]));
    const auto word = static_cast<std::int16_t>(static_cast<std::uint16_t>(lo | (hi << 8)));
    return static_cast<double>(word) / 32768.0;
  }

  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

  std::istream& in_;
  InputFormat format_;
  std::size_t line_no_ = 0;
  std::size_t byte_offset_ = 0;
};

inline std::vector<double> read_samples(std::istream& in, InputFormat format) {
  SampleReader reader(in, format);
  std::vector<double> out;
  while (auto x = reader.next()) out.push_back(*x);
  return out;
}

inline std::vector<double> ingest(const std::string& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file '" + path + "'");
  return read_samples(in, format);
}

}  // namespace amif
