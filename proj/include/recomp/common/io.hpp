// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace recomp {

using json = nlohmann::json;

std::string read_file(const std::filesystem::path& path);

/// Writes `contents` to `path` through a sibling temp file and a rename, so
/// readers never observe a partially written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Calls fn(line_number, object) for every non-blank line. Malformed JSON
/// raises ParseError carrying the 1-based line number.
void read_jsonl(const std::filesystem::path& path,
                const std::function<void(std::size_t, const json&)>& fn);

/// One compact JSON object per line, LF terminated.
std::string to_jsonl(std::span<const json> rows);

// Little-endian binary serialization for checkpoints and index files.
class BinaryWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f32(float v);
  void f64(double v);
  void bytes(std::string_view s) { buf_.append(s); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  const std::string& data() const noexcept { return buf_; }

 private:
  std::string buf_;
};

class BinaryReader {
 public:
  BinaryReader(std::string data, std::string source)
      : data_(std::move(data)), source_(std::move(source)) {}
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  float f32();
  double f64();
  std::string bytes(std::size_t n);
  std::string str() { return bytes(u32()); }
  bool at_end() const noexcept { return pos_ == data_.size(); }
  const std::string& source() const noexcept { return source_; }

 private:
  void need(std::size_t n) const;
  std::string data_;
  std::string source_;
  std::size_t pos_ = 0;
};

}  // namespace recomp
