// SPDX-License-Identifier: Apache-2.0
#include "recomp/common/io.hpp"

#include <bit>
#include <cstring>
#include <sstream>

#include "recomp/common/error.hpp"

namespace recomp {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void read_jsonl(const std::filesystem::path& path,
                const std::function<void(std::size_t, const json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(path.string(), line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(path.string(), line_no, "expected a JSON object");
    fn(line_no, obj);
  }
}

std::string to_jsonl(std::span<const json> rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

namespace {
template <typename T>
void append_raw(std::string& buf, T v) {
  char tmp[sizeof(T)];
  std::memcpy(tmp, &v, sizeof(T));
  buf.append(tmp, sizeof(T));
}
}  // namespace

void BinaryWriter::u32(std::uint32_t v) { append_raw(buf_, v); }
void BinaryWriter::u64(std::uint64_t v) { append_raw(buf_, v); }
void BinaryWriter::f32(float v) { append_raw(buf_, v); }
void BinaryWriter::f64(double v) { append_raw(buf_, v); }

void BinaryReader::need(std::size_t n) const {
  if (data_.size() - pos_ < n) throw Error(source_ + ": truncated binary file");
}

std::uint8_t BinaryReader::u8() {
  need(1);
  return static_cast<std::uint8_t>(data_[pos_++]);
}

#define RECOMP_READ_RAW(T)                 \
  need(sizeof(T));                         \
  T v;                                     \
  std::memcpy(&v, data_.data() + pos_, sizeof(T)); \
  pos_ += sizeof(T);                       \
  return v

std::uint32_t BinaryReader::u32() { RECOMP_READ_RAW(std::uint32_t); }
std::uint64_t BinaryReader::u64() { RECOMP_READ_RAW(std::uint64_t); }
float BinaryReader::f32() { RECOMP_READ_RAW(float); }
double BinaryReader::f64() { RECOMP_READ_RAW(double); }

#undef RECOMP_READ_RAW

std::string BinaryReader::bytes(std::size_t n) {
  need(n);
  std::string s = data_.substr(pos_, n);
  pos_ += n;
  return s;
}

}  // namespace recomp
