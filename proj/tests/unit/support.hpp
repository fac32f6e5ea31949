// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "recomp/common/hash.hpp"
#include "recomp/common/rng.hpp"

namespace recomp::test {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view tag) {
    Rng rng(fnv1a64(tag) ^ static_cast<std::uint64_t>(
                              std::filesystem::file_time_type::clock::now().time_since_epoch().count()));
    path_ = std::filesystem::temp_directory_path() /
            ("recomp-" + std::string(tag) + "-" + std::to_string(rng.next() % 1000000007ULL));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::filesystem::path fixture(std::string_view name) {
  return std::filesystem::path(RECOMP_FIXTURES_DIR) / name;
}

inline std::filesystem::path source_path(std::string_view name) {
  return std::filesystem::path(RECOMP_SOURCE_DIR) / name;
}

}  // namespace recomp::test
