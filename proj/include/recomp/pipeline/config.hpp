// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recomp/common/io.hpp"
#include "recomp/common/toml_lite.hpp"

namespace recomp::pipeline {

enum class KeyType { string, integer, real, boolean };

struct KeySpec {
  std::string name;  // "table.key"
  KeyType type;
  toml::Scalar default_value;
  std::string help;
  /// Allowed values for string keys; empty means unrestricted.
  std::vector<std::string> choices;
};

/// Every recognized key with its default.
const std::vector<KeySpec>& config_schema();
const KeySpec* find_key(std::string_view name);

/// Validated pipeline settings. Sources apply in order: schema defaults, the
/// config file, then command-line overrides. Unknown keys, wrong types and
/// out-of-set choices raise ConfigError naming the key.
class Config {
 public:
  Config();

  static Config from_file(const std::filesystem::path& path);
  static Config from_text(std::string_view text, const std::string& source = "<config>");

  /// Parses `value` according to the key's type.
  void set(std::string_view key, std::string_view value);
  void set_value(std::string_view key, const toml::Scalar& value);

  const std::string& str(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  std::size_t size(std::string_view key) const;  // rejects negatives
  double real(std::string_view key) const;
  bool boolean(std::string_view key) const;

  /// Empty string keys resolve to "", relative paths against the config
  /// file's directory.
  std::filesystem::path path(std::string_view key) const;
  std::filesystem::path output_dir() const { return path("paths.output_dir"); }

  /// All keys except run.jobs, which never affects outputs.
  json fingerprint_json() const;
  json to_json() const;

  /// Range checks that span several keys.
  void validate() const;

  void set_base_dir(std::filesystem::path dir) { base_dir_ = std::move(dir); }

 private:
  const toml::Scalar& get(std::string_view key, KeyType type) const;

  std::map<std::string, toml::Scalar, std::less<>> values_;
  std::filesystem::path base_dir_;
};

}  // namespace recomp::pipeline
