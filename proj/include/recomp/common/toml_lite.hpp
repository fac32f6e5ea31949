// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace recomp::toml {

// Subset of TOML used by config files and prompt assets: [dotted.tables],
// key = value pairs, basic/literal/multi-line strings, integers, floats,
// booleans, single-line arrays of scalars, and # comments.

using Scalar = std::variant<std::string, std::int64_t, double, bool>;

struct Value {
  std::variant<std::string, std::int64_t, double, bool, std::vector<Scalar>> data;
  std::size_t line = 0;
};

/// Fully qualified "table.key" → value, in document order.
using Document = std::vector<std::pair<std::string, Value>>;

/// Throws ParseError(source, line, ...) on syntax errors or duplicate keys.
Document parse(std::string_view text, const std::string& source = "<toml>");

/// TOML basic-string literal with escapes.
std::string quote(std::string_view s);

}  // namespace recomp::toml
