// SPDX-License-Identifier: Apache-2.0
#include "recomp/common/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <unordered_set>

#include "recomp/common/error.hpp"

namespace recomp::toml {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::string& source) : s_(text), source_(source) {}

  Document run() {
    Document doc;
    std::unordered_set<std::string> seen;
    std::string table;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        ++pos_;
        skip_ws();
        const auto name = read_key();
        skip_ws();
        expect(']');
        table = name;
        end_line();
        continue;
      }
      const std::size_t key_line = line_;
      const auto key = read_key();
      skip_ws();
      expect('=');
      skip_ws();
      Value v;
      v.line = key_line;
      v.data = read_value();
      end_line();
      auto full = table.empty() ? key : table + "." + key;
      if (!seen.insert(full).second) throw ParseError(source_, key_line, "duplicate key '" + full + "'");
      doc.emplace_back(std::move(full), std::move(v));
    }
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, what); }
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }
  void advance() {
    if (s_[pos_] == '\n') ++line_;
    ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }
  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }
  void skip_comment() {
    if (peek() == '#') {
      while (!eof() && peek() != '\n') ++pos_;
    }
  }
  void skip_blank_lines() {
    while (!eof()) {
      skip_ws();
      skip_comment();
      if (peek() == '\r') ++pos_;
      if (peek() == '\n') {
        advance();
        continue;
      }
      break;
    }
  }
  void end_line() {
    skip_ws();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (eof()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    advance();
  }

  std::string read_key() {
    std::string key;
    while (!eof()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
        key += c;
        ++pos_;
      } else if (c == '"') {
        key += read_basic_string();
      } else {
        break;
      }
    }
    if (key.empty()) fail("expected a key");
    return key;
  }

  void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xc0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3f));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xe0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
      out += static_cast<char>(0x80 | (cp & 0x3f));
    } else {
      out += static_cast<char>(0xf0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
      out += static_cast<char>(0x80 | (cp & 0x3f));
    }
  }

  void read_escape(std::string& out) {
    advance();  // backslash
    if (eof()) fail("unterminated escape");
    const char e = peek();
    advance();
    switch (e) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'u':
      case 'U': {
        const std::size_t n = e == 'u' ? 4 : 8;
        if (s_.size() - pos_ < n) fail("short unicode escape");
        std::uint32_t cp = 0;
        auto r = std::from_chars(s_.data() + pos_, s_.data() + pos_ + n, cp, 16);
        if (r.ec != std::errc() || r.ptr != s_.data() + pos_ + n) fail("bad unicode escape");
        pos_ += n;
        append_utf8(out, cp);
        break;
      }
      case '\n':  // line-ending backslash inside multi-line strings
        skip_blank_space_all();
        break;
      default: fail(std::string("unknown escape \\") + e);
    }
  }

  void skip_blank_space_all() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) {
      advance();
    }
  }

  std::string read_basic_string() {
    if (s_.substr(pos_, 3) == "\"\"\"") {
      pos_ += 3;
      if (peek() == '\n') advance();
      std::string out;
      while (true) {
        if (eof()) fail("unterminated multi-line string");
        if (s_.substr(pos_, 3) == "\"\"\"") {
          pos_ += 3;
          return out;
        }
        if (peek() == '\\') {
          read_escape(out);
        } else {
          out += peek();
          advance();
        }
      }
    }
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      if (peek() == '"') {
        ++pos_;
        return out;
      }
      if (peek() == '\\') {
        read_escape(out);
      } else {
        out += peek();
        ++pos_;
      }
    }
  }

  std::string read_literal_string() {
    expect('\'');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated literal string");
      if (peek() == '\'') {
        ++pos_;
        return out;
      }
      out += peek();
      ++pos_;
    }
  }

  Scalar read_scalar() {
    const char c = peek();
    if (c == '"') return read_basic_string();
    if (c == '\'') return read_literal_string();
    std::string tok;
    while (!eof() && peek() != ',' && peek() != ']' && peek() != '#' && peek() != '\n' &&
           peek() != ' ' && peek() != '\t' && peek() != '\r') {
      tok += peek();
      ++pos_;
    }
    if (tok == "true") return true;
    if (tok == "false") return false;
    if (tok.empty()) fail("expected a value");
    std::string digits;
    for (char ch : tok) {
      if (ch != '_') digits += ch;
    }
    const bool is_float = digits.find_first_of(".eE") != std::string::npos ||
                          digits == "inf" || digits == "nan";
    if (!is_float) {
      std::int64_t v = 0;
      auto r = std::from_chars(digits.data() + (digits[0] == '+'), digits.data() + digits.size(), v);
      if (r.ec == std::errc() && r.ptr == digits.data() + digits.size()) return v;
      fail("bad integer '" + tok + "'");
    }
    double v = 0.0;
    auto r = std::from_chars(digits.data() + (digits[0] == '+'), digits.data() + digits.size(), v);
    if (r.ec == std::errc() && r.ptr == digits.data() + digits.size()) return v;
    fail("bad number '" + tok + "'");
  }

  decltype(Value::data) read_value() {
    if (peek() == '[') {
      ++pos_;
      std::vector<Scalar> items;
      skip_ws();
      while (peek() != ']') {
        items.push_back(read_scalar());
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          skip_ws();
        } else if (peek() != ']') {
          fail("expected ',' or ']' in array");
        }
      }
      ++pos_;
      return items;
    }
    auto s = read_scalar();
    return std::visit([](auto&& x) -> decltype(Value::data) { return x; }, std::move(s));
  }

  std::string_view s_;
  const std::string& source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

Document parse(std::string_view text, const std::string& source) {
  return Parser(text, source).run();
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace recomp::toml
