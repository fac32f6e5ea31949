// SPDX-License-Identifier: Apache-2.0
#include "recomp/corpus/tokenizer.hpp"

#include <cctype>
#include <sstream>

#include "recomp/common/error.hpp"
#include "recomp/common/io.hpp"

namespace recomp::corpus {
namespace {

bool is_space(char c) noexcept { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::size_t utf8_len(unsigned char lead) noexcept {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 1;
}

}  // namespace

bool is_punct(char c) noexcept { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

bool is_punct_token(std::string_view tok) noexcept {
  if (tok.empty()) return false;
  for (char c : tok) {
    if (!is_punct(c)) return false;
  }
  return true;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t b = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > b) out.push_back(text.substr(b, i - b));
  }
  return out;
}

std::vector<std::string_view> basic_tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
    } else if (is_punct(c)) {
      out.push_back(text.substr(i, 1));
      ++i;
    } else {
      const std::size_t b = i;
      while (i < text.size() && !is_space(text[i]) && !is_punct(text[i])) ++i;
      out.push_back(text.substr(b, i - b));
    }
  }
  return out;
}

std::vector<std::string> normalized_terms(std::string_view text) {
  std::vector<std::string> out;
  for (auto t : basic_tokens(text)) {
    if (!is_punct_token(t)) out.push_back(to_lower(t));
  }
  return out;
}

Tokenizer::Tokenizer() = default;

Tokenizer Tokenizer::with_vocab(std::vector<std::string> vocab) {
  auto v = std::make_shared<Vocab>();
  for (auto& e : vocab) {
    if (e.empty()) continue;
    v->max_len = std::max(v->max_len, e.size());
    v->entries.insert(std::move(e));
  }
  Tokenizer t;
  t.kind_ = Kind::external_vocab;
  t.vocab_ = std::move(v);
  return t;
}

Tokenizer Tokenizer::load_vocab(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    entries.push_back(line);
  }
  return with_vocab(std::move(entries));
}

template <typename Sink>
void Tokenizer::segment(std::string_view text, Sink&& sink) const {
  for (auto piece : basic_tokens(text)) {
    if (kind_ == Kind::whitespace_punct || vocab_->entries.contains(std::string(piece))) {
      sink(piece);
      continue;
    }
    std::size_t pos = 0;
    while (pos < piece.size()) {
      std::size_t take = 0;
      for (std::size_t len = std::min(vocab_->max_len, piece.size() - pos); len > 0; --len) {
        if (vocab_->entries.contains(std::string(piece.substr(pos, len)))) {
          take = len;
          break;
        }
      }
      if (take == 0) {
        take = std::min(utf8_len(static_cast<unsigned char>(piece[pos])), piece.size() - pos);
      }
      sink(piece.substr(pos, take));
      pos += take;
    }
  }
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> out;
  segment(text, [&](std::string_view p) { out.emplace_back(p); });
  return out;
}

std::size_t Tokenizer::count(std::string_view text) const {
  std::size_t n = 0;
  segment(text, [&](std::string_view) { ++n; });
  return n;
}

std::size_t count_tokens(std::string_view text, const Tokenizer& tok) { return tok.count(text); }

}  // namespace recomp::corpus
