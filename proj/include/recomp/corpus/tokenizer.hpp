// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace recomp::corpus {

/// ASCII punctuation byte.
bool is_punct(char c) noexcept;
/// True when every byte of `tok` is punctuation.
bool is_punct_token(std::string_view tok) noexcept;

std::string to_lower(std::string_view s);

/// Maximal whitespace-delimited runs ("words" for chunking).
std::vector<std::string_view> split_words(std::string_view text);

/// Whitespace-punct segmentation: whitespace separates pieces and every
/// punctuation byte is a piece of its own. "a b, c" -> {a, b, ",", c}.
std::vector<std::string_view> basic_tokens(std::string_view text);

/// Lowercased basic tokens without punctuation; the term space shared by
/// BM25, the n-gram LM and the dual encoder.
std::vector<std::string> normalized_terms(std::string_view text);

class Tokenizer {
 public:
  enum class Kind { whitespace_punct, external_vocab };

  /// Default tokenizer.
  Tokenizer();

  /// Greedy longest-match over `vocab` inside each basic piece; characters not
  /// covered by any entry become single-codepoint pieces.
  static Tokenizer with_vocab(std::vector<std::string> vocab);
  /// One token per line.
  static Tokenizer load_vocab(const std::filesystem::path& path);

  Kind kind() const noexcept { return kind_; }
  std::vector<std::string> tokenize(std::string_view text) const;
  std::size_t count(std::string_view text) const;

 private:
  struct Vocab {
    std::unordered_set<std::string> entries;
    std::size_t max_len = 0;
  };
  template <typename Sink>
  void segment(std::string_view text, Sink&& sink) const;

  Kind kind_ = Kind::whitespace_punct;
  std::shared_ptr<const Vocab> vocab_;
};

std::size_t count_tokens(std::string_view text, const Tokenizer& tok);

}  // namespace recomp::corpus
