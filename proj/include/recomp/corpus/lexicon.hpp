// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace recomp::corpus {

/// An ordered, case-sensitive word list loaded from a text asset: one entry
/// per line, blank lines and lines starting with '#' ignored.
class WordList {
 public:
  WordList() = default;
  explicit WordList(std::vector<std::string> words);

  static WordList load(const std::filesystem::path& path);
  static WordList parse(std::string_view text);

  bool contains(std::string_view w) const { return set_.contains(std::string(w)); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::unordered_set<std::string> set_;
};

/// English stopwords (179 entries, lowercase). Matching is case-sensitive:
/// "the" is a stopword, "The" is not.
const WordList& default_stopwords();

/// Abbreviations that never end a sentence ("Dr.", "e.g.", "U.S.", ...).
const WordList& default_abbreviations();

}  // namespace recomp::corpus
