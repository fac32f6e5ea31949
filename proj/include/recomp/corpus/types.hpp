// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>

namespace recomp::corpus {

struct Article {
  std::string id;
  std::string title;
  std::string text;
};

/// Half-open [start, end) word offsets into the source article.
struct WordSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - start; }
  friend bool operator==(const WordSpan&, const WordSpan&) = default;
};

/// A retrieval unit: a contiguous run of at most `chunk_words` article words.
struct Document {
  std::string doc_id;
  std::string article_id;
  std::string title;
  std::string text;
  WordSpan span;
  friend bool operator==(const Document&, const Document&) = default;
};

struct Sentence {
  std::string sentence_id;
  std::string doc_id;
  std::string title;
  std::string text;
  std::size_t index_in_doc = 0;
};

}  // namespace recomp::corpus
