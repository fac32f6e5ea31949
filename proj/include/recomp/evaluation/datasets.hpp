// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "recomp/common/io.hpp"
#include "recomp/evaluation/qa_prompt.hpp"
#include "recomp/retrieval/bm25.hpp"
#include "recomp/scoring/example.hpp"

namespace recomp::evaluation {

/// One running text for language-modeling evaluation or training.
struct StreamDoc {
  std::string id;
  std::string article_id;  // excluded from retrieval; may be empty
  std::string text;
};

/// {"id","article_id"?,"text"} per line.
std::vector<StreamDoc> load_streams(const std::filesystem::path& path);

struct LmEvalConfig {
  std::size_t stride = 32;
  std::size_t query_window = 32;
  std::size_t context_window = 224;
  std::size_t top_k = 5;

  /// Throws ConfigError unless stride >= 1 and both windows >= stride.
  void validate() const;
};

/// Cuts a stream into consecutive targets of `stride` words (the last one may
/// be shorter). Word positions count non-punctuation tokens; each target's
/// text runs from its first word up to the next target's first word, so
/// punctuation stays attached to the preceding word. The first target starts
/// at word `query_window`; the query is the preceding query_window words and
/// the input is the preceding context_window words (fewer near the start).
/// Example ids are "{stream id}:{block index}".
std::vector<scoring::Example> segment_stream(const StreamDoc& doc, const LmEvalConfig& cfg);
std::vector<scoring::Example> segment_streams(std::span<const StreamDoc> docs, const LmEvalConfig& cfg);

/// {"id","question","answers":[...]} per line.
std::vector<scoring::Example> load_qa_examples(const std::filesystem::path& path);
std::vector<Demo> demos_from_examples(std::span<const scoring::Example> examples);

/// BM25 retrieval with per-example contamination exclusion.
struct Retriever {
  const retrieval::Bm25Index* index = nullptr;
  std::size_t top_k = 5;
  /// Skip documents of the example's source article (when it has one).
  bool exclude_source_article = true;

  std::vector<retrieval::Hit> retrieve(const scoring::Example& ex) const;
};

}  // namespace recomp::evaluation
