// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "recomp/common/io.hpp"
#include "recomp/corpus/types.hpp"

namespace recomp::retrieval {

struct Bm25Params {
  double k1 = 0.9;
  double b = 0.4;
};

/// ln((N - df + 0.5) / (df + 0.5) + 1); always positive.
inline double bm25_idf(double doc_count, double df) {
  return std::log((doc_count - df + 0.5) / (df + 0.5) + 1.0);
}

/// Okapi saturation term for one query term occurrence.
inline double bm25_tf_part(double tf, double doc_len, double avg_len, const Bm25Params& p) {
  const double norm = avg_len > 0.0 ? doc_len / avg_len : 1.0;
  return tf * (p.k1 + 1.0) / (tf + p.k1 * (1.0 - p.b + p.b * norm));
}

struct Posting {
  std::uint32_t doc;
  std::uint32_t tf;
  friend bool operator==(const Posting&, const Posting&) = default;
};

/// Which documents a search must skip before ranking.
struct Exclusion {
  enum class Mode { none, article_id, substring };
  Mode mode = Mode::none;
  std::string value;

  static Exclusion none() { return {}; }
  static Exclusion article(std::string id) { return {Mode::article_id, std::move(id)}; }
  /// Skips every article with a document containing `text` verbatim.
  static Exclusion containing(std::string text) { return {Mode::substring, std::move(text)}; }
};

struct Hit {
  const corpus::Document* doc = nullptr;
  std::size_t doc_index = 0;
  double score = 0.0;
};

/// Hits in descending score, ties by ascending doc_id.
struct RetrievedSet {
  std::string example_id;
  std::vector<Hit> hits;
};

json to_json(const RetrievedSet& r);

/// Inverted index over lowercased, punctuation-free terms. Immutable after
/// construction; concurrent searches are safe.
class Bm25Index {
 public:
  static constexpr char kMagic[8] = {'R', 'C', 'M', 'P', 'B', 'M', '2', '5'};
  static constexpr std::uint8_t kFormatVersion = 1;

  /// Throws Error when `docs` is empty.
  static Bm25Index build(std::vector<corpus::Document> docs, Bm25Params params = {});

  void save(const std::filesystem::path& path) const;
  static Bm25Index load(const std::filesystem::path& path);

  const std::vector<corpus::Document>& documents() const noexcept { return docs_; }
  std::size_t doc_count() const noexcept { return docs_.size(); }
  double avg_doc_len() const noexcept { return avg_len_; }
  std::uint32_t doc_length(std::size_t doc) const { return doc_lengths_.at(doc); }
  const Bm25Params& params() const noexcept { return params_; }

  std::size_t document_frequency(std::string_view term) const;
  double idf(std::string_view term) const;
  /// Sorted by document position; empty for unknown terms.
  std::span<const Posting> postings(std::string_view term) const;

  /// BM25 of `query` against one document (query terms counted with
  /// multiplicity).
  double score(std::string_view query, std::size_t doc) const;

  /// Top-k documents with a positive score.
  RetrievedSet search(std::string_view query, std::size_t k,
                      const Exclusion& exclude = Exclusion::none()) const;

 private:
  Bm25Index() = default;
  void finalize();
  const std::vector<Posting>* find(std::string_view term) const;

  Bm25Params params_;
  std::vector<corpus::Document> docs_;
  std::vector<std::uint32_t> doc_lengths_;
  double avg_len_ = 0.0;
  std::vector<std::string> terms_;
  std::vector<std::vector<Posting>> postings_;
  std::unordered_map<std::string, std::uint32_t> term_ids_;
};

/// BM25 of `query` against each text, with statistics computed over `texts`
/// alone (used to rank sentences inside a candidate pool).
std::vector<double> bm25_score_texts(std::string_view query, std::span<const std::string> texts,
                                     const Bm25Params& params = {});

}  // namespace recomp::retrieval
