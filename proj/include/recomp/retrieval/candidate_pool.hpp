// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recomp/corpus/lexicon.hpp"
#include "recomp/corpus/types.hpp"
#include "recomp/retrieval/bm25.hpp"

namespace recomp::retrieval {

/// Scores decontextualized sentences against a query.
class SentenceRanker {
 public:
  virtual ~SentenceRanker() = default;
  virtual std::vector<double> score(std::string_view query,
                                    std::span<const std::string> sentences) const = 0;
};

/// BM25 with term statistics taken from the sentence pool itself.
class Bm25SentenceRanker final : public SentenceRanker {
 public:
  explicit Bm25SentenceRanker(Bm25Params params = {}) : params_(params) {}
  std::vector<double> score(std::string_view query,
                            std::span<const std::string> sentences) const override {
    return bm25_score_texts(query, sentences, params_);
  }

 private:
  Bm25Params params_;
};

struct Candidate {
  corpus::Sentence sentence;
  std::string text;  // decontextualized
  double score = 0.0;
  std::size_t pool_index = 0;  // position among all sentences of the top documents
};

/// Splits the first `top_docs` hits into decontextualized sentences, ranks
/// them against `query`, and keeps the best `top_sentences` (score
/// descending, ties by pool position).
std::vector<Candidate> candidate_pool(const RetrievedSet& retrieved, std::string_view query,
                                      const SentenceRanker& ranker, std::size_t top_docs = 5,
                                      std::size_t top_sentences = 20,
                                      const corpus::WordList& abbreviations =
                                          corpus::default_abbreviations());

}  // namespace recomp::retrieval
