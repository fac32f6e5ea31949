// SPDX-License-Identifier: Apache-2.0
#include "recomp/retrieval/candidate_pool.hpp"

#include "recomp/common/ranking.hpp"
#include "recomp/corpus/corpus.hpp"

namespace recomp::retrieval {

std::vector<Candidate> candidate_pool(const RetrievedSet& retrieved, std::string_view query,
                                      const SentenceRanker& ranker, std::size_t top_docs,
                                      std::size_t top_sentences,
                                      const corpus::WordList& abbreviations) {
  std::vector<Candidate> all;
  const std::size_t ndocs = std::min(top_docs, retrieved.hits.size());
  for (std::size_t h = 0; h < ndocs; ++h) {
    for (auto& s : corpus::split_sentences(*retrieved.hits[h].doc, abbreviations)) {
      Candidate c;
      c.text = corpus::decontextualize(s);
      c.sentence = std::move(s);
      c.pool_index = all.size();
      all.push_back(std::move(c));
    }
  }
  std::vector<std::string> texts;
  texts.reserve(all.size());
  for (const auto& c : all) texts.push_back(c.text);
  const auto scores = ranker.score(query, texts);
  for (std::size_t i = 0; i < all.size(); ++i) all[i].score = scores[i];

  std::vector<Candidate> out;
  for (auto i : rank_descending(scores)) {
    if (out.size() == top_sentences) break;
    out.push_back(std::move(all[i]));
  }
  return out;
}

}  // namespace recomp::retrieval
