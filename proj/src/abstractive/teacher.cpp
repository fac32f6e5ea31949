// SPDX-License-Identifier: Apache-2.0
#include "recomp/abstractive/teacher.hpp"

#include <algorithm>

#include "recomp/common/ranking.hpp"
#include "recomp/corpus/corpus.hpp"
#include "recomp/retrieval/bm25.hpp"

namespace recomp::abstractive {

scoring::GenerateParams teacher_params(std::size_t max_tokens) {
  scoring::GenerateParams p;
  p.max_tokens = max_tokens;
  p.temperature = 0.7;
  p.top_p = 1.0;
  p.stop.clear();
  return p;
}

std::string GenerationTeacher::summarize(const TeacherRequest& req) const {
  return generator_->generate(req.rendered, params_);
}

std::size_t HeuristicTeacher::sentence_budget(std::string_view prompt_id) {
  if (prompt_id.ends_with("next-one")) return 1;
  if (prompt_id.ends_with("summarize")) return 3;
  return 2;
}

std::string HeuristicTeacher::summarize(const TeacherRequest& req) const {
  std::vector<std::string> sentences;
  for (const auto& doc : req.docs) {
    for (auto s : corpus::split_sentence_spans(doc)) sentences.emplace_back(s);
  }
  if (sentences.empty()) return {};
  const auto scores = retrieval::bm25_score_texts(req.example->query, sentences);
  const auto order = rank_descending(scores);
  const std::size_t k = std::min(sentence_budget(req.prompt->id()), sentences.size());
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < k && scores[order[i]] > 0.0; ++i) chosen.push_back(order[i]);
  std::sort(chosen.begin(), chosen.end());
  std::string out;
  for (auto i : chosen) {
    if (!out.empty()) out += ' ';
    out += sentences[i];
  }
  return out;
}

}  // namespace recomp::abstractive
