// SPDX-License-Identifier: Apache-2.0
#include "recomp/compression.hpp"

#include "recomp/common/error.hpp"
#include "recomp/common/ranking.hpp"
#include "recomp/evaluation/qa_prompt.hpp"

namespace recomp {

json to_json(const CompressionResult& r) {
  return {{"summary", r.summary}, {"tokens", r.tokens},   {"source_tokens", r.source_tokens},
          {"ratio", r.ratio},     {"policy", r.policy}, {"selected", r.selected}};
}

CompressionResult make_result(std::string summary, std::size_t source_tokens, std::string policy,
                              const corpus::Tokenizer& tok) {
  CompressionResult r;
  r.tokens = summary.empty() ? 0 : tok.count(summary);
  r.summary = std::move(summary);
  r.source_tokens = source_tokens;
  r.ratio = source_tokens == 0 ? 0.0
                               : static_cast<double>(r.tokens) / static_cast<double>(source_tokens);
  r.policy = std::move(policy);
  return r;
}

std::string source_text(std::span<const retrieval::Hit> hits) {
  return evaluation::documents_descending(hits);
}

std::vector<const corpus::Document*> hit_documents(std::span<const retrieval::Hit> hits) {
  std::vector<const corpus::Document*> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.doc);
  return out;
}

std::vector<std::string> rendered_documents(std::span<const retrieval::Hit> hits) {
  std::vector<std::string> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(evaluation::render_document(*h.doc));
  return out;
}

CompressionResult select_top_sentences(std::span<const std::string> pool,
                                       std::span<const double> scores, std::size_t top_n,
                                       std::size_t source_tokens, std::string policy,
                                       const corpus::Tokenizer& tok) {
  if (top_n == 0) throw Error("top_n must be >= 1");
  if (pool.size() != scores.size()) throw Error("pool/score size mismatch");
  std::string summary;
  std::vector<std::size_t> chosen;
  for (auto i : rank_descending(scores)) {
    if (chosen.size() == top_n) break;
    if (!summary.empty()) summary += ' ';
    summary += pool[i];
    chosen.push_back(i);
  }
  auto r = make_result(std::move(summary), source_tokens, std::move(policy), tok);
  r.selected = std::move(chosen);
  return r;
}

const corpus::Tokenizer& default_tokenizer() {
  static const corpus::Tokenizer tok;
  return tok;
}

}  // namespace recomp
