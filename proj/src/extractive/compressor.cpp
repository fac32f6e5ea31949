// SPDX-License-Identifier: Apache-2.0
#include "recomp/extractive/compressor.hpp"

#include "recomp/corpus/corpus.hpp"
#include "recomp/evaluation/qa_prompt.hpp"

namespace recomp::extractive {

CompressionResult compress_extractive(const DualEncoder& model, std::string_view x,
                                      std::span<const corpus::Document* const> docs,
                                      std::size_t top_n, const corpus::Tokenizer& tok,
                                      std::string policy) {
  std::string source;
  for (const auto* d : docs) {
    if (!source.empty()) source += '\n';
    source += evaluation::render_document(*d);
  }
  const auto pool = corpus::decontextualized_pool(docs);
  const auto scores = EmbeddingSentenceRanker(model).score(x, pool);
  return select_top_sentences(pool, scores, top_n, tok.count(source), std::move(policy), tok);
}

CompressionResult ExtractiveCompressor::compress(const CompressionInput& in) const {
  const auto docs = hit_documents(in.hits);
  return compress_extractive(*model_, in.example->query, docs, top_n_, *tok_, policy_);
}

}  // namespace recomp::extractive
