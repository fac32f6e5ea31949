// SPDX-License-Identifier: Apache-2.0
#include "recomp/abstractive/compressor.hpp"

#include <exception>

#include "recomp/abstractive/distill.hpp"
#include "recomp/common/error.hpp"
#include "recomp/common/io.hpp"
#include "recomp/common/log.hpp"

namespace recomp::abstractive {

scoring::GenerateParams inference_params(std::size_t max_tokens) {
  scoring::GenerateParams p;
  p.max_tokens = max_tokens;
  p.temperature = 0.0;
  p.top_p = 1.0;
  p.stop.clear();
  return p;
}

CompressionResult compress_abstractive(const scoring::Scorer& client, const PromptTemplate& prompt,
                                       std::string_view x, std::span<const std::string> docs,
                                       std::size_t max_tokens, const corpus::Tokenizer& tok) {
  const auto joined = join_docs(docs);
  auto summary = client.generate(prompt.render(x, joined), inference_params(max_tokens));
  return make_result(std::move(summary), tok.count(joined), "abstractive", tok);
}

CompressionResult AbstractiveCompressor::compress(const CompressionInput& in) const {
  const auto docs = rendered_documents(in.hits);
  return compress_abstractive(*client_, prompt_, in.example->query, docs, max_tokens_, *tok_);
}

RecordedCompressor RecordedCompressor::load(const std::string& path, std::string policy,
                                            const corpus::Tokenizer& tok) {
  std::unordered_map<std::string, std::string> m;
  read_jsonl(path, [&](std::size_t line, const json& j) {
    auto id = j.at("example_id").get<std::string>();
    if (!m.emplace(id, j.at("summary").get<std::string>()).second) {
      throw ParseError(path, line, "duplicate example_id '" + id + "'");
    }
  });
  return RecordedCompressor(std::move(m), std::move(policy), tok);
}

CompressionResult RecordedCompressor::compress(const CompressionInput& in) const {
  const auto it = summaries_.find(in.example->id);
  if (it == summaries_.end()) throw Error("no recorded summary for example '" + in.example->id + "'");
  return make_result(it->second, tok_->count(source_text(in.hits)), policy_, *tok_);
}

CompressionResult OracleAbstractiveCompressor::compress(const CompressionInput& in) const {
  const auto docs = rendered_documents(in.hits);
  const auto joined = join_docs(docs);
  std::vector<std::string> options{""};
  for (std::size_t j = 0; j < prompts_.size(); ++j) {
    TeacherRequest req{&prompts_[j], j, prompts_[j].render(in.example->query, joined), in.example, docs};
    try {
      options.push_back(teacher_->summarize(req));
    } catch (const std::exception& e) {
      log::warn("oracle-abs: prompt '" + prompts_[j].id() + "' failed: " + e.what());
    }
  }
  auto best = oracle_abstractive(options, *critic_, *in.example, *tok_);
  return make_result(std::move(best), tok_->count(joined), policy(), *tok_);
}

}  // namespace recomp::abstractive
