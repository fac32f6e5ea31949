// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "recomp/abstractive/prompts.hpp"
#include "recomp/abstractive/teacher.hpp"
#include "recomp/compression.hpp"
#include "recomp/scoring/critic.hpp"

namespace recomp::abstractive {

/// Greedy decoding parameters for compressor inference.
scoring::GenerateParams inference_params(std::size_t max_tokens = 64);

/// Renders `prompt` with x and the docs, generates at temperature 0 and
/// accounts tokens against the joined docs. An empty response is the empty
/// summary. Transport errors propagate.
CompressionResult compress_abstractive(const scoring::Scorer& client, const PromptTemplate& prompt,
                                       std::string_view x, std::span<const std::string> docs,
                                       std::size_t max_tokens = 64,
                                       const corpus::Tokenizer& tok = default_tokenizer());

class AbstractiveCompressor final : public Compressor {
 public:
  AbstractiveCompressor(const scoring::Scorer& client, PromptTemplate prompt,
                        std::size_t max_tokens = 64,
                        const corpus::Tokenizer& tok = default_tokenizer())
      : client_(&client), prompt_(std::move(prompt)), max_tokens_(max_tokens), tok_(&tok) {}
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return "abstractive"; }

 private:
  const scoring::Scorer* client_;
  PromptTemplate prompt_;
  std::size_t max_tokens_;
  const corpus::Tokenizer* tok_;
};

/// Summaries produced offline by an external compressor, keyed by example id
/// ({"example_id","summary"} per JSONL line).
class RecordedCompressor final : public Compressor {
 public:
  explicit RecordedCompressor(std::unordered_map<std::string, std::string> summaries,
                              std::string policy = "abstractive",
                              const corpus::Tokenizer& tok = default_tokenizer())
      : summaries_(std::move(summaries)), policy_(std::move(policy)), tok_(&tok) {}
  static RecordedCompressor load(const std::string& path, std::string policy = "abstractive",
                                 const corpus::Tokenizer& tok = default_tokenizer());
  /// Throws Error for an example without a recorded summary.
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return policy_; }

 private:
  std::unordered_map<std::string, std::string> summaries_;
  std::string policy_;
  const corpus::Tokenizer* tok_;
};

/// Candidates from every prompt through `teacher`, plus "", then the option
/// with the best end-task score (ties: shorter, then lower index). Failed
/// prompts are skipped.
class OracleAbstractiveCompressor final : public Compressor {
 public:
  OracleAbstractiveCompressor(const Teacher& teacher, std::vector<PromptTemplate> prompts,
                              const scoring::Critic& critic,
                              const corpus::Tokenizer& tok = default_tokenizer())
      : teacher_(&teacher), prompts_(std::move(prompts)), critic_(&critic), tok_(&tok) {}
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return "oracle-abs"; }

 private:
  const Teacher* teacher_;
  std::vector<PromptTemplate> prompts_;
  const scoring::Critic* critic_;
  const corpus::Tokenizer* tok_;
};

}  // namespace recomp::abstractive
