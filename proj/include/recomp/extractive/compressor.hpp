// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string_view>

#include "recomp/compression.hpp"
#include "recomp/extractive/dual_encoder.hpp"

namespace recomp::extractive {

/// Top-n decontextualized sentences of `docs` by <embed(sentence), embed(x)>,
/// ties by ascending pool position, joined with single spaces.
CompressionResult compress_extractive(const DualEncoder& model, std::string_view x,
                                      std::span<const corpus::Document* const> docs,
                                      std::size_t top_n,
                                      const corpus::Tokenizer& tok = default_tokenizer(),
                                      std::string policy = "extractive");

class ExtractiveCompressor final : public Compressor {
 public:
  ExtractiveCompressor(const DualEncoder& model, std::size_t top_n, std::string policy,
                       const corpus::Tokenizer& tok = default_tokenizer())
      : model_(&model), top_n_(top_n), policy_(std::move(policy)), tok_(&tok) {}

  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return policy_; }

 private:
  const DualEncoder* model_;
  std::size_t top_n_;
  std::string policy_;
  const corpus::Tokenizer* tok_;
};

}  // namespace recomp::extractive
