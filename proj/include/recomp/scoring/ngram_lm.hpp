// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "recomp/scoring/scorer.hpp"

namespace recomp::scoring {

struct CacheLmConfig {
  int order = 2;               // 2 or 3
  double lambda_cache = 0.3;   // weight of the prefix unigram cache
  double alpha = 0.1;          // add-alpha smoothing
};

/// Add-alpha n-gram model over a closed vocabulary (plus UNK), interpolated
/// with a unigram cache over every token seen so far:
///
///   p(v | h) = λ · count_h(v) / |h| + (1 − λ) · (c(ctx, v) + α) / (c(ctx) + α·|V|)
///
/// where ctx is the last order−1 ids of h (BOS-padded). With an empty history
/// the cache term is dropped. Terms are lowercased and punctuation-free.
class CacheNgramLm {
 public:
  static constexpr std::uint32_t kUnk = 0;

  /// Vocabulary = terms of `vocab_texts` and `count_texts`; n-gram counts come
  /// from `count_texts` only, each an independent BOS-padded stream.
  static CacheNgramLm train(std::span<const std::string> count_texts,
                            std::span<const std::string> vocab_texts, CacheLmConfig cfg);

  const CacheLmConfig& config() const noexcept { return cfg_; }
  /// Including UNK.
  std::size_t vocab_size() const noexcept { return words_.size(); }
  std::uint32_t id(std::string_view term) const;
  const std::string& word(std::uint32_t id) const { return words_.at(id); }
  std::vector<std::uint32_t> encode(std::string_view text) const;

  double prob(std::span<const std::uint32_t> history, std::uint32_t next) const;
  /// Full next-token distribution, indexed by id.
  std::vector<double> distribution(std::span<const std::uint32_t> history) const;

  LogLik loglik(std::string_view prefix, std::string_view continuation) const;

 private:
  CacheNgramLm() = default;
  std::uint32_t bos() const noexcept { return static_cast<std::uint32_t>(words_.size()); }
  std::uint64_t context_key(std::span<const std::uint32_t> history) const;
  double ngram_prob(std::uint64_t ctx, std::uint32_t next) const;

  CacheLmConfig cfg_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::unordered_map<std::uint64_t, std::uint32_t> ngram_counts_;    // (ctx, next)
  std::unordered_map<std::uint64_t, std::uint32_t> context_counts_;  // ctx
};

}  // namespace recomp::scoring
