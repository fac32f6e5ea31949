// SPDX-License-Identifier: Apache-2.0
#include "recomp/scoring/ngram_lm.hpp"

#include <cmath>

#include "recomp/common/error.hpp"
#include "recomp/corpus/tokenizer.hpp"

namespace recomp::scoring {
namespace {
constexpr int kIdBits = 21;
constexpr std::uint64_t kIdMask = (std::uint64_t{1} << kIdBits) - 1;
}  // namespace

CacheNgramLm CacheNgramLm::train(std::span<const std::string> count_texts,
                                 std::span<const std::string> vocab_texts, CacheLmConfig cfg) {
  if (cfg.order < 2 || cfg.order > 3) throw Error("n-gram order must be 2 or 3");
  if (!(cfg.lambda_cache >= 0.0 && cfg.lambda_cache <= 1.0)) {
    throw Error("lambda_cache must lie in [0, 1]");
  }
  if (!(cfg.alpha > 0.0)) throw Error("smoothing alpha must be > 0");
  CacheNgramLm lm;
  lm.cfg_ = cfg;
  lm.words_.push_back("<unk>");
  auto add_vocab = [&](std::string_view text) {
    for (auto& t : corpus::normalized_terms(text)) {
      if (lm.ids_.try_emplace(t, static_cast<std::uint32_t>(lm.words_.size())).second) {
        lm.words_.push_back(std::move(t));
      }
    }
  };
  for (const auto& t : vocab_texts) add_vocab(t);
  for (const auto& t : count_texts) add_vocab(t);
  if (lm.words_.size() >= kIdMask) throw Error("vocabulary too large for the n-gram key packing");

  const std::size_t n = static_cast<std::size_t>(cfg.order);
  for (const auto& text : count_texts) {
    std::vector<std::uint32_t> seq(n - 1, lm.bos());
    const auto ids = lm.encode(text);
    seq.insert(seq.end(), ids.begin(), ids.end());
    for (std::size_t i = n - 1; i < seq.size(); ++i) {
      const auto ctx = lm.context_key(std::span(seq).first(i));
      ++lm.context_counts_[ctx];
      ++lm.ngram_counts_[(ctx << kIdBits) | seq[i]];
    }
  }
  return lm;
}

std::uint32_t CacheNgramLm::id(std::string_view term) const {
  auto it = ids_.find(std::string(term));
  return it == ids_.end() ? kUnk : it->second;
}

std::vector<std::uint32_t> CacheNgramLm::encode(std::string_view text) const {
  std::vector<std::uint32_t> out;
  for (const auto& t : corpus::normalized_terms(text)) out.push_back(id(t));
  return out;
}

std::uint64_t CacheNgramLm::context_key(std::span<const std::uint32_t> history) const {
  std::uint64_t key = 0;
  const std::size_t n = static_cast<std::size_t>(cfg_.order) - 1;
  for (std::size_t k = 0; k < n; ++k) {
    // k-th most distant context slot; missing positions are BOS.
    const std::size_t back = n - k;
    const std::uint32_t v = history.size() >= back ? history[history.size() - back] : bos();
    key = (key << kIdBits) | v;
  }
  return key;
}

double CacheNgramLm::ngram_prob(std::uint64_t ctx, std::uint32_t next) const {
  const auto nit = ngram_counts_.find((ctx << kIdBits) | next);
  const auto cit = context_counts_.find(ctx);
  const double c_ng = nit == ngram_counts_.end() ? 0.0 : nit->second;
  const double c_ctx = cit == context_counts_.end() ? 0.0 : cit->second;
  return (c_ng + cfg_.alpha) / (c_ctx + cfg_.alpha * static_cast<double>(words_.size()));
}

double CacheNgramLm::prob(std::span<const std::uint32_t> history, std::uint32_t next) const {
  const double p_ng = ngram_prob(context_key(history), next);
  if (history.empty() || cfg_.lambda_cache == 0.0) return p_ng;
  std::size_t hits = 0;
  for (auto h : history) hits += (h == next);
  const double cache = static_cast<double>(hits) / static_cast<double>(history.size());
  return cfg_.lambda_cache * cache + (1.0 - cfg_.lambda_cache) * p_ng;
}

std::vector<double> CacheNgramLm::distribution(std::span<const std::uint32_t> history) const {
  std::vector<double> p(words_.size());
  for (std::uint32_t v = 0; v < words_.size(); ++v) p[v] = prob(history, v);
  return p;
}

LogLik CacheNgramLm::loglik(std::string_view prefix, std::string_view continuation) const {
  std::vector<std::uint32_t> seq = encode(prefix);
  const auto target = encode(continuation);
  std::unordered_map<std::uint32_t, std::uint32_t> cache;
  if (cfg_.lambda_cache > 0.0) {
    for (auto t : target) cache.try_emplace(t, 0);
    for (auto h : seq) {
      if (auto it = cache.find(h); it != cache.end()) ++it->second;
    }
  }
  LogLik out;
  out.token_count = target.size();
  seq.reserve(seq.size() + target.size());
  for (auto y : target) {
    const double p_ng = ngram_prob(context_key(seq), y);
    double p = p_ng;
    if (!seq.empty() && cfg_.lambda_cache > 0.0) {
      const double c = static_cast<double>(cache[y]) / static_cast<double>(seq.size());
      p = cfg_.lambda_cache * c + (1.0 - cfg_.lambda_cache) * p_ng;
    }
    out.logprob += std::log(p);
    seq.push_back(y);
    if (cfg_.lambda_cache > 0.0) ++cache[y];
  }
  return out;
}

}  // namespace recomp::scoring
