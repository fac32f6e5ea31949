// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "recomp/scoring/ngram_lm.hpp"
#include "recomp/scoring/scorer.hpp"
#include "recomp/scoring/template_reader.hpp"

namespace recomp::scoring {

/// In-process stand-in for M: the cache n-gram LM scores continuations and
/// the template reader answers QA prompts. Immutable; safe to share.
class BuiltinScorer final : public Scorer {
 public:
  explicit BuiltinScorer(CacheNgramLm lm, TemplateReader reader = TemplateReader())
      : lm_(std::move(lm)), reader_(reader) {}

  LogLik loglik(std::string_view prefix, std::string_view continuation) const override {
    return lm_.loglik(prefix, continuation);
  }
  std::string generate(std::string_view prompt, const GenerateParams& params) const override {
    return reader_.decode(prompt, params.max_tokens);
  }
  std::string name() const override { return "builtin-cache-ngram"; }

  const CacheNgramLm& lm() const noexcept { return lm_; }

 private:
  CacheNgramLm lm_;
  TemplateReader reader_;
};

}  // namespace recomp::scoring
