// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <map>
#include <string>

#include "recomp/scoring/scorer.hpp"
#include "recomp/scoring/template_reader.hpp"

namespace recomp::test {

/// A scorer whose answers are looked up by summary. For loglik the summary is
/// the prefix text before the first newline (empty when there is none); for
/// generate it is the evidence block of the QA prompt.
class ScriptedScorer final : public scoring::Scorer {
 public:
  std::map<std::string, double> logprob;     // summary -> target log-likelihood
  std::map<std::string, std::string> answer;  // evidence -> generated answer
  double missing_logprob = -100.0;
  mutable std::atomic<int> calls{0};

  scoring::LogLik loglik(std::string_view prefix, std::string_view) const override {
    ++calls;
    const auto nl = prefix.find('\n');
    const std::string summary = nl == std::string_view::npos ? "" : std::string(prefix.substr(0, nl));
    const auto it = logprob.find(summary);
    return {it == logprob.end() ? missing_logprob : it->second, 1};
  }
  std::string generate(std::string_view prompt, const scoring::GenerateParams&) const override {
    ++calls;
    const auto it = answer.find(scoring::parse_qa_prompt(prompt).evidence);
    return it == answer.end() ? "" : it->second;
  }
  std::string name() const override { return "scripted"; }
};

}  // namespace recomp::test
