// SPDX-License-Identifier: Apache-2.0
#include "recomp/scoring/critic.hpp"

#include "recomp/common/error.hpp"
#include "recomp/scoring/answer_metrics.hpp"

namespace recomp::scoring {

std::string Critic::lm_prefix(std::string_view summary, std::string_view input) {
  if (summary.empty()) return std::string(input);
  std::string p;
  p.reserve(summary.size() + 1 + input.size());
  p += summary;
  p += '\n';
  p += input;
  return p;
}

LogLik Critic::lm_loglik(const Example& ex, std::string_view summary) const {
  if (ex.target.kind != Target::Kind::continuation) {
    throw Error("example " + ex.id + " has no continuation target");
  }
  return scorer_->loglik(lm_prefix(summary, ex.input), ex.target.continuation);
}

std::string Critic::qa_prompt(const Example& ex, std::string_view evidence) const {
  return evaluation::build_qa_prompt(demos_, evidence, ex.input);
}

std::string Critic::predict(const Example& ex, std::string_view evidence) const {
  GenerateParams p;
  p.max_tokens = max_answer_tokens_;
  p.temperature = 0.0;
  p.stop = {"\n"};
  return scorer_->generate(qa_prompt(ex, evidence), p);
}

double Critic::score(const Example& ex, std::string_view summary) const {
  if (ex.target.kind == Target::Kind::continuation) return lm_loglik(ex, summary).logprob;
  if (ex.target.answers.empty()) throw Error("example " + ex.id + " has no gold answers");
  return static_cast<double>(em_score(predict(ex, summary), ex.target.answers));
}

}  // namespace recomp::scoring
