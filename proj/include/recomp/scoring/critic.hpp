// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recomp/evaluation/qa_prompt.hpp"
#include "recomp/scoring/example.hpp"
#include "recomp/scoring/scorer.hpp"

namespace recomp::scoring {

/// Score(M, y, [s; x]): target log-likelihood for continuation targets, exact
/// match of the decoded answer for QA targets. An empty summary means no
/// retrieval augmentation. Pure given a deterministic scorer.
class Critic {
 public:
  explicit Critic(const Scorer& scorer, std::vector<evaluation::Demo> demos = {},
                  std::size_t max_answer_tokens = 16)
      : scorer_(&scorer), demos_(std::move(demos)), max_answer_tokens_(max_answer_tokens) {}

  double score(const Example& ex, std::string_view summary) const;

  LogLik lm_loglik(const Example& ex, std::string_view summary) const;
  std::string qa_prompt(const Example& ex, std::string_view evidence) const;
  std::string predict(const Example& ex, std::string_view evidence) const;

  /// summary ⊕ "\n" ⊕ input, or just the input for an empty summary.
  static std::string lm_prefix(std::string_view summary, std::string_view input);

  const Scorer& scorer() const noexcept { return *scorer_; }
  const std::vector<evaluation::Demo>& demos() const noexcept { return demos_; }

 private:
  const Scorer* scorer_;
  std::vector<evaluation::Demo> demos_;
  std::size_t max_answer_tokens_;
};

inline double end_task_score(const Critic& critic, const Example& ex, std::string_view summary) {
  return critic.score(ex, summary);
}

}  // namespace recomp::scoring
