// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recomp/abstractive/prompts.hpp"
#include "recomp/abstractive/teacher.hpp"
#include "recomp/common/io.hpp"
#include "recomp/corpus/tokenizer.hpp"
#include "recomp/scoring/critic.hpp"

namespace recomp::abstractive {

struct DistillInstance {
  scoring::Example example;
  /// Rendered documents ("title: text") in descending retrieval score.
  std::vector<std::string> docs;
};

struct DistillationRecord {
  std::string example_id;
  std::string input;
  std::vector<std::string> docs;
  std::string summary;  // empty when the selective-augmentation branch fired
  std::optional<std::string> chosen_prompt_id;
  double score_with_summary = 0.0;  // v_r (LM) or v_s (QA)
  double score_no_retrieval = 0.0;  // v_d
  bool kept = true;
};

json to_json(const DistillationRecord& r);
DistillationRecord distillation_from_json(const json& j);
std::vector<DistillationRecord> load_distillation(const std::string& path);

struct DistillOptions {
  unsigned jobs = 1;
  /// QA: mark records with v_s <= v_d as kept = false.
  bool drop_no_improvement = false;
  /// QA: skip examples whose docs do not contain any gold answer.
  bool require_gold_in_docs = false;
};

struct DistillStats {
  std::size_t examples = 0;
  std::size_t prefiltered = 0;       // failed require_gold_in_docs
  std::size_t skipped = 0;           // every prompt failed
  std::size_t prompt_failures = 0;
  std::size_t records = 0;
  std::size_t kept = 0;
  std::size_t empty = 0;             // kept records with an empty summary

  /// 100 * (examples - kept) / examples.
  double filtered_pct() const;
  /// 100 * empty / kept.
  double empty_pct() const;
  json to_json() const;
};

/// Concatenation used for the {docs} slot: one document per line.
std::string join_docs(std::span<const std::string> docs);

/// Prompt-ensemble distillation for language modeling. For every example each
/// prompt yields one candidate s_j with score v_j; s_t is the first argmax and
/// v_r its score. If v_r < v_d (the score with no retrieval) the target is the
/// empty summary. Every record is kept.
std::vector<DistillationRecord> build_distill_lm(std::span<const DistillInstance> instances,
                                                 const Teacher& teacher,
                                                 const scoring::Critic& critic,
                                                 std::span<const PromptTemplate> prompts,
                                                 const DistillOptions& opts = {},
                                                 DistillStats* stats = nullptr);

/// Single-prompt distillation for QA. v_s < v_d empties the summary; with
/// drop_no_improvement, v_s <= v_d also marks the record as not kept.
std::vector<DistillationRecord> build_distill_qa(std::span<const DistillInstance> instances,
                                                 const Teacher& teacher,
                                                 const scoring::Critic& critic,
                                                 const PromptTemplate& prompt,
                                                 const DistillOptions& opts = {},
                                                 DistillStats* stats = nullptr);

/// Argmax of the end-task score over `summaries`; ties prefer the shorter
/// summary (in tokens), then the lower index. Throws unless "" is an option.
std::size_t oracle_abstractive_index(std::span<const std::string> summaries,
                                     const scoring::Critic& critic, const scoring::Example& ex,
                                     const corpus::Tokenizer& tok);
std::string oracle_abstractive(std::span<const std::string> summaries,
                               const scoring::Critic& critic, const scoring::Example& ex,
                               const corpus::Tokenizer& tok);

}  // namespace recomp::abstractive
