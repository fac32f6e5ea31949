// SPDX-License-Identifier: Apache-2.0
#pragma once

// Straight-line re-statement of the two distillation loops (prompt ensemble
// for language modeling, single prompt for QA) and the hand counts behind the
// filtered/empty percentages.

#include <span>
#include <vector>

#include "oracles/contrastive_oracle.hpp"
#include "recomp/abstractive/distill.hpp"

namespace recomp::oracle {

struct DistillCounts {
  std::size_t examples = 0;
  std::size_t kept = 0;
  std::size_t empty = 0;  // kept records with an empty summary
};

std::vector<abstractive::DistillationRecord> distill_lm(
    std::span<const abstractive::DistillInstance> instances, const abstractive::Teacher& teacher,
    const EndTask& task, std::span<const abstractive::PromptTemplate> prompts);

std::vector<abstractive::DistillationRecord> distill_qa(
    std::span<const abstractive::DistillInstance> instances, const abstractive::Teacher& teacher,
    const EndTask& task, const abstractive::PromptTemplate& prompt, bool drop_no_improvement);

DistillCounts count(std::size_t examples, std::span<const abstractive::DistillationRecord> records);

}  // namespace recomp::oracle
