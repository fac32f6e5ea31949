// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "recomp/compression.hpp"
#include "recomp/evaluation/datasets.hpp"
#include "recomp/evaluation/report.hpp"
#include "recomp/scoring/critic.hpp"

namespace recomp::evaluation {

struct HarnessOptions {
  unsigned jobs = 1;
};

/// Retrieve (unless the policy skips retrieval), compress, then score the
/// target given [summary ⊕ "\n" ⊕ input]. Exceptions from any stage mark the
/// row failed. Rows keep the order of `examples`.
EvalReport eval_lm(const scoring::Critic& critic, std::span<const scoring::Example> examples,
                   const Retriever& retriever, const Compressor& compressor,
                   const HarnessOptions& opts = {});

/// Retrieve, compress, build the few-shot prompt with the summary as
/// evidence, decode and compute EM/F1 against the golds.
EvalReport eval_qa(const scoring::Critic& critic, std::span<const scoring::Example> examples,
                   const Retriever& retriever, const Compressor& compressor,
                   const HarnessOptions& opts = {});

/// Runs only the retrieve and compress stages.
std::vector<CompressionResult> compress_all(std::span<const scoring::Example> examples,
                                            const Retriever& retriever, const Compressor& compressor,
                                            unsigned jobs = 1);

}  // namespace recomp::evaluation
