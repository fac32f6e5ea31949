// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recomp/extractive/contrastive_record.hpp"
#include "recomp/extractive/dual_encoder.hpp"
#include "recomp/scoring/critic.hpp"

namespace recomp::extractive {

/// An example together with its candidate sentences (decontextualized,
/// already limited to the candidate pool).
struct TrainingInstance {
  scoring::Example example;
  std::vector<std::string> candidates;
};

struct ContrastiveOptions {
  double epsilon = 0.5;  // LM margin in nats; QA uses 0
  std::size_t max_negatives = kMaxNegatives;
  unsigned jobs = 1;
};

struct ContrastiveStats {
  std::size_t examples = 0;
  std::size_t emitted = 0;
  std::size_t dropped = 0;  // no eligible negatives, or empty pool
  double mean_negatives = 0.0;
};

/// One example through the data-construction loop:
///   p = argmax_j Score(s_j) (ties: lowest index)
///   L = { s_j : Score(s_j) + ε < Score(p) }
///   N = top max_negatives of L by <enc(s_j), enc(x)> (ties: lowest index)
/// Returns nullopt when L is empty.
std::optional<ContrastiveRecord> build_contrastive_record(const TrainingInstance& inst,
                                                          const scoring::Critic& critic,
                                                          const DualEncoder& ranker,
                                                          double epsilon,
                                                          std::size_t max_negatives);

/// Language modeling: Score is the target log-likelihood, margin ε.
std::vector<ContrastiveRecord> build_contrastive_lm(std::span<const TrainingInstance> instances,
                                                    const scoring::Critic& critic,
                                                    const DualEncoder& ranker,
                                                    const ContrastiveOptions& opts,
                                                    ContrastiveStats* stats = nullptr);

/// QA: Score is exact match of the decoded answer and ε is fixed to 0.
std::vector<ContrastiveRecord> build_contrastive_qa(std::span<const TrainingInstance> instances,
                                                    const scoring::Critic& critic,
                                                    const DualEncoder& ranker,
                                                    ContrastiveOptions opts,
                                                    ContrastiveStats* stats = nullptr);

}  // namespace recomp::extractive
