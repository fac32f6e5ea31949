// SPDX-License-Identifier: Apache-2.0
#include "recomp/extractive/contrastive_data.hpp"

#include "recomp/common/parallel.hpp"
#include "recomp/common/ranking.hpp"
#include "recomp/simd/kernels.hpp"

namespace recomp::extractive {

std::optional<ContrastiveRecord> build_contrastive_record(const TrainingInstance& inst,
                                                          const scoring::Critic& critic,
                                                          const DualEncoder& ranker,
                                                          double epsilon,
                                                          std::size_t max_negatives) {
  const auto& cands = inst.candidates;
  max_negatives = std::min(max_negatives, kMaxNegatives);
  if (cands.empty() || max_negatives == 0) return std::nullopt;
  std::vector<double> scores(cands.size());
  for (std::size_t j = 0; j < cands.size(); ++j) scores[j] = critic.score(inst.example, cands[j]);
  const std::size_t pos = argmax_first(scores);

  std::vector<std::size_t> eligible;
  for (std::size_t j = 0; j < cands.size(); ++j) {
    if (scores[j] + epsilon < scores[pos]) eligible.push_back(j);
  }
  if (eligible.empty()) return std::nullopt;

  const auto q = ranker.embed(inst.example.query);
  std::vector<double> sims;
  sims.reserve(eligible.size());
  for (auto j : eligible) sims.push_back(simd::dot(ranker.embed(cands[j]), q));

  ContrastiveRecord rec;
  rec.example_id = inst.example.id;
  rec.input = inst.example.query;
  rec.positive = cands[pos];
  rec.positive_score = scores[pos];
  for (auto r : rank_descending(sims)) {
    if (rec.negatives.size() == max_negatives) break;
    rec.negatives.push_back(cands[eligible[r]]);
    rec.negative_scores.push_back(scores[eligible[r]]);
  }
  return rec;
}

namespace {

std::vector<ContrastiveRecord> build_all(std::span<const TrainingInstance> instances,
                                         const scoring::Critic& critic,
                                         const DualEncoder& ranker, double epsilon,
                                         std::size_t max_negatives, unsigned jobs,
                                         ContrastiveStats* stats) {
  std::vector<std::optional<ContrastiveRecord>> slots(instances.size());
  parallel_for(instances.size(), jobs, [&](std::size_t i) {
    slots[i] = build_contrastive_record(instances[i], critic, ranker, epsilon, max_negatives);
  });
  std::vector<ContrastiveRecord> out;
  std::size_t negs = 0;
  for (auto& s : slots) {
    if (!s) continue;
    negs += s->negatives.size();
    out.push_back(std::move(*s));
  }
  if (stats) {
    stats->examples = instances.size();
    stats->emitted = out.size();
    stats->dropped = instances.size() - out.size();
    stats->mean_negatives =
        out.empty() ? 0.0 : static_cast<double>(negs) / static_cast<double>(out.size());
  }
  return out;
}

}  // namespace

std::vector<ContrastiveRecord> build_contrastive_lm(std::span<const TrainingInstance> instances,
                                                    const scoring::Critic& critic,
                                                    const DualEncoder& ranker,
                                                    const ContrastiveOptions& opts,
                                                    ContrastiveStats* stats) {
  return build_all(instances, critic, ranker, opts.epsilon, opts.max_negatives, opts.jobs, stats);
}

std::vector<ContrastiveRecord> build_contrastive_qa(std::span<const TrainingInstance> instances,
                                                    const scoring::Critic& critic,
                                                    const DualEncoder& ranker,
                                                    ContrastiveOptions opts,
                                                    ContrastiveStats* stats) {
  return build_all(instances, critic, ranker, 0.0, opts.max_negatives, opts.jobs, stats);
}

}  // namespace recomp::extractive
