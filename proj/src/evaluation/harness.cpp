// SPDX-License-Identifier: Apache-2.0
#include "recomp/evaluation/harness.hpp"

#include <exception>

#include "recomp/common/log.hpp"
#include "recomp/common/parallel.hpp"
#include "recomp/scoring/answer_metrics.hpp"

namespace recomp::evaluation {
namespace {

CompressionResult run_compressor(const scoring::Example& ex, std::size_t ordinal,
                                 const Retriever& retriever, const Compressor& compressor) {
  std::vector<retrieval::Hit> hits;
  if (compressor.uses_retrieval()) hits = retriever.retrieve(ex);
  return compressor.compress({&ex, hits, ordinal});
}

template <typename Fn>
EvalReport run(EvalTask task, std::span<const scoring::Example> examples, const Retriever& retriever,
               const Compressor& compressor, unsigned jobs, Fn&& score) {
  EvalReport report;
  report.task = task;
  report.policy = compressor.policy();
  report.rows.resize(examples.size());
  parallel_for(examples.size(), jobs, [&](std::size_t i) {
    auto& row = report.rows[i];
    row.example_id = examples[i].id;
    try {
      auto c = run_compressor(examples[i], i, retriever, compressor);
      row.summary_tokens = c.tokens;
      row.source_tokens = c.source_tokens;
      row.summary = std::move(c.summary);
      score(examples[i], row);
    } catch (const std::exception& e) {
      row = EvalRow{};
      row.example_id = examples[i].id;
      row.failed = true;
      row.error = e.what();
    }
  });
  aggregate(report);
  if (report.failures > 0) {
    log::warn(std::to_string(report.failures) + " of " + std::to_string(examples.size()) +
              " examples failed");
  }
  return report;
}

}  // namespace

EvalReport eval_lm(const scoring::Critic& critic, std::span<const scoring::Example> examples,
                   const Retriever& retriever, const Compressor& compressor,
                   const HarnessOptions& opts) {
  return run(EvalTask::lm, examples, retriever, compressor, opts.jobs,
             [&](const scoring::Example& ex, EvalRow& row) {
               const auto ll = critic.lm_loglik(ex, row.summary);
               row.logprob = ll.logprob;
               row.target_tokens = ll.token_count;
             });
}

EvalReport eval_qa(const scoring::Critic& critic, std::span<const scoring::Example> examples,
                   const Retriever& retriever, const Compressor& compressor,
                   const HarnessOptions& opts) {
  return run(EvalTask::qa, examples, retriever, compressor, opts.jobs,
             [&](const scoring::Example& ex, EvalRow& row) {
               row.prediction = critic.predict(ex, row.summary);
               row.golds = ex.target.answers;
               row.em = scoring::em_score(row.prediction, row.golds);
               row.f1 = scoring::f1_score(row.prediction, row.golds);
             });
}

std::vector<CompressionResult> compress_all(std::span<const scoring::Example> examples,
                                            const Retriever& retriever, const Compressor& compressor,
                                            unsigned jobs) {
  std::vector<CompressionResult> out(examples.size());
  parallel_for(examples.size(), jobs,
               [&](std::size_t i) { out[i] = run_compressor(examples[i], i, retriever, compressor); });
  return out;
}

}  // namespace recomp::evaluation
