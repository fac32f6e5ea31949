// SPDX-License-Identifier: Apache-2.0
#include "oracles/distill_oracle.hpp"

namespace recomp::oracle {
namespace {

std::string docs_block(const std::vector<std::string>& docs) {
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i > 0) out += "\n";
    out += docs[i];
  }
  return out;
}

abstractive::DistillationRecord start(const abstractive::DistillInstance& inst) {
  abstractive::DistillationRecord r;
  r.example_id = inst.example.id;
  r.input = inst.example.query;
  r.docs = inst.docs;
  return r;
}

}  // namespace

std::vector<abstractive::DistillationRecord> distill_lm(
    std::span<const abstractive::DistillInstance> instances, const abstractive::Teacher& teacher,
    const EndTask& task, std::span<const abstractive::PromptTemplate> prompts) {
  std::vector<abstractive::DistillationRecord> out;
  for (const auto& inst : instances) {
    std::vector<std::string> summaries;
    std::vector<double> values;
    std::vector<std::size_t> prompt_of;
    for (std::size_t j = 0; j < prompts.size(); ++j) {
      abstractive::TeacherRequest req;
      req.prompt = &prompts[j];
      req.prompt_index = j;
      req.rendered = prompts[j].render(inst.example.query, docs_block(inst.docs));
      req.example = &inst.example;
      req.docs = inst.docs;
      std::string s;
      try {
        s = teacher.summarize(req);
      } catch (...) {
        continue;
      }
      summaries.push_back(s);
      values.push_back(end_task(task, inst.example, s));
      prompt_of.push_back(j);
    }
    if (summaries.empty()) continue;
    std::size_t t = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
      if (values[k] > values[t]) t = k;
    }
    const double v_r = values[t];
    const double v_d = end_task(task, inst.example, "");
    auto r = start(inst);
    r.score_with_summary = v_r;
    r.score_no_retrieval = v_d;
    if (v_r < v_d) {
      r.summary = "";
    } else {
      r.summary = summaries[t];
      r.chosen_prompt_id = prompts[prompt_of[t]].id();
    }
    r.kept = true;
    out.push_back(r);
  }
  return out;
}

std::vector<abstractive::DistillationRecord> distill_qa(
    std::span<const abstractive::DistillInstance> instances, const abstractive::Teacher& teacher,
    const EndTask& task, const abstractive::PromptTemplate& prompt, bool drop_no_improvement) {
  std::vector<abstractive::DistillationRecord> out;
  for (const auto& inst : instances) {
    abstractive::TeacherRequest req;
    req.prompt = &prompt;
    req.rendered = prompt.render(inst.example.query, docs_block(inst.docs));
    req.example = &inst.example;
    req.docs = inst.docs;
    std::string s;
    try {
      s = teacher.summarize(req);
    } catch (...) {
      continue;
    }
    const double v_s = end_task(task, inst.example, s);
    const double v_d = end_task(task, inst.example, "");
    auto r = start(inst);
    r.score_with_summary = v_s;
    r.score_no_retrieval = v_d;
    if (v_s < v_d) {
      r.summary = "";
    } else {
      r.summary = s;
      r.chosen_prompt_id = prompt.id();
    }
    r.kept = !(drop_no_improvement && v_s <= v_d);
    out.push_back(r);
  }
  return out;
}

DistillCounts count(std::size_t examples, std::span<const abstractive::DistillationRecord> records) {
  DistillCounts c;
  c.examples = examples;
  for (const auto& r : records) {
    if (!r.kept) continue;
    ++c.kept;
    if (r.summary.empty()) ++c.empty;
  }
  return c;
}

}  // namespace recomp::oracle
