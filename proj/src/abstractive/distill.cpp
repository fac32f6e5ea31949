// SPDX-License-Identifier: Apache-2.0
#include "recomp/abstractive/distill.hpp"

#include <exception>
#include <limits>

#include "recomp/common/error.hpp"
#include "recomp/common/log.hpp"
#include "recomp/common/parallel.hpp"
#include "recomp/scoring/answer_metrics.hpp"

namespace recomp::abstractive {
namespace {

struct Outcome {
  std::optional<DistillationRecord> record;
  std::size_t prompt_failures = 0;
  bool prefiltered = false;
};

DistillationRecord base_record(const DistillInstance& inst) {
  DistillationRecord r;
  r.example_id = inst.example.id;
  r.input = inst.example.query;
  r.docs = inst.docs;
  return r;
}

std::optional<std::string> try_teacher(const Teacher& teacher, const TeacherRequest& req) {
  try {
    return teacher.summarize(req);
  } catch (const std::exception& e) {
    log::warn("teacher failed on example '" + req.example->id + "' prompt '" + req.prompt->id() +
              "': " + e.what());
    return std::nullopt;
  }
}

bool gold_in_docs(const DistillInstance& inst) {
  for (const auto& gold : inst.example.target.answers) {
    for (const auto& d : inst.docs) {
      if (scoring::contains_normalized(d, gold)) return true;
    }
  }
  return false;
}

std::vector<DistillationRecord> collect(std::vector<Outcome>& outcomes, DistillStats* stats) {
  DistillStats s;
  s.examples = outcomes.size();
  std::vector<DistillationRecord> out;
  for (auto& o : outcomes) {
    s.prompt_failures += o.prompt_failures;
    if (o.prefiltered) {
      ++s.prefiltered;
      continue;
    }
    if (!o.record) {
      ++s.skipped;
      continue;
    }
    ++s.records;
    if (o.record->kept) {
      ++s.kept;
      if (o.record->summary.empty()) ++s.empty;
    }
    out.push_back(std::move(*o.record));
  }
  if (stats != nullptr) *stats = s;
  return out;
}

}  // namespace

json to_json(const DistillationRecord& r) {
  json j;
  j["example_id"] = r.example_id;
  j["input"] = r.input;
  j["docs"] = r.docs;
  j["summary"] = r.summary;
  j["chosen_prompt_id"] = r.chosen_prompt_id ? json(*r.chosen_prompt_id) : json(nullptr);
  j["score_with_summary"] = r.score_with_summary;
  j["score_no_retrieval"] = r.score_no_retrieval;
  j["kept"] = r.kept;
  return j;
}

DistillationRecord distillation_from_json(const json& j) {
  DistillationRecord r;
  try {
    r.example_id = j.at("example_id").get<std::string>();
    r.input = j.at("input").get<std::string>();
    r.docs = j.at("docs").get<std::vector<std::string>>();
    r.summary = j.at("summary").get<std::string>();
    if (const auto& p = j.at("chosen_prompt_id"); !p.is_null()) r.chosen_prompt_id = p.get<std::string>();
    r.score_with_summary = j.at("score_with_summary").get<double>();
    r.score_no_retrieval = j.at("score_no_retrieval").get<double>();
    r.kept = j.at("kept").get<bool>();
  } catch (const json::exception& e) {
    throw Error(std::string("bad distillation record: ") + e.what());
  }
  return r;
}

std::vector<DistillationRecord> load_distillation(const std::string& path) {
  std::vector<DistillationRecord> out;
  read_jsonl(path, [&](std::size_t line, const json& j) {
    try {
      out.push_back(distillation_from_json(j));
    } catch (const Error& e) {
      throw ParseError(path, line, e.what());
    }
  });
  return out;
}

double DistillStats::filtered_pct() const {
  return examples == 0 ? 0.0 : 100.0 * static_cast<double>(examples - kept) / static_cast<double>(examples);
}

double DistillStats::empty_pct() const {
  return kept == 0 ? 0.0 : 100.0 * static_cast<double>(empty) / static_cast<double>(kept);
}

json DistillStats::to_json() const {
  return json{{"examples", examples},         {"prefiltered", prefiltered},
              {"skipped", skipped},           {"prompt_failures", prompt_failures},
              {"records", records},           {"kept", kept},
              {"empty", empty},               {"pct_filtered", filtered_pct()},
              {"pct_empty", empty_pct()}};
}

std::string join_docs(std::span<const std::string> docs) {
  std::string out;
  for (const auto& d : docs) {
    if (!out.empty()) out += '\n';
    out += d;
  }
  return out;
}

std::vector<DistillationRecord> build_distill_lm(std::span<const DistillInstance> instances,
                                                 const Teacher& teacher,
                                                 const scoring::Critic& critic,
                                                 std::span<const PromptTemplate> prompts,
                                                 const DistillOptions& opts, DistillStats* stats) {
  if (prompts.empty()) throw Error("build_distill_lm needs at least one prompt");
  std::vector<Outcome> outcomes(instances.size());
  parallel_for(instances.size(), opts.jobs, [&](std::size_t i) {
    const auto& inst = instances[i];
    const auto docs = join_docs(inst.docs);
    double v_r = -std::numeric_limits<double>::infinity();
    std::optional<std::size_t> best;
    std::string s_t;
    for (std::size_t j = 0; j < prompts.size(); ++j) {
      TeacherRequest req{&prompts[j], j, prompts[j].render(inst.example.query, docs), &inst.example, inst.docs};
      auto s = try_teacher(teacher, req);
      if (!s) {
        ++outcomes[i].prompt_failures;
        continue;
      }
      const double v = critic.score(inst.example, *s);
      if (!best || v > v_r) {
        v_r = v;
        best = j;
        s_t = std::move(*s);
      }
    }
    if (!best) return;
    auto r = base_record(inst);
    r.score_with_summary = v_r;
    r.score_no_retrieval = critic.score(inst.example, "");
    if (!(v_r < r.score_no_retrieval)) {
      r.summary = std::move(s_t);
      r.chosen_prompt_id = prompts[*best].id();
    }
    outcomes[i].record = std::move(r);
  });
  return collect(outcomes, stats);
}

std::vector<DistillationRecord> build_distill_qa(std::span<const DistillInstance> instances,
                                                 const Teacher& teacher,
                                                 const scoring::Critic& critic,
                                                 const PromptTemplate& prompt,
                                                 const DistillOptions& opts, DistillStats* stats) {
  std::vector<Outcome> outcomes(instances.size());
  parallel_for(instances.size(), opts.jobs, [&](std::size_t i) {
    const auto& inst = instances[i];
    if (opts.require_gold_in_docs && !gold_in_docs(inst)) {
      outcomes[i].prefiltered = true;
      return;
    }
    TeacherRequest req{&prompt, 0, prompt.render(inst.example.query, join_docs(inst.docs)), &inst.example, inst.docs};
    auto s = try_teacher(teacher, req);
    if (!s) {
      ++outcomes[i].prompt_failures;
      return;
    }
    auto r = base_record(inst);
    r.score_with_summary = critic.score(inst.example, *s);
    r.score_no_retrieval = critic.score(inst.example, "");
    if (!(r.score_with_summary < r.score_no_retrieval)) {
      r.summary = std::move(*s);
      r.chosen_prompt_id = prompt.id();
    }
    if (opts.drop_no_improvement && r.score_with_summary <= r.score_no_retrieval) r.kept = false;
    outcomes[i].record = std::move(r);
  });
  return collect(outcomes, stats);
}

std::size_t oracle_abstractive_index(std::span<const std::string> summaries,
                                     const scoring::Critic& critic, const scoring::Example& ex,
                                     const corpus::Tokenizer& tok) {
  bool has_empty = false;
  for (const auto& s : summaries) has_empty = has_empty || s.empty();
  if (!has_empty) throw Error("oracle_abstractive requires the empty summary among the options");
  std::size_t best = 0;
  double best_score = 0.0;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const double v = critic.score(ex, summaries[i]);
    const std::size_t len = tok.count(summaries[i]);
    if (i == 0 || v > best_score || (v == best_score && len < best_len)) {
      best = i;
      best_score = v;
      best_len = len;
    }
  }
  return best;
}

std::string oracle_abstractive(std::span<const std::string> summaries,
                               const scoring::Critic& critic, const scoring::Example& ex,
                               const corpus::Tokenizer& tok) {
  return summaries[oracle_abstractive_index(summaries, critic, ex, tok)];
}

}  // namespace recomp::abstractive
