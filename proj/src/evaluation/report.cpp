// SPDX-License-Identifier: Apache-2.0
#include "recomp/evaluation/report.hpp"

#include <cmath>
#include <cstdio>

#include "recomp/common/hash.hpp"
#include "recomp/scoring/answer_metrics.hpp"

namespace recomp::evaluation {
namespace {

template <typename Lengths>
TokenStats stats_from(const Lengths& lengths) {
  TokenStats s;
  std::size_t sum = 0;
  std::size_t source = 0;
  std::size_t empty = 0;
  for (const auto& [tokens, src] : lengths) {
    ++s.count;
    sum += tokens;
    source += src;
    if (tokens == 0) ++empty;
    const std::size_t b = tokens / kHistogramBucket;
    if (s.histogram.size() <= b) s.histogram.resize(b + 1, 0);
    ++s.histogram[b];
  }
  if (s.count > 0) {
    s.mean_tokens = static_cast<double>(sum) / static_cast<double>(s.count);
    s.empty_fraction = static_cast<double>(empty) / static_cast<double>(s.count);
  }
  s.ratio = source == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(source);
  return s;
}

std::optional<double> pct(std::size_t hits, std::size_t total) {
  if (total == 0) return std::nullopt;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(total);
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v, 2) : "n/a"; }

}  // namespace

std::optional<double> EvalRow::ppl() const {
  if (target_tokens == 0) return std::nullopt;
  return std::exp(-logprob / static_cast<double>(target_tokens));
}

TokenStats token_stats(std::span<const CompressionResult> results) {
  std::vector<std::pair<std::size_t, std::size_t>> l;
  for (const auto& r : results) l.emplace_back(r.tokens, r.source_tokens);
  return stats_from(l);
}

TokenStats token_stats(std::span<const EvalRow> rows) {
  std::vector<std::pair<std::size_t, std::size_t>> l;
  for (const auto& r : rows) {
    if (!r.failed) l.emplace_back(r.summary_tokens, r.source_tokens);
  }
  return stats_from(l);
}

CopyStats copy_analysis(std::span<const EvalRow> rows) {
  CopyStats s;
  std::size_t gold_present = 0;
  std::size_t copied_present = 0;
  std::size_t gold_absent = 0;
  std::size_t copied_absent = 0;
  for (const auto& r : rows) {
    if (r.failed) continue;
    ++s.rows;
    bool gold_in = false;
    for (const auto& g : r.golds) gold_in = gold_in || scoring::contains_normalized(r.summary, g);
    const bool copied = !scoring::normalize_answer(r.prediction).empty() &&
                        scoring::contains_normalized(r.summary, r.prediction);
    if (gold_in) {
      ++gold_present;
      copied_present += copied ? 1 : 0;
    } else {
      ++gold_absent;
      copied_absent += copied ? 1 : 0;
    }
  }
  s.pct_gold_in_evidence = pct(gold_present, s.rows);
  s.pct_pred_in_evidence_given_gold_present = pct(copied_present, gold_present);
  s.pct_pred_in_evidence_given_gold_absent = pct(copied_absent, gold_absent);
  return s;
}

bool failure_budget_exceeded(std::size_t failures, std::size_t examples) {
  return failures * 100 > examples;
}

void aggregate(EvalReport& report) {
  report.failures = 0;
  report.total_logprob = 0.0;
  report.total_target_tokens = 0;
  double em_sum = 0.0;
  double f1_sum = 0.0;
  std::size_t ok = 0;
  for (const auto& r : report.rows) {
    if (r.failed) {
      ++report.failures;
      continue;
    }
    ++ok;
    report.total_logprob += r.logprob;
    report.total_target_tokens += r.target_tokens;
    em_sum += r.em;
    f1_sum += r.f1;
  }
  report.ppl = report.total_target_tokens == 0
                   ? 0.0
                   : std::exp(-report.total_logprob / static_cast<double>(report.total_target_tokens));
  report.em = ok == 0 ? 0.0 : em_sum / static_cast<double>(ok);
  report.f1 = ok == 0 ? 0.0 : f1_sum / static_cast<double>(ok);
  report.tokens = token_stats(report.rows);
  report.budget_exceeded = failure_budget_exceeded(report.failures, report.rows.size());
}

std::string config_fingerprint(const json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
  return buf;
}

json to_json(const TokenStats& s) {
  return {{"count", s.count},
          {"mean_tokens", s.mean_tokens},
          {"ratio", s.ratio},
          {"empty_fraction", s.empty_fraction},
          {"histogram_bucket", kHistogramBucket},
          {"histogram", s.histogram}};
}

json to_json(const CopyStats& s) {
  return {{"rows", s.rows},
          {"pct_gold_in_evidence", opt(s.pct_gold_in_evidence)},
          {"pct_pred_in_evidence_given_gold_present", opt(s.pct_pred_in_evidence_given_gold_present)},
          {"pct_pred_in_evidence_given_gold_absent", opt(s.pct_pred_in_evidence_given_gold_absent)}};
}

json to_json(const EvalReport& r) {
  json j;
  j["task"] = r.task == EvalTask::lm ? "lm" : "qa";
  j["policy"] = r.policy;
  j["config"] = r.config;
  j["fingerprint"] = r.fingerprint;
  json agg{{"examples", r.rows.size()},
           {"failures", r.failures},
           {"failure_budget_exceeded", r.budget_exceeded},
           {"tokens", to_json(r.tokens)}};
  if (r.task == EvalTask::lm) {
    agg["ppl"] = r.ppl;
    agg["total_logprob"] = r.total_logprob;
    agg["total_target_tokens"] = r.total_target_tokens;
  } else {
    agg["em"] = r.em;
    agg["f1"] = r.f1;
    agg["copy"] = to_json(copy_analysis(r.rows));
  }
  j["aggregate"] = std::move(agg);
  json rows = json::array();
  for (const auto& row : r.rows) {
    json x{{"example_id", row.example_id},
           {"failed", row.failed},
           {"summary", row.summary},
           {"summary_tokens", row.summary_tokens},
           {"source_tokens", row.source_tokens}};
    if (row.failed) x["error"] = row.error;
    if (r.task == EvalTask::lm) {
      x["logprob"] = row.logprob;
      x["target_tokens"] = row.target_tokens;
      x["ppl"] = opt(row.ppl());
    } else {
      x["prediction"] = row.prediction;
      x["golds"] = row.golds;
      x["em"] = row.em;
      x["f1"] = row.f1;
    }
    rows.push_back(std::move(x));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string to_markdown(const EvalReport& r) {
  std::string md = "# Evaluation report\n\n";
  md += "- task: " + std::string(r.task == EvalTask::lm ? "lm" : "qa") + "\n";
  md += "- policy: " + r.policy + "\n";
  md += "- examples: " + std::to_string(r.rows.size()) + " (failures: " + std::to_string(r.failures) + ")\n";
  md += "- fingerprint: " + r.fingerprint + "\n\n";
  if (r.task == EvalTask::lm) {
    md += "| Policy | # tokens | Ratio | PPL |\n|---|---:|---:|---:|\n";
    md += "| " + r.policy + " | " + fmt(r.tokens.mean_tokens, 2) + " | " + fmt(r.tokens.ratio, 4) +
          " | " + fmt(r.ppl, 4) + " |\n";
  } else {
    md += "| Policy | # tokens | Ratio | EM | F1 |\n|---|---:|---:|---:|---:|\n";
    md += "| " + r.policy + " | " + fmt(r.tokens.mean_tokens, 2) + " | " + fmt(r.tokens.ratio, 4) +
          " | " + fmt(100.0 * r.em, 2) + " | " + fmt(100.0 * r.f1, 2) + " |\n";
    const auto c = copy_analysis(r.rows);
    md += "\n| Gold in evidence (%) | Copied, gold present (%) | Copied, gold absent (%) |\n|---:|---:|---:|\n";
    md += "| " + fmt_opt(c.pct_gold_in_evidence) + " | " + fmt_opt(c.pct_pred_in_evidence_given_gold_present) +
          " | " + fmt_opt(c.pct_pred_in_evidence_given_gold_absent) + " |\n";
  }
  md += "\nEmpty summaries: " + fmt(100.0 * r.tokens.empty_fraction, 2) + "%\n";
  return md;
}

std::string to_csv(const EvalReport& r) {
  std::string out = "example_id,failed,summary_tokens,source_tokens,";
  out += r.task == EvalTask::lm ? "logprob,target_tokens,ppl\n" : "em,f1,prediction\n";
  for (const auto& row : r.rows) {
    out += csv_field(row.example_id) + "," + (row.failed ? "1" : "0") + "," +
           std::to_string(row.summary_tokens) + "," + std::to_string(row.source_tokens) + ",";
    if (r.task == EvalTask::lm) {
      const auto p = row.ppl();
      out += fmt(row.logprob, 10) + "," + std::to_string(row.target_tokens) + "," + (p ? fmt(*p, 10) : "") + "\n";
    } else {
      out += std::to_string(row.em) + "," + fmt(row.f1, 10) + "," + csv_field(row.prediction) + "\n";
    }
  }
  return out;
}

void write_report(const EvalReport& r, const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / (stem + ".json"), to_json(r).dump(2) + "\n");
  write_file_atomic(dir / (stem + ".md"), to_markdown(r));
  write_file_atomic(dir / (stem + ".csv"), to_csv(r));
}

}  // namespace recomp::evaluation
