// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recomp/common/io.hpp"
#include "recomp/compression.hpp"

namespace recomp::evaluation {

enum class EvalTask { lm, qa };

struct EvalRow {
  std::string example_id;
  bool failed = false;
  std::string error;
  std::string summary;
  std::size_t summary_tokens = 0;
  std::size_t source_tokens = 0;
  // Language modeling.
  double logprob = 0.0;
  std::size_t target_tokens = 0;
  // QA.
  std::string prediction;
  std::vector<std::string> golds;
  int em = 0;
  double f1 = 0.0;

  /// exp(-logprob / target_tokens); 0 tokens gives nullopt.
  std::optional<double> ppl() const;
};

struct TokenStats {
  std::size_t count = 0;
  double mean_tokens = 0.0;
  double ratio = 0.0;  // Σ summary tokens / Σ source tokens, 0 for an empty source
  double empty_fraction = 0.0;
  std::vector<std::size_t> histogram;  // bucket i counts lengths in [8i, 8i + 8)
};

inline constexpr std::size_t kHistogramBucket = 8;

TokenStats token_stats(std::span<const CompressionResult> results);
TokenStats token_stats(std::span<const EvalRow> rows);

/// Percentages in [0, 100]; a subset with no rows is nullopt.
struct CopyStats {
  std::size_t rows = 0;
  std::optional<double> pct_gold_in_evidence;
  std::optional<double> pct_pred_in_evidence_given_gold_present;
  std::optional<double> pct_pred_in_evidence_given_gold_absent;
};

/// Membership is normalized-substring match; an empty prediction never
/// counts as copied. Failed rows are ignored.
CopyStats copy_analysis(std::span<const EvalRow> rows);

struct EvalReport {
  EvalTask task = EvalTask::lm;
  std::string policy;
  std::vector<EvalRow> rows;
  std::size_t failures = 0;
  bool budget_exceeded = false;
  double total_logprob = 0.0;
  std::size_t total_target_tokens = 0;
  double ppl = 0.0;
  double em = 0.0;
  double f1 = 0.0;
  TokenStats tokens;
  json config = json::object();
  std::string fingerprint;
};

/// More than 1% of examples failed.
bool failure_budget_exceeded(std::size_t failures, std::size_t examples);

/// Recomputes every aggregate from the rows. Failed rows are excluded from
/// metrics and counted in `failures`.
void aggregate(EvalReport& report);

/// 16 hex digits of FNV-1a over the canonical JSON dump.
std::string config_fingerprint(const json& config);

json to_json(const EvalReport& r);
std::string to_markdown(const EvalReport& r);
std::string to_csv(const EvalReport& r);
json to_json(const TokenStats& s);
json to_json(const CopyStats& s);

/// Writes {stem}.json, {stem}.md and {stem}.csv atomically.
void write_report(const EvalReport& r, const std::filesystem::path& dir, const std::string& stem = "report");

}  // namespace recomp::evaluation
