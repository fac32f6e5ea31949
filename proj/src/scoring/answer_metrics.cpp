// SPDX-License-Identifier: Apache-2.0
#include "recomp/scoring/answer_metrics.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <vector>

#include "recomp/common/error.hpp"
#include "recomp/corpus/tokenizer.hpp"

namespace recomp::scoring {
namespace {

std::vector<std::string> answer_tokens(std::string_view s) {
  const std::string norm = normalize_answer(s);
  std::vector<std::string> out;
  for (auto w : corpus::split_words(norm)) out.emplace_back(w);
  return out;
}

double pair_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  if (pred.empty() || gold.empty()) return pred.empty() && gold.empty() ? 1.0 : 0.0;
  std::unordered_map<std::string, int> counts;
  for (const auto& g : gold) ++counts[g];
  int common = 0;
  for (const auto& p : pred) {
    auto it = counts.find(p);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / static_cast<double>(pred.size());
  const double recall = static_cast<double>(common) / static_cast<double>(gold.size());
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

std::string normalize_answer(std::string_view s) {
  std::string lowered;
  lowered.reserve(s.size());
  for (char c : s) {
    if (corpus::is_punct(c)) continue;
    lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  std::string out;
  for (auto w : corpus::split_words(lowered)) {
    if (w == "a" || w == "an" || w == "the") continue;
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

int em_score(std::string_view pred, std::span<const std::string> golds) {
  if (golds.empty()) throw Error("em_score requires at least one gold answer");
  const auto p = normalize_answer(pred);
  return std::any_of(golds.begin(), golds.end(),
                     [&](const std::string& g) { return normalize_answer(g) == p; })
             ? 1
             : 0;
}

double f1_score(std::string_view pred, std::span<const std::string> golds) {
  if (golds.empty()) throw Error("f1_score requires at least one gold answer");
  const auto p = answer_tokens(pred);
  double best = 0.0;
  for (const auto& g : golds) best = std::max(best, pair_f1(p, answer_tokens(g)));
  return best;
}

bool contains_normalized(std::string_view haystack, std::string_view needle) {
  const auto n = normalize_answer(needle);
  if (n.empty()) return false;
  const auto h = " " + normalize_answer(haystack) + " ";
  return h.find(" " + n + " ") != std::string::npos;
}

}  // namespace recomp::scoring
