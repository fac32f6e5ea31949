// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace recomp::scoring {

/// What the end task must produce: a continuation (language modeling) or one
/// of several gold answers (QA).
struct Target {
  enum class Kind { continuation, answers };
  Kind kind = Kind::continuation;
  std::string continuation;
  std::vector<std::string> answers;

  static Target text(std::string s) { return {Kind::continuation, std::move(s), {}}; }
  static Target gold(std::vector<std::string> golds) { return {Kind::answers, {}, std::move(golds)}; }
};

struct Example {
  std::string id;
  /// Retrieval and ranking query (LM: the preceding query window; QA: the question).
  std::string query;
  /// Text placed after the summary when scoring (LM: the context window; QA: the question).
  std::string input;
  /// Source article for contamination exclusion; empty when unknown.
  std::string source_article;
  Target target;
};

}  // namespace recomp::scoring
