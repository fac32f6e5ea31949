// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <string>

#include "recomp/abstractive/prompts.hpp"
#include "recomp/scoring/example.hpp"
#include "recomp/scoring/scorer.hpp"

namespace recomp::abstractive {

struct TeacherRequest {
  const PromptTemplate* prompt = nullptr;
  std::size_t prompt_index = 0;
  /// The prompt with query and docs substituted.
  std::string rendered;
  const scoring::Example* example = nullptr;
  /// Rendered documents in descending retrieval score.
  std::span<const std::string> docs;
};

/// Produces a candidate summary for one prompt. Throws on failure; callers
/// skip the prompt.
class Teacher {
 public:
  virtual ~Teacher() = default;
  virtual std::string summarize(const TeacherRequest& req) const = 0;
  virtual std::string name() const = 0;
};

/// Sampling parameters for teacher generation: temperature 0.7, top_p 1.
scoring::GenerateParams teacher_params(std::size_t max_tokens = 128);

/// Sends the rendered prompt to a generation endpoint.
class GenerationTeacher final : public Teacher {
 public:
  explicit GenerationTeacher(const scoring::Scorer& generator,
                             scoring::GenerateParams params = teacher_params())
      : generator_(&generator), params_(std::move(params)) {}
  std::string summarize(const TeacherRequest& req) const override;
  std::string name() const override { return "generate:" + generator_->name(); }

 private:
  const scoring::Scorer* generator_;
  scoring::GenerateParams params_;
};

class ScriptedTeacher final : public Teacher {
 public:
  using Fn = std::function<std::string(const TeacherRequest&)>;
  explicit ScriptedTeacher(Fn fn) : fn_(std::move(fn)) {}
  std::string summarize(const TeacherRequest& req) const override { return fn_(req); }
  std::string name() const override { return "scripted"; }

 private:
  Fn fn_;
};

/// Offline stand-in for a hosted teacher: returns the document sentences with
/// the highest BM25 score against the example query, in document order.
/// Prompts whose id ends in "next-one" take one sentence, "summarize" three,
/// everything else two.
class HeuristicTeacher final : public Teacher {
 public:
  std::string summarize(const TeacherRequest& req) const override;
  std::string name() const override { return "heuristic"; }
  static std::size_t sentence_budget(std::string_view prompt_id);
};

}  // namespace recomp::abstractive
