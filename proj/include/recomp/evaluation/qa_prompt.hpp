// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "recomp/retrieval/bm25.hpp"

namespace recomp::evaluation {

inline constexpr std::size_t kDemoCount = 5;

struct Demo {
  std::string question;
  std::string answer;
};

/// Few-shot QA prompt:
///
///   {demo question}\nAnswer: {demo answer}\n\n     (x5)
///   {evidence}\n\n                                  (omitted when empty)
///   {question}\nAnswer:
///
/// Throws Error unless exactly five demos are given.
std::string build_qa_prompt(std::span<const Demo> demos, std::string_view evidence,
                            std::string_view question);

/// "{title}: {text}" for one retrieved document.
std::string render_document(const corpus::Document& doc);

/// Uncompressed evidence: documents in ascending retrieval score, so the best
/// document sits closest to the question. One document per line.
std::string evidence_ascending(std::span<const retrieval::Hit> hits);

/// Documents in descending retrieval score, one per line (summarization prompts).
std::string documents_descending(std::span<const retrieval::Hit> hits);

/// Samples kDemoCount demos without replacement with a fixed seed.
std::vector<Demo> sample_demos(std::span<const Demo> pool, std::uint64_t seed);

}  // namespace recomp::evaluation
