// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "recomp/corpus/lexicon.hpp"

namespace recomp::scoring {

/// Deterministic extractive QA reader standing in for greedy decoding.
///
/// Finds the evidence run of consecutive non-punctuation tokens that all occur
/// in the question and covers the most distinct question content words
/// (stopwords excluded); ties go to the earliest run. The answer is the
/// evidence tokens right after that run, minus one leading copula
/// (is/was/are/were), up to the next punctuation mark or `max_tokens`.
/// No run or nothing after it yields "".
class TemplateReader {
 public:
  explicit TemplateReader(const corpus::WordList& stopwords = corpus::default_stopwords())
      : stopwords_(&stopwords) {}

  std::string answer(std::string_view question, std::string_view evidence,
                     std::size_t max_tokens) const;

  /// Splits a prompt rendered by build_qa_prompt into question and evidence
  /// and answers it; demonstrations are ignored.
  std::string decode(std::string_view prompt, std::size_t max_tokens) const;

 private:
  const corpus::WordList* stopwords_;
};

struct ParsedQaPrompt {
  std::string question;
  std::string evidence;
};

/// Inverse of build_qa_prompt's layout.
ParsedQaPrompt parse_qa_prompt(std::string_view prompt);

}  // namespace recomp::scoring
