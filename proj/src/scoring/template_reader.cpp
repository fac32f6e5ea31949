// SPDX-License-Identifier: Apache-2.0
#include "recomp/scoring/template_reader.hpp"

#include <unordered_set>
#include <vector>

#include "recomp/corpus/tokenizer.hpp"

namespace recomp::scoring {
namespace {

constexpr std::string_view kAnswerCue = "Answer:";

bool is_demo_block(std::string_view block) {
  const auto nl = block.find('\n');
  if (nl == std::string_view::npos) return false;
  const auto second = block.substr(nl + 1);
  return second.starts_with("Answer: ") && second.find('\n') == std::string_view::npos;
}

std::vector<std::string_view> split_blocks(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find("\n\n", pos);
    const auto end = next == std::string_view::npos ? text.size() : next;
    if (end > pos) out.push_back(text.substr(pos, end - pos));
    if (next == std::string_view::npos) break;
    pos = next + 2;
  }
  return out;
}

}  // namespace

ParsedQaPrompt parse_qa_prompt(std::string_view prompt) {
  ParsedQaPrompt out;
  while (!prompt.empty() && (prompt.back() == ' ' || prompt.back() == '\n')) prompt.remove_suffix(1);
  if (prompt.ends_with(kAnswerCue)) prompt.remove_suffix(kAnswerCue.size());
  while (!prompt.empty() && prompt.back() == '\n') prompt.remove_suffix(1);
  auto blocks = split_blocks(prompt);
  if (blocks.empty()) return out;
  out.question = std::string(blocks.back());
  blocks.pop_back();
  for (auto b : blocks) {
    if (is_demo_block(b)) continue;
    if (!out.evidence.empty()) out.evidence += "\n\n";
    out.evidence += b;
  }
  return out;
}

std::string TemplateReader::answer(std::string_view question, std::string_view evidence,
                                   std::size_t max_tokens) const {
  std::unordered_set<std::string> qwords;
  for (auto& t : corpus::normalized_terms(question)) qwords.insert(std::move(t));
  const auto tokens = corpus::basic_tokens(evidence);

  std::size_t best_end = 0;
  std::size_t best_weight = 0;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (corpus::is_punct_token(tokens[i]) || !qwords.contains(corpus::to_lower(tokens[i]))) {
      ++i;
      continue;
    }
    std::unordered_set<std::string> content;
    std::size_t j = i;
    for (; j < tokens.size(); ++j) {
      if (corpus::is_punct_token(tokens[j])) break;
      auto low = corpus::to_lower(tokens[j]);
      if (!qwords.contains(low)) break;
      if (!stopwords_->contains(low)) content.insert(std::move(low));
    }
    if (content.size() > best_weight) {
      best_weight = content.size();
      best_end = j;
    }
    i = j;
  }
  if (best_weight == 0) return {};

  std::size_t k = best_end;
  if (k < tokens.size()) {
    const auto low = corpus::to_lower(tokens[k]);
    if (low == "is" || low == "was" || low == "are" || low == "were") ++k;
  }
  std::string out;
  for (std::size_t n = 0; k < tokens.size() && n < max_tokens; ++k, ++n) {
    if (corpus::is_punct_token(tokens[k])) break;
    if (!out.empty()) out += ' ';
    out += tokens[k];
  }
  return out;
}

std::string TemplateReader::decode(std::string_view prompt, std::size_t max_tokens) const {
  const auto parsed = parse_qa_prompt(prompt);
  return answer(parsed.question, parsed.evidence, max_tokens);
}

}  // namespace recomp::scoring
