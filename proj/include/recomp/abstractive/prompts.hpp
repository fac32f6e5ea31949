// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace recomp::abstractive {

enum class Task { lm, qa };

std::string_view task_name(Task t);
Task parse_task(std::string_view s);

/// A summarization prompt with exactly one {query} and one {docs} slot.
class PromptTemplate {
 public:
  /// Throws Error when either slot is missing or repeated.
  PromptTemplate(std::string id, std::string text, Task task);

  const std::string& id() const noexcept { return id_; }
  const std::string& text() const noexcept { return text_; }
  Task task() const noexcept { return task_; }

  /// Single-pass substitution: slot markers appearing inside `query` or
  /// `docs` are left untouched.
  std::string render(std::string_view query, std::string_view docs) const;

 private:
  std::string id_;
  std::string text_;
  Task task_;
};

/// Shipped defaults: four Wikitext prompts and the NQ/TQA/HotpotQA prompts.
const std::vector<PromptTemplate>& default_prompts();

/// Parses a prompts asset. Each table is [task.id] with a `template` string:
///
///   [qa.nq]
///   template = "... {query} ... {docs} ..."
std::vector<PromptTemplate> parse_prompts(std::string_view text, const std::string& source = "<prompts>");
std::vector<PromptTemplate> load_prompts(const std::string& path);

/// Prompts for one task, in file order.
std::vector<PromptTemplate> prompts_for(std::span<const PromptTemplate> all, Task task);
const PromptTemplate& find_prompt(std::span<const PromptTemplate> all, Task task, std::string_view id);

}  // namespace recomp::abstractive
