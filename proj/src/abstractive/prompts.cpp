// SPDX-License-Identifier: Apache-2.0
#include "recomp/abstractive/prompts.hpp"

#include "recomp/common/error.hpp"
#include "recomp/common/io.hpp"
#include "recomp/common/toml_lite.hpp"

namespace recomp::abstractive {
namespace {

constexpr std::string_view kQuerySlot = "{query}";
constexpr std::string_view kDocsSlot = "{docs}";

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

std::string_view task_name(Task t) { return t == Task::lm ? "lm" : "qa"; }

Task parse_task(std::string_view s) {
  if (s == "lm") return Task::lm;
  if (s == "qa") return Task::qa;
  throw Error("unknown task '" + std::string(s) + "' (expected lm or qa)");
}

PromptTemplate::PromptTemplate(std::string id, std::string text, Task task)
    : id_(std::move(id)), text_(std::move(text)), task_(task) {
  if (count_occurrences(text_, kQuerySlot) != 1 || count_occurrences(text_, kDocsSlot) != 1) {
    throw Error("prompt '" + id_ + "' must contain {query} and {docs} exactly once");
  }
}

std::string PromptTemplate::render(std::string_view query, std::string_view docs) const {
  const std::string_view t = text_;
  const auto q = t.find(kQuerySlot);
  const auto d = t.find(kDocsSlot);
  const bool query_first = q < d;
  const auto first = query_first ? q : d;
  const auto second = query_first ? d : q;
  const auto first_len = query_first ? kQuerySlot.size() : kDocsSlot.size();
  const auto second_len = query_first ? kDocsSlot.size() : kQuerySlot.size();
  std::string out;
  out.reserve(t.size() + query.size() + docs.size());
  out.append(t.substr(0, first));
  out.append(query_first ? query : docs);
  out.append(t.substr(first + first_len, second - first - first_len));
  out.append(query_first ? docs : query);
  out.append(t.substr(second + second_len));
  return out;
}

const std::vector<PromptTemplate>& default_prompts() {
  static const std::vector<PromptTemplate> prompts = {
      {"wikitext-next-two",
       "Generate the next two sentences of the given query using the information from the "
       "provided documents. \nSource Documents: {docs} \nQuery: {query} \n",
       Task::lm},
      {"wikitext-select",
       "Select sentences from the retrieved docs that are most likely be in the next "
       "sentence.\nSource Documents: {docs} \nQuery: {query}\n",
       Task::lm},
      {"wikitext-next-one",
       "Generate the next one sentence of the given query using the information from the "
       "provided documents\nSource Documents: {docs} \nQuery: {query} \n",
       Task::lm},
      {"wikitext-summarize",
       "Summarize the information from the provided documents\nSource Documents: {docs} "
       "\nQuery: {query}\n",
       Task::lm},
      {"nq",
       "Compress the information in the retrieved documents into a 2-sentence summary that "
       "could be used to answer the question: Question: {query} Retrieved documents: {docs} "
       "Compressed documents:",
       Task::qa},
      {"tqa",
       "Compress the information in the retrieved documents into a 2-sentence summary that "
       "could be used to answer the question: Question: {query} Retrieved documents: {docs} "
       "Compressed documents:",
       Task::qa},
      {"hotpotqa",
       "Source documents: {docs} Question: {query} Generate a reasoning chain to answer the "
       "question:",
       Task::qa},
  };
  return prompts;
}

std::vector<PromptTemplate> parse_prompts(std::string_view text, const std::string& source) {
  std::vector<PromptTemplate> out;
  for (const auto& [key, value] : toml::parse(text, source)) {
    const auto first_dot = key.find('.');
    const auto last_dot = key.rfind('.');
    if (first_dot == std::string::npos || first_dot == last_dot ||
        key.substr(last_dot + 1) != "template") {
      throw ParseError(source, value.line, "expected [task.id] tables with a 'template' key, got '" + key + "'");
    }
    const auto* s = std::get_if<std::string>(&value.data);
    if (s == nullptr) throw ParseError(source, value.line, "'" + key + "' must be a string");
    Task task;
    try {
      task = parse_task(key.substr(0, first_dot));
    } catch (const Error& e) {
      throw ParseError(source, value.line, e.what());
    }
    const auto id = key.substr(first_dot + 1, last_dot - first_dot - 1);
    for (const auto& p : out) {
      if (p.task() == task && p.id() == id) throw ParseError(source, value.line, "duplicate prompt '" + id + "'");
    }
    try {
      out.emplace_back(id, *s, task);
    } catch (const Error& e) {
      throw ParseError(source, value.line, e.what());
    }
  }
  return out;
}

std::vector<PromptTemplate> load_prompts(const std::string& path) {
  return parse_prompts(read_file(path), path);
}

std::vector<PromptTemplate> prompts_for(std::span<const PromptTemplate> all, Task task) {
  std::vector<PromptTemplate> out;
  for (const auto& p : all) {
    if (p.task() == task) out.push_back(p);
  }
  return out;
}

const PromptTemplate& find_prompt(std::span<const PromptTemplate> all, Task task, std::string_view id) {
  for (const auto& p : all) {
    if (p.task() == task && p.id() == id) return p;
  }
  throw Error("no " + std::string(task_name(task)) + " prompt with id '" + std::string(id) + "'");
}

}  // namespace recomp::abstractive
