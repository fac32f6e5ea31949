// SPDX-License-Identifier: Apache-2.0
#include "recomp/evaluation/datasets.hpp"

#include <algorithm>

#include "recomp/common/error.hpp"
#include "recomp/corpus/tokenizer.hpp"

namespace recomp::evaluation {
namespace {

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\n' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::vector<StreamDoc> load_streams(const std::filesystem::path& path) {
  std::vector<StreamDoc> out;
  read_jsonl(path, [&](std::size_t, const json& j) {
    StreamDoc d;
    d.id = j.at("id").get<std::string>();
    d.article_id = j.value("article_id", std::string());
    d.text = j.at("text").get<std::string>();
    out.push_back(std::move(d));
  });
  return out;
}

void LmEvalConfig::validate() const {
  if (stride < 1) throw ConfigError("eval.stride", "must be >= 1");
  if (query_window < stride) throw ConfigError("eval.query_window", "must be >= stride");
  if (context_window < stride) throw ConfigError("eval.context_window", "must be >= stride");
  if (top_k < 1) throw ConfigError("retrieval.top_k", "must be >= 1");
}

std::vector<scoring::Example> segment_stream(const StreamDoc& doc, const LmEvalConfig& cfg) {
  cfg.validate();
  const std::string_view text = doc.text;
  std::vector<std::size_t> starts;
  for (auto t : corpus::basic_tokens(text)) {
    if (!corpus::is_punct_token(t)) starts.push_back(static_cast<std::size_t>(t.data() - text.data()));
  }
  const std::size_t n = starts.size();
  auto at = [&](std::size_t w) { return w < n ? starts[w] : text.size(); };
  auto slice = [&](std::size_t from, std::size_t to) {
    return std::string(trim_right(text.substr(at(from), at(to) - at(from))));
  };
  std::vector<scoring::Example> out;
  for (std::size_t s = cfg.query_window, k = 0; s < n; s += cfg.stride, ++k) {
    scoring::Example ex;
    ex.id = doc.id + ":" + std::to_string(k);
    ex.query = slice(s - cfg.query_window, s);
    ex.input = slice(s - std::min(s, cfg.context_window), s);
    ex.source_article = doc.article_id;
    ex.target = scoring::Target::text(slice(s, std::min(n, s + cfg.stride)));
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<scoring::Example> segment_streams(std::span<const StreamDoc> docs, const LmEvalConfig& cfg) {
  std::vector<scoring::Example> out;
  for (const auto& d : docs) {
    auto part = segment_stream(d, cfg);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<scoring::Example> load_qa_examples(const std::filesystem::path& path) {
  std::vector<scoring::Example> out;
  read_jsonl(path, [&](std::size_t line, const json& j) {
    scoring::Example ex;
    ex.id = j.at("id").get<std::string>();
    ex.query = j.at("question").get<std::string>();
    ex.input = ex.query;
    ex.source_article = j.value("article_id", std::string());
    auto answers = j.at("answers").get<std::vector<std::string>>();
    if (answers.empty()) throw ParseError(path.string(), line, "'answers' must be non-empty");
    ex.target = scoring::Target::gold(std::move(answers));
    out.push_back(std::move(ex));
  });
  return out;
}

std::vector<Demo> demos_from_examples(std::span<const scoring::Example> examples) {
  std::vector<Demo> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    out.push_back({ex.query, ex.target.answers.empty() ? std::string() : ex.target.answers.front()});
  }
  return out;
}

std::vector<retrieval::Hit> Retriever::retrieve(const scoring::Example& ex) const {
  if (index == nullptr) throw Error("retriever has no index");
  const auto exclusion = exclude_source_article && !ex.source_article.empty()
                             ? retrieval::Exclusion::article(ex.source_article)
                             : retrieval::Exclusion::none();
  return index->search(ex.query, top_k, exclusion).hits;
}

}  // namespace recomp::evaluation
