// SPDX-License-Identifier: Apache-2.0
#include "recomp/corpus/corpus.hpp"

#include <cctype>
#include <unordered_set>

#include "recomp/common/error.hpp"
#include "recomp/common/io.hpp"
#include "recomp/corpus/tokenizer.hpp"

namespace recomp::corpus {

std::vector<Article> ingest_articles(const std::filesystem::path& path) {
  std::vector<Article> out;
  std::unordered_set<std::string> seen;
  read_jsonl(path, [&](std::size_t line, const json& obj) {
    Article a;
    try {
      a.id = obj.at("id").get<std::string>();
      a.title = obj.value("title", std::string());
      a.text = obj.at("text").get<std::string>();
    } catch (const json::exception& e) {
      throw ParseError(path.string(), line, std::string("bad article record: ") + e.what());
    }
    if (!seen.insert(a.id).second) {
      throw ParseError(path.string(), line, "duplicate article id '" + a.id + "'");
    }
    out.push_back(std::move(a));
  });
  return out;
}

std::vector<Document> chunk_article(const Article& article, std::size_t chunk_words) {
  if (chunk_words == 0) throw Error("chunk_words must be >= 1");
  const auto words = split_words(article.text);
  std::vector<Document> docs;
  for (std::size_t start = 0, k = 0; start < words.size(); start += chunk_words, ++k) {
    const std::size_t end = std::min(words.size(), start + chunk_words);
    Document d;
    d.doc_id = article.id + "_" + std::to_string(k);
    d.article_id = article.id;
    d.title = article.title;
    d.span = {start, end};
    for (std::size_t i = start; i < end; ++i) {
      if (i > start) d.text += ' ';
      d.text += words[i];
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<Document> chunk_articles(std::span<const Article> articles, std::size_t chunk_words) {
  std::vector<Document> out;
  for (const auto& a : articles) {
    auto docs = chunk_article(a, chunk_words);
    out.insert(out.end(), std::make_move_iterator(docs.begin()),
               std::make_move_iterator(docs.end()));
  }
  return out;
}

namespace {

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
bool is_opener(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

std::string_view strip_closers(std::string_view w) {
  while (!w.empty() && is_closer(w.back())) w.remove_suffix(1);
  return w;
}

std::string_view strip_openers(std::string_view w) {
  while (!w.empty() && is_opener(w.front())) w.remove_prefix(1);
  return w;
}

bool ends_sentence(std::string_view word, const WordList& abbreviations) {
  const auto core = strip_closers(word);
  if (core.empty()) return false;
  const char last = core.back();
  if (last != '.' && last != '!' && last != '?') return false;
  if (last == '.' && abbreviations.contains(strip_openers(core))) return false;
  return true;
}

bool starts_capital(std::string_view word) {
  const auto core = strip_openers(word);
  return !core.empty() && std::isupper(static_cast<unsigned char>(core.front()));
}

}  // namespace

std::vector<std::string_view> split_sentence_spans(std::string_view text,
                                                   const WordList& abbreviations) {
  const auto words = split_words(text);
  std::vector<std::string_view> out;
  if (words.empty()) return out;
  const char* begin = words.front().data();
  for (std::size_t i = 0; i < words.size(); ++i) {
    const bool last = i + 1 == words.size();
    if (last || (ends_sentence(words[i], abbreviations) && starts_capital(words[i + 1]))) {
      const char* end = words[i].data() + words[i].size();
      out.emplace_back(begin, static_cast<std::size_t>(end - begin));
      if (!last) begin = words[i + 1].data();
    }
  }
  return out;
}

std::vector<Sentence> split_sentences(const Document& doc, const WordList& abbreviations) {
  std::vector<Sentence> out;
  std::size_t idx = 0;
  for (auto span : split_sentence_spans(doc.text, abbreviations)) {
    Sentence s;
    s.sentence_id = doc.doc_id + ":" + std::to_string(idx);
    s.doc_id = doc.doc_id;
    s.title = doc.title;
    s.text = std::string(span);
    s.index_in_doc = idx++;
    out.push_back(std::move(s));
  }
  return out;
}

std::string decontextualize(const Sentence& sentence) {
  if (sentence.title.empty()) return sentence.text;
  return sentence.title + ": " + sentence.text;
}

std::vector<std::string> decontextualized_pool(std::span<const Document* const> docs,
                                               const WordList& abbreviations) {
  std::vector<std::string> out;
  for (const Document* d : docs) {
    for (const auto& s : split_sentences(*d, abbreviations)) out.push_back(decontextualize(s));
  }
  return out;
}

}  // namespace recomp::corpus
