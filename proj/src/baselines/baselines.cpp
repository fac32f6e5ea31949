// SPDX-License-Identifier: Apache-2.0
#include "recomp/baselines/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "recomp/common/error.hpp"
#include "recomp/common/hash.hpp"
#include "recomp/common/io.hpp"
#include "recomp/common/parallel.hpp"
#include "recomp/common/ranking.hpp"
#include "recomp/common/rng.hpp"
#include "recomp/corpus/corpus.hpp"
#include "recomp/evaluation/qa_prompt.hpp"
#include "recomp/extractive/compressor.hpp"
#include "recomp/retrieval/bm25.hpp"

namespace recomp::baselines {
namespace {

std::string join_unique(const std::vector<std::string>& items) {
  std::unordered_set<std::string> seen;
  std::string out;
  for (const auto& it : items) {
    if (!seen.insert(it).second) continue;
    if (!out.empty()) out += ' ';
    out += it;
  }
  return out;
}

std::string joined_documents(std::span<const corpus::Document* const> docs) {
  std::string out;
  for (const auto* d : docs) {
    if (!out.empty()) out += '\n';
    out += evaluation::render_document(*d);
  }
  return out;
}

bool is_capitalized(std::string_view w) {
  return !w.empty() && std::isupper(static_cast<unsigned char>(w.front())) != 0;
}

}  // namespace

std::string bag_of_words(std::string_view text, const corpus::WordList& stopwords) {
  std::vector<std::string> kept;
  for (auto t : corpus::basic_tokens(text)) {
    if (corpus::is_punct_token(t) || stopwords.contains(t)) continue;
    kept.emplace_back(t);
  }
  return join_unique(kept);
}

CompressionResult bow_compress(std::string_view docs, const corpus::Tokenizer& tok,
                               const corpus::WordList& stopwords) {
  return make_result(bag_of_words(docs, stopwords), tok.count(docs), "bow", tok);
}

EntityAnnotations load_entity_annotations(const std::filesystem::path& path) {
  EntityAnnotations out;
  read_jsonl(path, [&](std::size_t line, const json& j) {
    auto id = j.at("doc_id").get<std::string>();
    std::vector<EntitySpan> spans;
    for (const auto& e : j.at("entities")) {
      EntitySpan s{e.at("text").get<std::string>(), e.at("start").get<std::size_t>(),
                   e.at("end").get<std::size_t>()};
      if (s.end < s.start) throw ParseError(path.string(), line, "entity end before start");
      spans.push_back(std::move(s));
    }
    if (!out.emplace(id, std::move(spans)).second) {
      throw ParseError(path.string(), line, "duplicate doc_id '" + id + "'");
    }
  });
  return out;
}

NamedEntityTagger NamedEntityTagger::heuristic(const corpus::WordList& stopwords) {
  NamedEntityTagger t;
  t.kind_ = Kind::heuristic_capitalization;
  t.stopwords_ = &stopwords;
  return t;
}

NamedEntityTagger NamedEntityTagger::annotations(EntityAnnotations spans) {
  NamedEntityTagger t;
  t.kind_ = Kind::external_annotations;
  t.spans_ = std::move(spans);
  return t;
}

std::vector<std::string> NamedEntityTagger::tag_text(std::string_view text) const {
  if (kind_ != Kind::heuristic_capitalization) {
    throw Error("annotation tagger needs a document id");
  }
  std::vector<std::string> out;
  std::vector<std::string_view> run;
  bool run_starts_sentence = false;
  auto flush = [&] {
    if (run.empty()) return;
    const bool lone_initial = run.size() == 1 && run_starts_sentence;
    const bool all_stop = std::all_of(run.begin(), run.end(), [&](std::string_view w) {
      return stopwords_->contains(corpus::to_lower(w));
    });
    if (!lone_initial && !all_stop) {
      std::string e;
      for (auto w : run) {
        if (!e.empty()) e += ' ';
        e += w;
      }
      out.push_back(std::move(e));
    }
    run.clear();
  };
  for (auto sentence : corpus::split_sentence_spans(text)) {
    flush();
    const auto words = corpus::split_words(sentence);
    for (std::size_t i = 0; i < words.size(); ++i) {
      auto w = words[i];
      std::size_t lead = 0;
      while (lead < w.size() && corpus::is_punct(w[lead])) ++lead;
      std::size_t trail = 0;
      while (trail < w.size() - lead && corpus::is_punct(w[w.size() - 1 - trail])) ++trail;
      const auto core = w.substr(lead, w.size() - lead - trail);
      if (lead > 0) flush();
      if (is_capitalized(core)) {
        if (run.empty()) run_starts_sentence = i == 0;
        run.push_back(core);
      } else {
        flush();
      }
      if (trail > 0) flush();
    }
  }
  flush();
  return out;
}

std::vector<std::string> NamedEntityTagger::tag(const corpus::Document& doc) const {
  if (kind_ == Kind::heuristic_capitalization) return tag_text(doc.text);
  const auto it = spans_.find(doc.doc_id);
  if (it == spans_.end()) return {};
  auto spans = it->second;
  std::stable_sort(spans.begin(), spans.end(),
                   [](const EntitySpan& a, const EntitySpan& b) { return a.start < b.start; });
  std::vector<std::string> out;
  for (const auto& s : spans) {
    if (s.end > doc.text.size() || doc.text.compare(s.start, s.end - s.start, s.text) != 0) {
      throw Error("entity '" + s.text + "' does not match document '" + doc.doc_id + "' at [" +
                  std::to_string(s.start) + ", " + std::to_string(s.end) + ")");
    }
    out.push_back(s.text);
  }
  return out;
}

CompressionResult ne_compress(std::span<const corpus::Document* const> docs,
                              const NamedEntityTagger& tagger, const corpus::Tokenizer& tok) {
  std::vector<std::string> all;
  for (const auto* d : docs) {
    for (auto& e : tagger.tag(*d)) all.push_back(std::move(e));
  }
  return make_result(join_unique(all), tok.count(joined_documents(docs)), "ne", tok);
}

CompressionResult random_sentence(std::span<const std::string> pool, std::uint64_t seed,
                                  std::size_t source_tokens, const corpus::Tokenizer& tok) {
  if (pool.empty()) return make_result("", source_tokens, "random", tok);
  Rng rng(seed);
  const auto i = static_cast<std::size_t>(rng.below(pool.size()));
  auto r = make_result(pool[i], source_tokens, "random", tok);
  r.selected = {i};
  return r;
}

CompressionResult rank_compress(RankKind kind, std::string_view x,
                                std::span<const corpus::Document* const> docs, std::size_t top_n,
                                const extractive::DualEncoder* model, const corpus::Tokenizer& tok) {
  if (kind == RankKind::embedding) {
    if (model == nullptr) throw Error("embedding ranking needs a model");
    return extractive::compress_extractive(*model, x, docs, top_n, tok, "embed-sent");
  }
  const auto pool = corpus::decontextualized_pool(docs);
  const auto scores = retrieval::bm25_score_texts(x, pool);
  return select_top_sentences(pool, scores, top_n, tok.count(joined_documents(docs)), "bm25-sent", tok);
}

std::size_t oracle_extractive_index(std::span<const std::string> candidates,
                                    const scoring::Critic& critic, const scoring::Example& ex,
                                    unsigned jobs) {
  if (candidates.empty()) throw Error("oracle_extractive needs a non-empty pool");
  std::vector<double> scores(candidates.size());
  parallel_for(candidates.size(), jobs, [&](std::size_t i) { scores[i] = critic.score(ex, candidates[i]); });
  return argmax_first(scores);
}

CompressionResult oracle_extractive(std::span<const std::string> candidates,
                                    const scoring::Critic& critic, const scoring::Example& ex,
                                    std::size_t source_tokens, const corpus::Tokenizer& tok) {
  const auto i = oracle_extractive_index(candidates, critic, ex);
  auto r = make_result(candidates[i], source_tokens, "oracle-ext", tok);
  r.selected = {i};
  return r;
}

CompressionResult NoRetrievalCompressor::compress(const CompressionInput&) const {
  return make_result("", 0, policy(), default_tokenizer());
}

CompressionResult EmptyCompressor::compress(const CompressionInput& in) const {
  const auto& tok = default_tokenizer();
  return make_result("", tok.count(source_text(in.hits)), policy(), tok);
}

CompressionResult FullDocsCompressor::compress(const CompressionInput& in) const {
  const auto& tok = default_tokenizer();
  auto text = ascending_ ? evaluation::evidence_ascending(in.hits) : source_text(in.hits);
  const auto n = tok.count(text);
  return make_result(std::move(text), n, policy(), tok);
}

CompressionResult BowCompressor::compress(const CompressionInput& in) const {
  return bow_compress(source_text(in.hits));
}

CompressionResult NeCompressor::compress(const CompressionInput& in) const {
  return ne_compress(hit_documents(in.hits), tagger_);
}

CompressionResult RandomSentenceCompressor::compress(const CompressionInput& in) const {
  const auto docs = hit_documents(in.hits);
  const auto pool = corpus::decontextualized_pool(docs);
  const auto& tok = default_tokenizer();
  return random_sentence(pool, derive_seed(seed_, in.ordinal), tok.count(joined_documents(docs)), tok);
}

RankCompressor::RankCompressor(RankKind kind, std::size_t top_n, const extractive::DualEncoder* model)
    : kind_(kind), top_n_(top_n), model_(model) {
  if (kind_ == RankKind::embedding && model_ == nullptr) throw Error("embed-sent needs a model");
}

CompressionResult RankCompressor::compress(const CompressionInput& in) const {
  return rank_compress(kind_, in.example->query, hit_documents(in.hits), top_n_, model_);
}

CompressionResult OracleExtractiveCompressor::compress(const CompressionInput& in) const {
  const auto docs = hit_documents(in.hits);
  const auto pool = corpus::decontextualized_pool(docs);
  const auto& tok = default_tokenizer();
  const auto source_tokens = tok.count(joined_documents(docs));
  if (pool.empty()) return make_result("", source_tokens, policy(), tok);
  return oracle_extractive(pool, *critic_, *in.example, source_tokens, tok);
}

}  // namespace recomp::baselines
