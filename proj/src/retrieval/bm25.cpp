// SPDX-License-Identifier: Apache-2.0
#include "recomp/retrieval/bm25.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_set>

#include "recomp/common/error.hpp"
#include "recomp/corpus/tokenizer.hpp"

namespace recomp::retrieval {

json to_json(const RetrievedSet& r) {
  json hits = json::array();
  for (const auto& h : r.hits) hits.push_back({{"doc_id", h.doc->doc_id}, {"score", h.score}});
  return {{"example_id", r.example_id}, {"hits", std::move(hits)}};
}

Bm25Index Bm25Index::build(std::vector<corpus::Document> docs, Bm25Params params) {
  if (docs.empty()) throw Error("cannot build a BM25 index over zero documents");
  Bm25Index idx;
  idx.params_ = params;
  idx.docs_ = std::move(docs);
  idx.doc_lengths_.reserve(idx.docs_.size());
  for (std::uint32_t d = 0; d < idx.docs_.size(); ++d) {
    const auto terms = corpus::normalized_terms(idx.docs_[d].text);
    idx.doc_lengths_.push_back(static_cast<std::uint32_t>(terms.size()));
    std::unordered_map<std::uint32_t, std::uint32_t> tf;
    std::vector<std::uint32_t> order;
    for (const auto& t : terms) {
      auto [it, fresh] = idx.term_ids_.try_emplace(t, static_cast<std::uint32_t>(idx.terms_.size()));
      if (fresh) {
        idx.terms_.push_back(t);
        idx.postings_.emplace_back();
      }
      if (tf[it->second]++ == 0) order.push_back(it->second);
    }
    for (auto id : order) idx.postings_[id].push_back({d, tf[id]});
  }
  idx.finalize();
  return idx;
}

void Bm25Index::finalize() {
  double total = 0.0;
  for (auto l : doc_lengths_) total += l;
  avg_len_ = total / static_cast<double>(docs_.size());
}

const std::vector<Posting>* Bm25Index::find(std::string_view term) const {
  auto it = term_ids_.find(std::string(term));
  return it == term_ids_.end() ? nullptr : &postings_[it->second];
}

std::size_t Bm25Index::document_frequency(std::string_view term) const {
  const auto* p = find(term);
  return p ? p->size() : 0;
}

double Bm25Index::idf(std::string_view term) const {
  return bm25_idf(static_cast<double>(docs_.size()),
                  static_cast<double>(document_frequency(term)));
}

std::span<const Posting> Bm25Index::postings(std::string_view term) const {
  const auto* p = find(term);
  return p ? std::span<const Posting>(*p) : std::span<const Posting>();
}

double Bm25Index::score(std::string_view query, std::size_t doc) const {
  double s = 0.0;
  for (const auto& t : corpus::normalized_terms(query)) {
    const auto* p = find(t);
    if (!p) continue;
    auto it = std::lower_bound(p->begin(), p->end(), doc,
                               [](const Posting& a, std::size_t d) { return a.doc < d; });
    if (it == p->end() || it->doc != doc) continue;
    s += bm25_idf(static_cast<double>(docs_.size()), static_cast<double>(p->size())) *
         bm25_tf_part(it->tf, doc_lengths_[doc], avg_len_, params_);
  }
  return s;
}

RetrievedSet Bm25Index::search(std::string_view query, std::size_t k,
                               const Exclusion& exclude) const {
  if (k == 0) throw Error("search requires k >= 1");
  std::unordered_set<std::string> banned_articles;
  if (exclude.mode == Exclusion::Mode::article_id) {
    banned_articles.insert(exclude.value);
  } else if (exclude.mode == Exclusion::Mode::substring && !exclude.value.empty()) {
    for (const auto& d : docs_) {
      if (d.text.find(exclude.value) != std::string::npos) banned_articles.insert(d.article_id);
    }
  }

  std::unordered_map<std::uint32_t, double> acc;
  const double n = static_cast<double>(docs_.size());
  for (const auto& t : corpus::normalized_terms(query)) {
    const auto* p = find(t);
    if (!p) continue;
    const double w = bm25_idf(n, static_cast<double>(p->size()));
    for (const auto& post : *p) {
      acc[post.doc] += w * bm25_tf_part(post.tf, doc_lengths_[post.doc], avg_len_, params_);
    }
  }

  RetrievedSet out;
  out.hits.reserve(acc.size());
  for (auto [d, s] : acc) {
    if (!banned_articles.empty() && banned_articles.contains(docs_[d].article_id)) continue;
    out.hits.push_back({&docs_[d], d, s});
  }
  auto better = [](const Hit& a, const Hit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc->doc_id < b.doc->doc_id;
  };
  const std::size_t keep = std::min(k, out.hits.size());
  std::partial_sort(out.hits.begin(), out.hits.begin() + static_cast<std::ptrdiff_t>(keep),
                    out.hits.end(), better);
  out.hits.resize(keep);
  return out;
}

void Bm25Index::save(const std::filesystem::path& path) const {
  BinaryWriter w;
  w.bytes(std::string_view(kMagic, sizeof(kMagic)));
  w.u8(kFormatVersion);
  w.f64(params_.k1);
  w.f64(params_.b);
  w.u64(docs_.size());
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    const auto& d = docs_[i];
    w.str(d.doc_id);
    w.str(d.article_id);
    w.str(d.title);
    w.str(d.text);
    w.u64(d.span.start);
    w.u64(d.span.end);
    w.u32(doc_lengths_[i]);
  }
  w.u64(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    w.str(terms_[t]);
    w.u32(static_cast<std::uint32_t>(postings_[t].size()));
    for (const auto& p : postings_[t]) {
      w.u32(p.doc);
      w.u32(p.tf);
    }
  }
  write_file_atomic(path, w.data());
}

Bm25Index Bm25Index::load(const std::filesystem::path& path) {
  BinaryReader r(read_file(path), path.string());
  if (r.bytes(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    throw Error(path.string() + ": not a BM25 index file");
  }
  if (const auto v = r.u8(); v != kFormatVersion) {
    throw Error(path.string() + ": unsupported index format version " + std::to_string(v));
  }
  Bm25Index idx;
  idx.params_.k1 = r.f64();
  idx.params_.b = r.f64();
  const auto ndocs = r.u64();
  idx.docs_.resize(ndocs);
  idx.doc_lengths_.resize(ndocs);
  for (std::size_t i = 0; i < ndocs; ++i) {
    auto& d = idx.docs_[i];
    d.doc_id = r.str();
    d.article_id = r.str();
    d.title = r.str();
    d.text = r.str();
    d.span.start = r.u64();
    d.span.end = r.u64();
    idx.doc_lengths_[i] = r.u32();
  }
  const auto nterms = r.u64();
  idx.terms_.resize(nterms);
  idx.postings_.resize(nterms);
  for (std::uint32_t t = 0; t < nterms; ++t) {
    idx.terms_[t] = r.str();
    idx.term_ids_.emplace(idx.terms_[t], t);
    const auto np = r.u32();
    idx.postings_[t].resize(np);
    for (auto& p : idx.postings_[t]) {
      p.doc = r.u32();
      p.tf = r.u32();
      if (p.doc >= ndocs) throw Error(path.string() + ": posting references unknown document");
    }
  }
  if (!r.at_end()) throw Error(path.string() + ": trailing bytes after index");
  if (idx.docs_.empty()) throw Error(path.string() + ": index holds no documents");
  idx.finalize();
  return idx;
}

std::vector<double> bm25_score_texts(std::string_view query, std::span<const std::string> texts,
                                     const Bm25Params& params) {
  std::vector<std::unordered_map<std::string, std::uint32_t>> tfs(texts.size());
  std::vector<double> lens(texts.size());
  std::unordered_map<std::string, std::uint32_t> df;
  double total = 0.0;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto terms = corpus::normalized_terms(texts[i]);
    lens[i] = static_cast<double>(terms.size());
    total += lens[i];
    for (const auto& t : terms) {
      if (tfs[i][t]++ == 0) ++df[t];
    }
  }
  std::vector<double> scores(texts.size(), 0.0);
  if (texts.empty()) return scores;
  const double n = static_cast<double>(texts.size());
  const double avg = total / n;
  for (const auto& q : corpus::normalized_terms(query)) {
    auto dit = df.find(q);
    if (dit == df.end()) continue;
    const double w = bm25_idf(n, dit->second);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      auto it = tfs[i].find(q);
      if (it != tfs[i].end()) scores[i] += w * bm25_tf_part(it->second, lens[i], avg, params);
    }
  }
  return scores;
}

}  // namespace recomp::retrieval
