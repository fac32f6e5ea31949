// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "recomp/common/error.hpp"
#include "recomp/common/rng.hpp"
#include "recomp/corpus/corpus.hpp"
#include "recomp/corpus/tokenizer.hpp"
#include "recomp/retrieval/bm25.hpp"
#include "recomp/retrieval/candidate_pool.hpp"
#include "support.hpp"

using namespace recomp;
using namespace recomp::retrieval;
using corpus::Document;

namespace {

Document doc(std::string id, std::string text, std::string article = "", std::string title = "") {
  Document d;
  d.doc_id = std::move(id);
  d.article_id = article.empty() ? d.doc_id : std::move(article);
  d.title = std::move(title);
  d.text = std::move(text);
  return d;
}

// Okapi BM25 written out from its definition, with term statistics gathered
// by plain counting.
struct NaiveBm25 {
  std::vector<std::vector<std::string>> docs;
  double k1 = 0.9, b = 0.4;

  double avg() const {
    double s = 0;
    for (const auto& d : docs) s += static_cast<double>(d.size());
    return s / static_cast<double>(docs.size());
  }
  double score(const std::vector<std::string>& query, std::size_t i) const {
    const double n = static_cast<double>(docs.size());
    double total = 0.0;
    for (const auto& q : query) {
      double df = 0;
      for (const auto& d : docs) df += std::count(d.begin(), d.end(), q) > 0 ? 1 : 0;
      const double tf = static_cast<double>(std::count(docs[i].begin(), docs[i].end(), q));
      if (tf == 0) continue;
      const double idf = std::log((n - df + 0.5) / (df + 0.5) + 1.0);
      const double len = static_cast<double>(docs[i].size());
      total += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len / avg()));
    }
    return total;
  }
};

}  // namespace

TEST_CASE("index statistics on a 3-doc fixture") {
  const auto index = Bm25Index::build({doc("d0", "The cat sat on the mat."), doc("d1", "The dog chased the cat"),
                                       doc("d2", "A bird sang")});
  CHECK(index.doc_count() == 3);
  CHECK(index.avg_doc_len() == doctest::Approx(14.0 / 3.0).epsilon(1e-15));
  CHECK(index.doc_length(0) == 6);
  CHECK(index.document_frequency("the") == 2);
  CHECK(index.document_frequency("cat") == 2);
  CHECK(index.document_frequency("zebra") == 0);
  const auto the = index.postings("the");
  REQUIRE(the.size() == 2);
  CHECK(the[0] == Posting{0, 2});
  CHECK(the[1] == Posting{1, 2});
  CHECK(index.score("cat", 2) == 0.0);
}

TEST_CASE("BM25 scores equal hand-computed Okapi values to 1e-9") {
  const auto index = Bm25Index::build({doc("d0", "The cat sat on the mat."), doc("d1", "The dog chased the cat"),
                                       doc("d2", "A bird sang")});
  // N = 3, avgdl = 14/3, k1 = 0.9, b = 0.4.
  const double avgdl = 14.0 / 3.0;
  const double idf_cat = std::log((3 - 2 + 0.5) / (2 + 0.5) + 1);  // ln 1.6
  const double idf_mat = std::log((3 - 1 + 0.5) / (1 + 0.5) + 1);  // ln (8/3)
  const double idf_the = idf_cat;
  auto tfp = [&](double tf, double len) { return tf * 1.9 / (tf + 0.9 * (0.6 + 0.4 * len / avgdl)); };

  const double d0 = idf_cat * tfp(1, 6) + idf_mat * tfp(1, 6);
  const double d1 = idf_cat * tfp(1, 5);
  CHECK(std::abs(index.score("cat mat", 0) - d0) < 1e-9);
  CHECK(std::abs(index.score("cat mat", 1) - d1) < 1e-9);
  CHECK(index.score("cat mat", 2) == 0.0);
  const double the_twice = 2 * idf_the * tfp(2, 6);
  CHECK(std::abs(index.score("the THE", 0) - the_twice) < 1e-9);

  const auto hits = index.search("cat mat", 5);
  REQUIRE(hits.hits.size() == 2);
  CHECK(hits.hits[0].doc->doc_id == "d0");
  CHECK(std::abs(hits.hits[0].score - d0) < 1e-9);
  CHECK(hits.hits[1].doc->doc_id == "d1");
}

TEST_CASE("idf helper is positive even for ubiquitous terms") {
  CHECK(bm25_idf(3, 3) > 0.0);
  CHECK(bm25_idf(10, 0) > bm25_idf(10, 5));
}

TEST_CASE("top-5 ordering equals exhaustive scoring on a 20-doc fixture") {
  const std::vector<std::string> vocab{"red", "green", "blue", "cat", "dog", "fish", "tree",
                                       "river", "stone", "cloud"};
  Rng rng(5);
  std::vector<Document> docs;
  NaiveBm25 naive;
  for (int i = 0; i < 20; ++i) {
    const std::size_t len = 3 + rng.below(8);
    std::vector<std::string> terms;
    std::string text;
    for (std::size_t k = 0; k < len; ++k) {
      terms.push_back(vocab[rng.below(vocab.size())]);
      text += (k ? " " : "") + terms.back();
    }
    char id[8];
    std::snprintf(id, sizeof id, "doc%02d", i);
    docs.push_back(doc(id, text));
    naive.docs.push_back(terms);
  }
  // Two identical documents force a score tie.
  docs[13].text = docs[4].text;
  naive.docs[13] = naive.docs[4];
  const auto index = Bm25Index::build(docs);

  for (const std::string q : {"cat dog", "red river stone", "fish", "cloud cloud tree", "blue"}) {
    const auto qt = corpus::normalized_terms(q);
    std::vector<std::pair<double, std::string>> all;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const double s = naive.score(qt, i);
      CHECK(std::abs(index.score(q, i) - s) < 1e-9);
      if (s > 0) all.emplace_back(s, docs[i].doc_id);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    const auto got = index.search(q, 5);
    REQUIRE(got.hits.size() == std::min<std::size_t>(5, all.size()));
    for (std::size_t r = 0; r < got.hits.size(); ++r) {
      CHECK(got.hits[r].doc->doc_id == all[r].second);
      CHECK(std::abs(got.hits[r].score - all[r].first) < 1e-9);
    }
  }
}

TEST_CASE("search basics and exclusion") {
  const auto single = Bm25Index::build({doc("only", "alpha beta gamma", "artA")});
  const auto hit = single.search("beta", 3);
  REQUIRE(hit.hits.size() == 1);
  CHECK(hit.hits[0].doc->doc_id == "only");
  CHECK(single.search("beta", 3, Exclusion::article("artA")).hits.empty());
  CHECK(single.search("zzz", 3).hits.empty());

  const auto idx = Bm25Index::build({doc("a_0", "river bank", "a"), doc("a_1", "river mouth", "a"),
                                     doc("b_0", "river stone", "b"), doc("c_0", "mountain", "c")});
  for (const auto& h : idx.search("river", 10, Exclusion::article("a")).hits) {
    CHECK(h.doc->article_id != "a");
  }
  const auto sub = idx.search("river", 10, Exclusion::containing("river mouth"));
  REQUIRE(sub.hits.size() == 1);
  CHECK(sub.hits[0].doc->doc_id == "b_0");
  CHECK_THROWS_AS(Bm25Index::build({}), Error);
}

TEST_CASE("adding a query term occurrence never lowers the score") {
  NaiveBm25 naive;
  naive.docs = {{"x", "y", "z", "w"}, {"x", "q", "q", "r"}, {"s", "t", "u", "v"}};
  const auto before = naive.score({"x"}, 0);
  naive.docs[0][1] = "x";  // same length, one more occurrence
  CHECK(naive.score({"x"}, 0) >= before);

  const auto low = Bm25Index::build({doc("a", "x y z w"), doc("b", "x q q r"), doc("c", "s t u v")});
  const auto high = Bm25Index::build({doc("a", "x x z w"), doc("b", "x q q r"), doc("c", "s t u v")});
  CHECK(high.score("x", 0) >= low.score("x", 0));
}

TEST_CASE("index save and load preserve everything") {
  test::TempDir dir("bm25");
  const auto idx = Bm25Index::build({doc("d0", "one two three", "a", "T"), doc("d1", "two three four", "b")},
                                    {1.2, 0.75});
  idx.save(dir / "idx.bin");
  const auto back = Bm25Index::load(dir / "idx.bin");
  CHECK(back.doc_count() == 2);
  CHECK(back.documents() == idx.documents());
  CHECK(back.params().k1 == 1.2);
  CHECK(back.params().b == 0.75);
  CHECK(back.score("two four", 1) == idx.score("two four", 1));
  test::write_text(dir / "bad.bin", "not an index");
  CHECK_THROWS_AS(Bm25Index::load(dir / "bad.bin"), Error);
}

TEST_CASE("retrieved set serializes doc ids and scores") {
  const auto idx = Bm25Index::build({doc("d0", "one two"), doc("d1", "two")});
  auto r = idx.search("two", 2);
  r.example_id = "ex";
  const auto j = to_json(r);
  CHECK(j["example_id"] == "ex");
  CHECK(j["hits"].size() == 2);
  CHECK(j["hits"][0].contains("doc_id"));
  CHECK(j["hits"][0].contains("score"));
}

TEST_CASE("candidate pool over 5 docs of 4 sentences") {
  std::vector<Document> docs;
  for (int d = 0; d < 5; ++d) {
    std::string text;
    for (int s = 0; s < 4; ++s) {
      text += (s ? " " : "") + std::string("Sentence ") + std::to_string(d) + " " + std::to_string(s) +
              (s == 2 ? " river" : "") + (d == 3 && s == 1 ? " river river" : "") + ".";
    }
    docs.push_back(doc("d" + std::to_string(d), text, "a" + std::to_string(d), "T" + std::to_string(d)));
  }
  const auto idx = Bm25Index::build(docs);
  RetrievedSet rs;
  for (std::size_t i = 0; i < docs.size(); ++i) rs.hits.push_back({&idx.documents()[i], i, 1.0});
  const Bm25SentenceRanker ranker;

  const auto all = candidate_pool(rs, "river", ranker, 5, 20);
  CHECK(all.size() == 20);
  for (const auto& c : all) CHECK(c.text.rfind("T", 0) == 0);

  const auto top = candidate_pool(rs, "river", ranker, 5, 1);
  REQUIRE(top.size() == 1);
  CHECK(top[0].text == "T3: Sentence 3 1 river river.");

  // Brute force: score every sentence of the pool and keep the 6 best.
  std::vector<std::string> texts;
  for (const auto& d : idx.documents()) {
    for (const auto& s : corpus::split_sentences(d)) texts.push_back(corpus::decontextualize(s));
  }
  const auto scores = bm25_score_texts("river", texts);
  std::vector<std::size_t> order(texts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
  const auto six = candidate_pool(rs, "river", ranker, 5, 6);
  REQUIRE(six.size() == 6);
  for (std::size_t r = 0; r < 6; ++r) {
    CHECK(six[r].pool_index == order[r]);
    CHECK(six[r].text == texts[order[r]]);
  }

  const auto two_docs = candidate_pool(rs, "river", ranker, 2, 20);
  CHECK(two_docs.size() == 8);
}
