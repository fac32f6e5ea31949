// SPDX-License-Identifier: Apache-2.0
#include "recomp/pipeline/synth.hpp"

#include <array>
#include <unordered_set>

#include "recomp/common/error.hpp"
#include "recomp/common/hash.hpp"
#include "recomp/common/io.hpp"
#include "recomp/common/rng.hpp"

namespace recomp::pipeline {
namespace {

constexpr std::array<std::string_view, 32> kSyllables = {
    "ka", "ro", "mi", "tal", "ven", "sor", "lu", "dra", "nis", "ber", "quo",
    "fen", "zi", "mar", "tho", "vel", "gar", "pe", "shu", "lin", "or", "ast",
    "eb", "ith", "mon", "ral", "cu", "dov", "hen", "jas", "wy", "kel"};

// Narrative frames, cycled by attribute position. {C} is the attribute's cue
// verb, which never appears in articles.
constexpr std::array<std::string_view, 4> kFrames = {
    "{N} {C} {V}.",
    "Then {N} {C} {V}.",
    "Later {N} {C} {V}.",
    "Soon {N} also {C} {V}.",
};

constexpr std::array<std::string_view, 4> kAttributeSuffixes = {"ance", "ity", "ment", "ship"};

std::string make_word(Rng& rng) {
  const std::size_t n = 3 + rng.below(2);
  std::string w;
  for (std::size_t i = 0; i < n; ++i) w += kSyllables[rng.below(kSyllables.size())];
  w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

std::string unique_words(Rng& rng, std::unordered_set<std::string>& used, std::size_t count) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::string s;
    for (std::size_t i = 0; i < count; ++i) {
      if (i) s += ' ';
      s += make_word(rng);
    }
    if (used.insert(s).second) return s;
  }
  throw Error("synthetic name space exhausted");
}

std::string fill(std::string_view tmpl, const std::string& name, const Fact& fact) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl.substr(i, 3) == "{N}") {
      out += name;
      i += 2;
    } else if (tmpl.substr(i, 3) == "{V}") {
      out += fact.value;
      i += 2;
    } else if (tmpl.substr(i, 3) == "{C}") {
      out += fact.cue;
      i += 2;
    } else {
      out += tmpl[i];
    }
  }
  return out;
}

evaluation::StreamDoc narrative(const Entity& e) {
  std::string text;
  for (std::size_t a = 0; a < e.facts.size(); ++a) {
    if (!text.empty()) text += ' ';
    text += fill(kFrames[a % kFrames.size()], e.name, e.facts[a]);
  }
  return {"story-" + e.id, "story-" + e.id, std::move(text)};
}

void questions(const Entity& e, std::vector<scoring::Example>& out) {
  for (std::size_t a = 0; a < e.facts.size(); ++a) {
    scoring::Example ex;
    ex.id = e.id + "-q" + std::to_string(a);
    ex.query = "What is the " + e.facts[a].attribute + " of " + e.name + "?";
    ex.input = ex.query;
    ex.target = scoring::Target::gold({e.facts[a].value});
    out.push_back(std::move(ex));
  }
}

}  // namespace

struct Attribute {
  std::string noun;  // used in articles and questions
  std::string cue;   // used in narratives
};

/// Lowercase attribute nouns and cue verbs shared by every entity. The
/// suffixes keep them disjoint from each other and from generated names.
std::vector<Attribute> attribute_names(std::size_t count, std::uint64_t seed) {
  Rng rng(derive_seed(seed, fnv1a64("attributes")));
  std::unordered_set<std::string> used;
  auto word = [&](std::string_view suffix) {
    while (true) {
      std::string w;
      for (int i = 0; i < 2; ++i) w += kSyllables[rng.below(kSyllables.size())];
      w += suffix;
      if (used.insert(w).second) return w;
    }
  };
  std::vector<Attribute> out;
  while (out.size() < count) {
    auto noun = word(kAttributeSuffixes[out.size() % kAttributeSuffixes.size()]);
    out.push_back({std::move(noun), word("ed")});
  }
  return out;
}

SynthData generate_synthetic(const SynthConfig& cfg) {
  if (cfg.train_entities + cfg.eval_entities > cfg.entities) {
    throw Error("train + eval entities exceed the entity count");
  }
  if (cfg.attributes == 0) throw Error("synthetic entities need at least one attribute");
  SynthData d;
  const auto attributes = attribute_names(cfg.attributes, cfg.seed);
  std::unordered_set<std::string> used;
  for (std::size_t i = 0; i < cfg.entities; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    Entity e;
    e.id = "ent" + std::to_string(i);
    e.name = unique_words(rng, used, 2);
    for (const auto& attr : attributes) e.facts.push_back({attr.noun, attr.cue, unique_words(rng, used, 2)});
    corpus::Article art{e.id, e.name, {}};
    for (const auto& f : e.facts) {
      if (!art.text.empty()) art.text += ' ';
      art.text += "The " + f.attribute + " of " + e.name + " is " + f.value + ".";
    }
    d.articles.push_back(std::move(art));
    if (i < cfg.train_entities) {
      d.lm_train.push_back(narrative(e));
      questions(e, d.qa_train);
    } else if (i < cfg.train_entities + cfg.eval_entities) {
      d.lm_eval.push_back(narrative(e));
      questions(e, d.qa_eval);
    }
    d.entities.push_back(std::move(e));
  }
  return d;
}

std::string article_jsonl(const std::vector<corpus::Article>& articles) {
  std::string out;
  for (const auto& a : articles) out += json{{"id", a.id}, {"title", a.title}, {"text", a.text}}.dump() + "\n";
  return out;
}

std::string stream_jsonl(const std::vector<evaluation::StreamDoc>& streams) {
  std::string out;
  for (const auto& s : streams) {
    out += json{{"id", s.id}, {"article_id", s.article_id}, {"text", s.text}}.dump() + "\n";
  }
  return out;
}

std::string qa_jsonl(const std::vector<scoring::Example>& examples) {
  std::string out;
  for (const auto& e : examples) {
    out += json{{"id", e.id}, {"question", e.query}, {"answers", e.target.answers}}.dump() + "\n";
  }
  return out;
}

}  // namespace recomp::pipeline
