// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recomp/corpus/types.hpp"
#include "recomp/evaluation/datasets.hpp"
#include "recomp/scoring/example.hpp"

namespace recomp::pipeline {

struct SynthConfig {
  std::size_t entities = 1250;
  std::size_t train_entities = 900;
  std::size_t eval_entities = 30;
  std::size_t attributes = 40;
  std::uint64_t seed = 13;
};

struct Fact {
  std::string attribute;
  std::string cue;
  std::string value;
};

struct Entity {
  std::string id;
  std::string name;
  std::vector<Fact> facts;
};

/// A templated-fact world. Every entity has the same attributes (a generated
/// noun plus a cue verb each) with its own two-word values. Its corpus article
/// states each fact once ("The A of X is V."); entities with training or
/// evaluation material also get a narrative stream restating the facts in the
/// fixed attribute order with the cue verbs ("X C V."), plus one question per
/// fact. Training entities come first, then evaluation entities; the rest
/// only appear in the corpus.
struct SynthData {
  std::vector<Entity> entities;
  std::vector<corpus::Article> articles;
  std::vector<evaluation::StreamDoc> lm_train;
  std::vector<evaluation::StreamDoc> lm_eval;
  std::vector<scoring::Example> qa_train;
  std::vector<scoring::Example> qa_eval;
};

SynthData generate_synthetic(const SynthConfig& cfg);

std::string article_jsonl(const std::vector<corpus::Article>& articles);
std::string stream_jsonl(const std::vector<evaluation::StreamDoc>& streams);
std::string qa_jsonl(const std::vector<scoring::Example>& examples);

}  // namespace recomp::pipeline
