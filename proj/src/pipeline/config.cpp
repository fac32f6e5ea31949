// SPDX-License-Identifier: Apache-2.0
#include "recomp/pipeline/config.hpp"

#include <algorithm>
#include <charconv>

#include "recomp/common/error.hpp"

namespace recomp::pipeline {
namespace {

using S = std::string;
using I = std::int64_t;

KeySpec str_key(S name, S def, S help, std::vector<S> choices = {}) {
  return {std::move(name), KeyType::string, std::move(def), std::move(help), std::move(choices)};
}
KeySpec int_key(S name, I def, S help) { return {std::move(name), KeyType::integer, def, std::move(help), {}}; }
KeySpec real_key(S name, double def, S help) { return {std::move(name), KeyType::real, def, std::move(help), {}}; }
KeySpec bool_key(S name, bool def, S help) { return {std::move(name), KeyType::boolean, def, std::move(help), {}}; }

const std::vector<S> kPolicies = {"none",       "empty",      "full-docs", "bow",       "ne",
                                  "random",     "bm25-sent",  "embed-sent", "extractive",
                                  "abstractive", "oracle-ext", "oracle-abs"};

std::string type_name(KeyType t) {
  switch (t) {
    case KeyType::string: return "a string";
    case KeyType::integer: return "an integer";
    case KeyType::real: return "a number";
    case KeyType::boolean: return "a boolean";
  }
  return "?";
}

}  // namespace

const std::vector<KeySpec>& config_schema() {
  static const std::vector<KeySpec> schema = {
      str_key("paths.corpus", "corpus.jsonl", "corpus JSONL {id,title,text}"),
      str_key("paths.lm_train", "lm_train.jsonl", "LM training streams {id,article_id,text}"),
      str_key("paths.lm_eval", "lm_eval.jsonl", "LM evaluation streams"),
      str_key("paths.qa_train", "qa_train.jsonl", "QA training set {id,question,answers}"),
      str_key("paths.qa_eval", "qa_eval.jsonl", "QA evaluation set"),
      str_key("paths.output_dir", "out", "directory for every artifact"),
      str_key("paths.stopwords", "", "stopword list (one per line); empty = built-in"),
      str_key("paths.abbreviations", "", "abbreviation list; empty = built-in"),
      str_key("paths.prompts", "", "prompt templates; empty = built-in"),
      str_key("paths.summaries", "", "recorded abstractive summaries {example_id,summary}"),
      str_key("paths.ne_annotations", "", "entity annotations; empty = capitalization heuristic"),
      str_key("paths.tokenizer_vocab", "", "token vocabulary for counting; empty = word/punct"),
      str_key("paths.report", "", "analyze: report JSON; empty = compress.policy's report"),
      str_key("paths.baseline_report", "", "analyze: LM report to compare against"),

      int_key("run.seed", 13, "master seed"),
      int_key("run.jobs", 0, "worker threads; 0 = logical CPUs"),
      str_key("run.task", "lm", "task for data generation and compress", {"lm", "qa"}),
      int_key("run.max_examples", 0, "cap on examples per split; 0 = all"),

      int_key("corpus.chunk_words", 100, "words per retrieval document"),

      real_key("retrieval.k1", 0.9, "BM25 k1"),
      real_key("retrieval.b", 0.4, "BM25 b"),
      int_key("retrieval.top_k", 5, "documents retrieved per example"),

      int_key("eval.stride", 32, "LM target length in words"),
      int_key("eval.query_window", 32, "LM retrieval query length in words"),
      int_key("eval.context_window", 224, "LM context length in words"),

      str_key("scorer.kind", "builtin", "end-task model", {"builtin", "remote"}),
      str_key("scorer.bridge_url", "", "bridge base URL (remote scorer)"),
      str_key("scorer.model", "", "bridge model name"),
      int_key("scorer.timeout_ms", 60000, "per-request timeout"),
      int_key("scorer.retries", 3, "retries per request"),
      int_key("scorer.max_in_flight", 8, "concurrent bridge requests"),
      int_key("scorer.lm_order", 2, "built-in n-gram order (2 or 3)"),
      real_key("scorer.lambda_cache", 0.3, "built-in cache weight"),
      real_key("scorer.alpha", 0.1, "built-in add-alpha smoothing"),

      int_key("qa.demo_seed", 7, "seed for the five in-context demos"),
      int_key("qa.max_answer_tokens", 16, "decoded answer length cap"),

      int_key("extractive.dim", 64, "embedding width"),
      real_key("extractive.epsilon", 0.5, "LM score margin for negatives"),
      int_key("extractive.top_docs", 5, "documents feeding the candidate pool"),
      int_key("extractive.top_sentences", 20, "candidate pool size"),
      int_key("extractive.max_negatives", 5, "negatives per record (<= 5)"),
      str_key("extractive.optimizer", "adam", "optimizer", {"adam", "sgd"}),
      real_key("extractive.lr", 0.03, "learning rate"),
      int_key("extractive.batch_size", 64, "records per step"),
      int_key("extractive.epochs", 5, "passes over the records"),
      int_key("extractive.warmup_steps", 0, "linear warmup steps"),

      str_key("abstractive.teacher", "heuristic", "teacher", {"heuristic", "remote"}),
      str_key("abstractive.teacher_url", "", "teacher bridge URL; empty = scorer.bridge_url"),
      int_key("abstractive.teacher_max_tokens", 128, "teacher generation cap"),
      int_key("abstractive.max_tokens", 64, "compressor generation cap"),
      str_key("abstractive.qa_prompt", "nq", "QA prompt id"),
      str_key("abstractive.lm_prompt", "", "LM inference prompt id; empty = first LM prompt"),
      bool_key("abstractive.drop_no_improvement", false, "QA: drop records with v_s <= v_d"),
      bool_key("abstractive.require_gold_in_docs", false, "QA: skip examples without a gold in docs"),

      str_key("compress.policy", "none", "compression policy", kPolicies),
      int_key("compress.top_n", 1, "sentences kept by sentence policies"),

      int_key("synth.entities", 1250, "synthetic entities (one article each)"),
      int_key("synth.train_entities", 900, "entities with LM/QA training material"),
      int_key("synth.eval_entities", 30, "entities with evaluation material"),
      int_key("synth.attributes", 40, "facts per entity"),
  };
  return schema;
}

const KeySpec* find_key(std::string_view name) {
  for (const auto& k : config_schema()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

Config::Config() {
  for (const auto& k : config_schema()) values_.emplace(k.name, k.default_value);
}

Config Config::from_text(std::string_view text, const std::string& source) {
  Config c;
  for (const auto& [key, value] : toml::parse(text, source)) {
    const auto scalar = std::visit(
        [&](auto&& x) -> toml::Scalar {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::vector<toml::Scalar>>) {
            throw ConfigError(key, "arrays are not supported here (" + source + ":" +
                                       std::to_string(value.line) + ")");
          } else {
            return x;
          }
        },
        value.data);
    c.set_value(key, scalar);
  }
  c.validate();
  return c;
}

Config Config::from_file(const std::filesystem::path& path) {
  auto c = from_text(read_file(path), path.string());
  c.base_dir_ = path.parent_path();
  return c;
}

void Config::set_value(std::string_view key, const toml::Scalar& value) {
  const auto* spec = find_key(key);
  if (spec == nullptr) throw ConfigError(std::string(key), "unknown key");
  toml::Scalar v = value;
  if (spec->type == KeyType::real) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) v = static_cast<double>(*i);
  }
  const bool ok = (spec->type == KeyType::string && std::holds_alternative<std::string>(v)) ||
                  (spec->type == KeyType::integer && std::holds_alternative<std::int64_t>(v)) ||
                  (spec->type == KeyType::real && std::holds_alternative<double>(v)) ||
                  (spec->type == KeyType::boolean && std::holds_alternative<bool>(v));
  if (!ok) throw ConfigError(spec->name, "must be " + type_name(spec->type));
  if (!spec->choices.empty()) {
    const auto& s = std::get<std::string>(v);
    if (std::find(spec->choices.begin(), spec->choices.end(), s) == spec->choices.end()) {
      std::string allowed;
      for (const auto& c : spec->choices) allowed += (allowed.empty() ? "" : ", ") + c;
      throw ConfigError(spec->name, "'" + s + "' is not one of {" + allowed + "}");
    }
  }
  values_.find(key)->second = std::move(v);
}

void Config::set(std::string_view key, std::string_view value) {
  const auto* spec = find_key(key);
  if (spec == nullptr) throw ConfigError(std::string(key), "unknown key");
  switch (spec->type) {
    case KeyType::string: set_value(key, std::string(value)); return;
    case KeyType::integer: {
      std::int64_t v = 0;
      auto r = std::from_chars(value.data(), value.data() + value.size(), v);
      if (r.ec != std::errc() || r.ptr != value.data() + value.size()) {
        throw ConfigError(spec->name, "'" + std::string(value) + "' is not an integer");
      }
      set_value(key, v);
      return;
    }
    case KeyType::real: {
      double v = 0.0;
      auto r = std::from_chars(value.data(), value.data() + value.size(), v);
      if (r.ec != std::errc() || r.ptr != value.data() + value.size()) {
        throw ConfigError(spec->name, "'" + std::string(value) + "' is not a number");
      }
      set_value(key, v);
      return;
    }
    case KeyType::boolean:
      if (value == "true" || value == "1") {
        set_value(key, true);
      } else if (value == "false" || value == "0") {
        set_value(key, false);
      } else {
        throw ConfigError(spec->name, "'" + std::string(value) + "' is not a boolean");
      }
      return;
  }
}

const toml::Scalar& Config::get(std::string_view key, KeyType type) const {
  const auto it = values_.find(key);
  const auto* spec = find_key(key);
  if (it == values_.end() || spec == nullptr || spec->type != type) {
    throw ConfigError(std::string(key), "not a " + type_name(type) + " key");
  }
  return it->second;
}

const std::string& Config::str(std::string_view key) const {
  return std::get<std::string>(get(key, KeyType::string));
}
std::int64_t Config::integer(std::string_view key) const {
  return std::get<std::int64_t>(get(key, KeyType::integer));
}
std::size_t Config::size(std::string_view key) const {
  const auto v = integer(key);
  if (v < 0) throw ConfigError(std::string(key), "must be >= 0");
  return static_cast<std::size_t>(v);
}
double Config::real(std::string_view key) const { return std::get<double>(get(key, KeyType::real)); }
bool Config::boolean(std::string_view key) const { return std::get<bool>(get(key, KeyType::boolean)); }

std::filesystem::path Config::path(std::string_view key) const {
  const auto& s = str(key);
  if (s.empty()) return {};
  std::filesystem::path p(s);
  if (p.is_relative() && !base_dir_.empty()) p = base_dir_ / p;
  return p;
}

json Config::to_json() const {
  json j = json::object();
  for (const auto& [k, v] : values_) {
    std::visit([&](auto&& x) { j[k] = x; }, v);
  }
  return j;
}

json Config::fingerprint_json() const {
  auto j = to_json();
  j.erase("run.jobs");
  return j;
}

void Config::validate() const {
  auto at_least = [&](std::string_view key, std::int64_t lo) {
    if (integer(key) < lo) throw ConfigError(std::string(key), "must be >= " + std::to_string(lo));
  };
  at_least("run.jobs", 0);
  at_least("run.max_examples", 0);
  at_least("corpus.chunk_words", 1);
  at_least("retrieval.top_k", 1);
  at_least("eval.stride", 1);
  if (integer("eval.query_window") < integer("eval.stride")) throw ConfigError("eval.query_window", "must be >= eval.stride");
  if (integer("eval.context_window") < integer("eval.stride")) throw ConfigError("eval.context_window", "must be >= eval.stride");
  if (const auto o = integer("scorer.lm_order"); o != 2 && o != 3) throw ConfigError("scorer.lm_order", "must be 2 or 3");
  if (const auto l = real("scorer.lambda_cache"); !(l >= 0.0 && l < 1.0)) throw ConfigError("scorer.lambda_cache", "must be in [0, 1)");
  if (!(real("scorer.alpha") > 0.0)) throw ConfigError("scorer.alpha", "must be > 0");
  at_least("scorer.timeout_ms", 1);
  at_least("scorer.retries", 0);
  at_least("scorer.max_in_flight", 1);
  at_least("qa.max_answer_tokens", 1);
  at_least("extractive.dim", 1);
  if (!(real("extractive.epsilon") >= 0.0)) throw ConfigError("extractive.epsilon", "must be >= 0");
  at_least("extractive.top_docs", 1);
  at_least("extractive.top_sentences", 1);
  at_least("extractive.max_negatives", 1);
  if (integer("extractive.max_negatives") > 5) throw ConfigError("extractive.max_negatives", "must be <= 5");
  if (!(real("extractive.lr") > 0.0)) throw ConfigError("extractive.lr", "must be > 0");
  at_least("extractive.batch_size", 1);
  at_least("extractive.epochs", 0);
  at_least("extractive.warmup_steps", 0);
  at_least("abstractive.teacher_max_tokens", 1);
  at_least("abstractive.max_tokens", 1);
  at_least("compress.top_n", 1);
  at_least("synth.entities", 1);
  at_least("synth.train_entities", 0);
  at_least("synth.eval_entities", 0);
  at_least("synth.attributes", 1);
  if (integer("synth.train_entities") + integer("synth.eval_entities") > integer("synth.entities")) {
    throw ConfigError("synth.train_entities", "train + eval entities exceed synth.entities");
  }
}

}  // namespace recomp::pipeline
