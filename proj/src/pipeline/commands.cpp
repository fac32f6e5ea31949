// SPDX-License-Identifier: Apache-2.0
#include "recomp/pipeline/commands.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <thread>

#include "recomp/abstractive/compressor.hpp"
#include "recomp/abstractive/distill.hpp"
#include "recomp/baselines/baselines.hpp"
#include "recomp/common/error.hpp"
#include "recomp/common/hash.hpp"
#include "recomp/common/log.hpp"
#include "recomp/common/parallel.hpp"
#include "recomp/corpus/corpus.hpp"
#include "recomp/evaluation/harness.hpp"
#include "recomp/extractive/compressor.hpp"
#include "recomp/extractive/contrastive_data.hpp"
#include "recomp/extractive/trainer.hpp"
#include "recomp/pipeline/synth.hpp"
#include "recomp/retrieval/candidate_pool.hpp"
#include "recomp/scoring/builtin_scorer.hpp"
#include "recomp/scoring/remote_scorer.hpp"

namespace recomp::pipeline {
namespace fs = std::filesystem;
namespace {

using scoring::Example;

/// Lazily built shared state for one command invocation.
class Context {
 public:
  explicit Context(const Config& cfg) : cfg_(cfg) {
    const auto j = cfg.integer("run.jobs");
    jobs_ = j == 0 ? default_jobs() : static_cast<unsigned>(j);
    task_ = cfg.str("run.task");
    if (const auto p = cfg.path("paths.stopwords"); !p.empty()) stopwords_ = corpus::WordList::load(p);
    if (const auto p = cfg.path("paths.abbreviations"); !p.empty()) abbrevs_ = corpus::WordList::load(p);
    if (const auto p = cfg.path("paths.tokenizer_vocab"); !p.empty()) tok_ = corpus::Tokenizer::load_vocab(p);
  }

  const Config& cfg() const { return cfg_; }
  unsigned jobs() const { return jobs_; }
  const std::string& task() const { return task_; }
  bool qa() const { return task_ == "qa"; }
  std::uint64_t seed() const { return static_cast<std::uint64_t>(cfg_.integer("run.seed")); }
  fs::path out(const std::string& name) const { return cfg_.output_dir() / name; }

  const corpus::WordList& stopwords() const { return stopwords_ ? *stopwords_ : corpus::default_stopwords(); }
  const corpus::WordList& abbreviations() const {
    return abbrevs_ ? *abbrevs_ : corpus::default_abbreviations();
  }
  const corpus::Tokenizer& tokenizer() const { return tok_ ? *tok_ : default_tokenizer(); }

  const retrieval::Bm25Index& index() {
    if (!index_) {
      const auto p = out("index.bin");
      if (!fs::exists(p)) throw Error("missing " + p.string() + "; run build-index first");
      index_ = std::make_unique<retrieval::Bm25Index>(retrieval::Bm25Index::load(p));
    }
    return *index_;
  }

  evaluation::LmEvalConfig lm_cfg() const {
    evaluation::LmEvalConfig c;
    c.stride = cfg_.size("eval.stride");
    c.query_window = cfg_.size("eval.query_window");
    c.context_window = cfg_.size("eval.context_window");
    c.top_k = cfg_.size("retrieval.top_k");
    return c;
  }

  const std::vector<evaluation::StreamDoc>& streams(const std::string& key) {
    auto& slot = streams_[key];
    if (!slot) {
      slot = std::make_unique<std::vector<evaluation::StreamDoc>>();
      if (const auto p = cfg_.path(key); !p.empty() && fs::exists(p)) *slot = evaluation::load_streams(p);
    }
    return *slot;
  }

  std::vector<scoring::Example> qa_examples(const std::string& key) {
    const auto p = cfg_.path(key);
    if (p.empty() || !fs::exists(p)) return {};
    return evaluation::load_qa_examples(p);
  }

  /// Examples of the given split for the current task, capped by run.max_examples.
  std::vector<Example> examples(bool train) {
    std::vector<Example> ex;
    if (qa()) {
      ex = qa_examples(train ? "paths.qa_train" : "paths.qa_eval");
    } else {
      ex = evaluation::segment_streams(streams(train ? "paths.lm_train" : "paths.lm_eval"), lm_cfg());
    }
    if (ex.empty()) throw Error(std::string("no ") + (train ? "training" : "evaluation") + " examples for task " + task_);
    const auto cap = cfg_.size("run.max_examples");
    if (cap > 0 && ex.size() > cap) ex.resize(cap);
    return ex;
  }

  /// Texts defining the built-in LM and encoder vocabularies.
  const std::vector<std::string>& vocab_texts() {
    if (vocab_texts_.empty()) {
      for (const auto& d : index().documents()) vocab_texts_.push_back(evaluation::render_document(d));
      for (const auto* key : {"paths.lm_train", "paths.lm_eval"}) {
        for (const auto& s : streams(key)) vocab_texts_.push_back(s.text);
      }
      for (const auto* key : {"paths.qa_train", "paths.qa_eval"}) {
        for (const auto& e : qa_examples(key)) vocab_texts_.push_back(e.query);
      }
    }
    return vocab_texts_;
  }

  const scoring::Scorer& scorer() {
    if (!scorer_) {
      if (cfg_.str("scorer.kind") == "remote") {
        scorer_ = std::make_unique<scoring::RemoteScorer>(remote_config(cfg_.str("scorer.bridge_url")));
      } else {
        std::vector<std::string> counts;
        for (const auto& s : streams("paths.lm_train")) counts.push_back(s.text);
        scoring::CacheLmConfig lc;
        lc.order = static_cast<int>(cfg_.integer("scorer.lm_order"));
        lc.lambda_cache = cfg_.real("scorer.lambda_cache");
        lc.alpha = cfg_.real("scorer.alpha");
        scorer_ = std::make_unique<scoring::BuiltinScorer>(
            scoring::CacheNgramLm::train(counts, vocab_texts(), lc), scoring::TemplateReader(stopwords()));
      }
    }
    return *scorer_;
  }

  scoring::RemoteConfig remote_config(const std::string& url) const {
    if (url.empty()) throw ConfigError("scorer.bridge_url", "required for remote scoring");
    scoring::RemoteConfig rc;
    rc.base_url = url;
    rc.model = cfg_.str("scorer.model");
    rc.timeout_ms = static_cast<int>(cfg_.integer("scorer.timeout_ms"));
    rc.retries = static_cast<int>(cfg_.integer("scorer.retries"));
    rc.max_in_flight = static_cast<unsigned>(cfg_.integer("scorer.max_in_flight"));
    return rc;
  }

  const scoring::Critic& critic() {
    if (!critic_) {
      std::vector<evaluation::Demo> demos;
      if (qa()) {
        const auto pool = evaluation::demos_from_examples(qa_examples("paths.qa_train"));
        demos = evaluation::sample_demos(pool, static_cast<std::uint64_t>(cfg_.integer("qa.demo_seed")));
      }
      critic_ = std::make_unique<scoring::Critic>(scorer(), std::move(demos), cfg_.size("qa.max_answer_tokens"));
    }
    return *critic_;
  }

  /// Untrained encoder whose vocabulary is the text of the training instances
  /// (queries and candidate sentences), so words seen only at evaluation time
  /// are out of vocabulary.
  const extractive::DualEncoder& init_encoder_from(std::span<const extractive::TrainingInstance> instances) {
    std::vector<std::string> texts;
    for (const auto& inst : instances) {
      texts.push_back(inst.example.query);
      texts.insert(texts.end(), inst.candidates.begin(), inst.candidates.end());
    }
    init_encoder_ = std::make_unique<extractive::DualEncoder>(extractive::DualEncoder::initialize(
        texts, cfg_.size("extractive.dim"), derive_seed(seed(), fnv1a64("encoder"))));
    return *init_encoder_;
  }

  const extractive::DualEncoder& initial_encoder() {
    if (!init_encoder_) {
      const auto p = out("encoder_init_" + task_ + ".bin");
      if (!fs::exists(p)) throw Error("missing " + p.string() + "; run gen-extractive-data first");
      init_encoder_ = std::make_unique<extractive::DualEncoder>(extractive::DualEncoder::load(p));
    }
    return *init_encoder_;
  }

  const extractive::DualEncoder& trained_encoder() {
    if (!trained_encoder_) {
      const auto p = out("encoder_" + task_ + ".bin");
      if (!fs::exists(p)) throw Error("missing " + p.string() + "; run train-extractive first");
      trained_encoder_ = std::make_unique<extractive::DualEncoder>(extractive::DualEncoder::load(p));
    }
    return *trained_encoder_;
  }

  std::vector<abstractive::PromptTemplate> prompts() const {
    if (const auto p = cfg_.path("paths.prompts"); !p.empty()) return abstractive::load_prompts(p);
    return abstractive::default_prompts();
  }
  abstractive::Task prompt_task() const { return qa() ? abstractive::Task::qa : abstractive::Task::lm; }

  /// Prompts the teacher runs for the current task.
  std::vector<abstractive::PromptTemplate> teacher_prompts() const {
    const auto all = prompts();
    if (qa()) return {abstractive::find_prompt(all, abstractive::Task::qa, cfg_.str("abstractive.qa_prompt"))};
    auto lm = abstractive::prompts_for(all, abstractive::Task::lm);
    if (lm.empty()) throw Error("no lm prompts available");
    return lm;
  }

  abstractive::PromptTemplate inference_prompt() const {
    const auto all = prompts();
    if (qa()) return abstractive::find_prompt(all, abstractive::Task::qa, cfg_.str("abstractive.qa_prompt"));
    if (const auto& id = cfg_.str("abstractive.lm_prompt"); !id.empty()) {
      return abstractive::find_prompt(all, abstractive::Task::lm, id);
    }
    return teacher_prompts().front();
  }

  const abstractive::Teacher& teacher() {
    if (!teacher_) {
      if (cfg_.str("abstractive.teacher") == "remote") {
        auto url = cfg_.str("abstractive.teacher_url");
        if (url.empty()) url = cfg_.str("scorer.bridge_url");
        teacher_client_ = std::make_unique<scoring::RemoteScorer>(remote_config(url));
        teacher_ = std::make_unique<abstractive::GenerationTeacher>(
            *teacher_client_, abstractive::teacher_params(cfg_.size("abstractive.teacher_max_tokens")));
      } else {
        teacher_ = std::make_unique<abstractive::HeuristicTeacher>();
      }
    }
    return *teacher_;
  }

  evaluation::Retriever retriever(std::size_t top_k) {
    return {&index(), top_k, !qa()};
  }

  std::unique_ptr<Compressor> compressor(const std::string& policy) {
    const auto top_n = cfg_.size("compress.top_n");
    if (policy == "none") return std::make_unique<baselines::NoRetrievalCompressor>();
    if (policy == "empty") return std::make_unique<baselines::EmptyCompressor>();
    if (policy == "full-docs") return std::make_unique<baselines::FullDocsCompressor>(qa());
    if (policy == "bow") return std::make_unique<baselines::BowCompressor>();
    if (policy == "ne") {
      if (const auto p = cfg_.path("paths.ne_annotations"); !p.empty()) {
        return std::make_unique<baselines::NeCompressor>(
            baselines::NamedEntityTagger::annotations(baselines::load_entity_annotations(p)));
      }
      return std::make_unique<baselines::NeCompressor>(baselines::NamedEntityTagger::heuristic(stopwords()));
    }
    if (policy == "random") {
      return std::make_unique<baselines::RandomSentenceCompressor>(derive_seed(seed(), fnv1a64("random")));
    }
    if (policy == "bm25-sent") return std::make_unique<baselines::RankCompressor>(baselines::RankKind::bm25, top_n);
    if (policy == "embed-sent") {
      return std::make_unique<baselines::RankCompressor>(baselines::RankKind::embedding, top_n, &initial_encoder());
    }
    if (policy == "extractive") {
      return std::make_unique<extractive::ExtractiveCompressor>(trained_encoder(), top_n, "extractive", tokenizer());
    }
    if (policy == "abstractive") {
      if (const auto p = cfg_.path("paths.summaries"); !p.empty()) {
        return std::make_unique<abstractive::RecordedCompressor>(
            abstractive::RecordedCompressor::load(p.string(), "abstractive", tokenizer()));
      }
      if (cfg_.str("scorer.kind") != "remote") {
        throw ConfigError("paths.summaries",
                          "the abstractive policy needs recorded summaries or scorer.kind = remote");
      }
      return std::make_unique<abstractive::AbstractiveCompressor>(
          scorer(), inference_prompt(), cfg_.size("abstractive.max_tokens"), tokenizer());
    }
    if (policy == "oracle-ext") return std::make_unique<baselines::OracleExtractiveCompressor>(critic());
    if (policy == "oracle-abs") {
      return std::make_unique<abstractive::OracleAbstractiveCompressor>(teacher(), teacher_prompts(), critic(),
                                                                        tokenizer());
    }
    throw ConfigError("compress.policy", "unknown policy '" + policy + "'");
  }

 private:
  const Config& cfg_;
  unsigned jobs_ = 1;
  std::string task_;
  std::optional<corpus::WordList> stopwords_;
  std::optional<corpus::WordList> abbrevs_;
  std::optional<corpus::Tokenizer> tok_;
  std::unique_ptr<retrieval::Bm25Index> index_;
  std::map<std::string, std::unique_ptr<std::vector<evaluation::StreamDoc>>> streams_;
  std::vector<std::string> vocab_texts_;
  std::unique_ptr<scoring::Scorer> scorer_;
  std::unique_ptr<scoring::Critic> critic_;
  std::unique_ptr<extractive::DualEncoder> init_encoder_;
  std::unique_ptr<extractive::DualEncoder> trained_encoder_;
  std::unique_ptr<scoring::Scorer> teacher_client_;
  std::unique_ptr<abstractive::Teacher> teacher_;
};

void write_json(const fs::path& p, const json& j) {
  fs::create_directories(p.parent_path());
  write_file_atomic(p, j.dump(2) + "\n");
}

void write_jsonl(const fs::path& p, const std::vector<json>& rows) {
  fs::create_directories(p.parent_path());
  write_file_atomic(p, to_jsonl(rows));
}

int cmd_synth(Context& ctx) {
  const auto& cfg = ctx.cfg();
  SynthConfig sc;
  sc.entities = cfg.size("synth.entities");
  sc.train_entities = cfg.size("synth.train_entities");
  sc.eval_entities = cfg.size("synth.eval_entities");
  sc.attributes = cfg.size("synth.attributes");
  sc.seed = ctx.seed();
  const auto data = generate_synthetic(sc);
  auto put = [&](const char* key, const std::string& contents) {
    const auto p = cfg.path(key);
    if (p.empty()) throw ConfigError(key, "required by synth");
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_file_atomic(p, contents);
  };
  put("paths.corpus", article_jsonl(data.articles));
  put("paths.lm_train", stream_jsonl(data.lm_train));
  put("paths.lm_eval", stream_jsonl(data.lm_eval));
  put("paths.qa_train", qa_jsonl(data.qa_train));
  put("paths.qa_eval", qa_jsonl(data.qa_eval));
  log::info("synth: " + std::to_string(data.articles.size()) + " articles, " +
            std::to_string(data.lm_train.size()) + " train / " + std::to_string(data.lm_eval.size()) +
            " eval streams");
  return kExitOk;
}

int cmd_build_index(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const auto articles = corpus::ingest_articles(cfg.path("paths.corpus"));
  auto docs = corpus::chunk_articles(articles, cfg.size("corpus.chunk_words"));
  const auto n_docs = docs.size();
  const auto index = retrieval::Bm25Index::build(std::move(docs), {cfg.real("retrieval.k1"), cfg.real("retrieval.b")});
  fs::create_directories(cfg.output_dir());
  index.save(ctx.out("index.bin"));
  write_json(ctx.out("index_stats.json"),
             {{"articles", articles.size()}, {"documents", n_docs}, {"avg_doc_len", index.avg_doc_len()}});
  log::info("build-index: " + std::to_string(n_docs) + " documents");
  return kExitOk;
}

int cmd_gen_extractive(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const auto examples = ctx.examples(true);
  const auto top_docs = cfg.size("extractive.top_docs");
  const auto top_sentences = cfg.size("extractive.top_sentences");
  const auto& index = ctx.index();
  const auto& abbrevs = ctx.abbreviations();
  std::vector<extractive::TrainingInstance> instances(examples.size());
  const retrieval::Bm25SentenceRanker ranker({cfg.real("retrieval.k1"), cfg.real("retrieval.b")});
  const bool exclude = !ctx.qa();
  parallel_for(examples.size(), ctx.jobs(), [&](std::size_t i) {
    const auto& ex = examples[i];
    const auto excl = exclude && !ex.source_article.empty() ? retrieval::Exclusion::article(ex.source_article)
                                                            : retrieval::Exclusion::none();
    auto retrieved = index.search(ex.query, top_docs, excl);
    retrieved.example_id = ex.id;
    instances[i].example = ex;
    for (auto& c : retrieval::candidate_pool(retrieved, ex.query, ranker, top_docs, top_sentences, abbrevs)) {
      instances[i].candidates.push_back(std::move(c.text));
    }
  });
  const auto& critic = ctx.critic();
  const auto& encoder = ctx.init_encoder_from(instances);
  fs::create_directories(cfg.output_dir());
  encoder.save(ctx.out("encoder_init_" + ctx.task() + ".bin"));
  extractive::ContrastiveOptions opts;
  opts.epsilon = cfg.real("extractive.epsilon");
  opts.max_negatives = cfg.size("extractive.max_negatives");
  opts.jobs = ctx.jobs();
  extractive::ContrastiveStats stats;
  const auto records = ctx.qa() ? extractive::build_contrastive_qa(instances, critic, encoder, opts, &stats)
                                : extractive::build_contrastive_lm(instances, critic, encoder, opts, &stats);
  std::vector<json> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(extractive::to_json(r));
  write_jsonl(ctx.out("contrastive_" + ctx.task() + ".jsonl"), rows);
  write_json(ctx.out("contrastive_" + ctx.task() + "_stats.json"),
             {{"examples", stats.examples},
              {"emitted", stats.emitted},
              {"dropped", stats.dropped},
              {"mean_negatives", stats.mean_negatives},
              {"epsilon", ctx.qa() ? 0.0 : opts.epsilon}});
  log::info("gen-extractive-data: " + std::to_string(stats.emitted) + " records from " +
            std::to_string(stats.examples) + " examples");
  return kExitOk;
}

int cmd_train_extractive(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const auto src = ctx.out("contrastive_" + ctx.task() + ".jsonl");
  if (!fs::exists(src)) throw Error("missing " + src.string() + "; run gen-extractive-data first");
  const auto records = extractive::load_contrastive(src);
  auto model = ctx.initial_encoder();
  if (model.dim() != cfg.size("extractive.dim")) {
    throw ConfigError("extractive.dim", "initial encoder has dim " + std::to_string(model.dim()) +
                                            "; rerun gen-extractive-data with this setting");
  }
  extractive::TrainConfig tc;
  tc.optimizer = cfg.str("extractive.optimizer") == "sgd" ? extractive::TrainConfig::Optimizer::sgd
                                                          : extractive::TrainConfig::Optimizer::adam;
  tc.learning_rate = cfg.real("extractive.lr");
  tc.batch_size = cfg.size("extractive.batch_size");
  tc.epochs = cfg.size("extractive.epochs");
  tc.warmup_steps = cfg.size("extractive.warmup_steps");
  tc.seed = derive_seed(ctx.seed(), fnv1a64("train"));
  const auto result = extractive::train(model, records, tc);
  model.save(ctx.out("encoder_" + ctx.task() + ".bin"));
  write_json(ctx.out("train_" + ctx.task() + ".json"),
             {{"records", records.size()},
              {"steps", result.steps},
              {"epoch_loss", result.epoch_loss},
              {"step_loss", result.step_loss}});
  if (!result.epoch_loss.empty()) {
    log::info("train-extractive: final epoch loss " + std::to_string(result.epoch_loss.back()));
  }
  return kExitOk;
}

int cmd_gen_abstractive(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const auto examples = ctx.examples(true);
  auto retriever = ctx.retriever(cfg.size("retrieval.top_k"));
  std::vector<abstractive::DistillInstance> instances(examples.size());
  parallel_for(examples.size(), ctx.jobs(), [&](std::size_t i) {
    instances[i].example = examples[i];
    instances[i].docs = rendered_documents(retriever.retrieve(examples[i]));
  });
  abstractive::DistillOptions opts;
  opts.jobs = ctx.jobs();
  opts.drop_no_improvement = cfg.boolean("abstractive.drop_no_improvement");
  opts.require_gold_in_docs = cfg.boolean("abstractive.require_gold_in_docs");
  abstractive::DistillStats stats;
  const auto prompts = ctx.teacher_prompts();
  const auto& teacher = ctx.teacher();
  const auto& critic = ctx.critic();
  const auto records = ctx.qa() ? abstractive::build_distill_qa(instances, teacher, critic, prompts.front(), opts, &stats)
                                : abstractive::build_distill_lm(instances, teacher, critic, prompts, opts, &stats);
  std::vector<json> kept;
  std::vector<json> rejected;
  for (const auto& r : records) (r.kept ? kept : rejected).push_back(abstractive::to_json(r));
  write_jsonl(ctx.out("distill_" + ctx.task() + ".jsonl"), kept);
  write_jsonl(ctx.out("distill_" + ctx.task() + "_rejected.jsonl"), rejected);
  auto sj = stats.to_json();
  sj["teacher"] = teacher.name();
  write_json(ctx.out("distill_" + ctx.task() + "_stats.json"), sj);
  log::info("gen-abstractive-data: " + std::to_string(stats.kept) + " kept of " + std::to_string(stats.examples));
  return kExitOk;
}

evaluation::EvalReport evaluate(Context& ctx, const std::string& policy) {
  const auto examples = ctx.examples(false);
  auto compressor = ctx.compressor(policy);
  const auto retriever = ctx.retriever(ctx.cfg().size("retrieval.top_k"));
  const auto& critic = ctx.critic();
  auto report = ctx.qa() ? evaluation::eval_qa(critic, examples, retriever, *compressor, {ctx.jobs()})
                         : evaluation::eval_lm(critic, examples, retriever, *compressor, {ctx.jobs()});
  report.config = ctx.cfg().fingerprint_json();
  report.fingerprint = evaluation::config_fingerprint(report.config);
  return report;
}

int cmd_eval(Context& ctx, bool qa) {
  if (ctx.qa() != qa) throw ConfigError("run.task", std::string("eval-") + (qa ? "qa" : "lm") + " requires run.task = " + (qa ? "qa" : "lm"));
  const auto& policy = ctx.cfg().str("compress.policy");
  const auto report = evaluate(ctx, policy);
  evaluation::write_report(report, ctx.cfg().output_dir(), "report_" + ctx.task() + "_" + policy);
  if (qa) {
    log::info("eval-qa " + policy + ": EM " + std::to_string(report.em) + " F1 " + std::to_string(report.f1));
  } else {
    log::info("eval-lm " + policy + ": PPL " + std::to_string(report.ppl));
  }
  if (report.budget_exceeded) {
    log::error("failure budget exceeded: " + std::to_string(report.failures) + " failed examples");
    return kExitFailureBudget;
  }
  return kExitOk;
}

int cmd_compress(Context& ctx) {
  const auto& policy = ctx.cfg().str("compress.policy");
  const auto examples = ctx.examples(false);
  auto compressor = ctx.compressor(policy);
  const auto results = evaluation::compress_all(examples, ctx.retriever(ctx.cfg().size("retrieval.top_k")),
                                                *compressor, ctx.jobs());
  std::vector<json> rows;
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto j = to_json(results[i]);
    j["example_id"] = examples[i].id;
    rows.push_back(std::move(j));
  }
  const auto stem = "compressed_" + ctx.task() + "_" + policy;
  write_jsonl(ctx.out(stem + ".jsonl"), rows);
  write_json(ctx.out(stem + "_stats.json"), evaluation::to_json(evaluation::token_stats(results)));
  return kExitOk;
}

std::vector<evaluation::EvalRow> rows_from_report(const json& j) {
  std::vector<evaluation::EvalRow> rows;
  for (const auto& r : j.at("rows")) {
    evaluation::EvalRow row;
    row.example_id = r.at("example_id").get<std::string>();
    row.failed = r.at("failed").get<bool>();
    row.summary = r.at("summary").get<std::string>();
    row.summary_tokens = r.at("summary_tokens").get<std::size_t>();
    row.source_tokens = r.at("source_tokens").get<std::size_t>();
    if (r.contains("logprob")) {
      row.logprob = r.at("logprob").get<double>();
      row.target_tokens = r.at("target_tokens").get<std::size_t>();
    }
    if (r.contains("prediction")) {
      row.prediction = r.at("prediction").get<std::string>();
      row.golds = r.at("golds").get<std::vector<std::string>>();
      row.em = r.at("em").get<int>();
      row.f1 = r.at("f1").get<double>();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_analyze(Context& ctx) {
  const auto& cfg = ctx.cfg();
  const auto& policy = cfg.str("compress.policy");
  auto report_path = cfg.path("paths.report");
  if (report_path.empty()) report_path = ctx.out("report_" + ctx.task() + "_" + policy + ".json");
  const auto report = json::parse(read_file(report_path));
  const auto rows = rows_from_report(report);
  json out{{"report", report_path.filename().string()},
           {"policy", report.at("policy")},
           {"tokens", evaluation::to_json(evaluation::token_stats(rows))}};
  std::string md = "# Analysis: " + report.at("policy").get<std::string>() + "\n\n";
  const auto ts = evaluation::token_stats(rows);
  md += "- mean summary tokens: " + std::to_string(ts.mean_tokens) + "\n";
  md += "- compression ratio: " + std::to_string(ts.ratio) + "\n";
  md += "- empty fraction: " + std::to_string(ts.empty_fraction) + "\n";
  if (report.at("task") == "qa") {
    const auto cs = evaluation::copy_analysis(rows);
    out["copy"] = evaluation::to_json(cs);
    auto f = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string("n/a"); };
    md += "- gold in evidence (%): " + f(cs.pct_gold_in_evidence) + "\n";
    md += "- prediction copied, gold present (%): " + f(cs.pct_pred_in_evidence_given_gold_present) + "\n";
    md += "- prediction copied, gold absent (%): " + f(cs.pct_pred_in_evidence_given_gold_absent) + "\n";
  }
  if (const auto bp = cfg.path("paths.baseline_report"); !bp.empty()) {
    const auto base = json::parse(read_file(bp));
    const auto base_rows = rows_from_report(base);
    if (base_rows.size() != rows.size()) throw Error("baseline report has a different number of rows");
    std::size_t compared = 0;
    std::size_t wins = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].example_id != base_rows[i].example_id) throw Error("baseline rows are not aligned");
      const auto a = rows[i].ppl();
      const auto b = base_rows[i].ppl();
      if (rows[i].failed || base_rows[i].failed || !a || !b) continue;
      ++compared;
      if (*a < *b) ++wins;
    }
    const double ppl = report.at("aggregate").at("ppl").get<double>();
    const double base_ppl = base.at("aggregate").at("ppl").get<double>();
    const double win_rate = compared == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(compared);
    const double rel = base_ppl == 0.0 ? 0.0 : (base_ppl - ppl) / base_ppl;
    out["comparison"] = {{"baseline", base.at("policy")}, {"compared", compared}, {"wins", wins},
                         {"win_rate", win_rate},          {"ppl", ppl},           {"baseline_ppl", base_ppl},
                         {"relative_improvement", rel}};
    md += "- lower PPL than " + base.at("policy").get<std::string>() + " on " + std::to_string(wins) + "/" +
          std::to_string(compared) + " examples; PPL " + std::to_string(ppl) + " vs " + std::to_string(base_ppl) + "\n";
  }
  const auto stem = "analysis_" + report.at("task").get<std::string>() + "_" + report.at("policy").get<std::string>();
  write_json(ctx.out(stem + ".json"), out);
  write_file_atomic(ctx.out(stem + ".md"), md);
  return kExitOk;
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> list = {
      {"synth", "write a synthetic corpus, LM streams and QA sets to the data paths"},
      {"build-index", "chunk the corpus and build the BM25 index"},
      {"gen-extractive-data", "build contrastive records for the extractive compressor"},
      {"train-extractive", "train the dual encoder on the contrastive records"},
      {"gen-abstractive-data", "build critic-filtered distillation records"},
      {"compress", "run the compression policy over the evaluation split"},
      {"eval-lm", "retrieval-augmented perplexity with the compression policy"},
      {"eval-qa", "few-shot QA exact match and F1 with the compression policy"},
      {"analyze", "token statistics, copy analysis and baseline comparison for a report"},
  };
  return list;
}

int run_command(std::string_view name, const Config& cfg) {
  cfg.validate();
  Context ctx(cfg);
  if (name == "synth") return cmd_synth(ctx);
  if (name == "build-index") return cmd_build_index(ctx);
  if (name == "gen-extractive-data") return cmd_gen_extractive(ctx);
  if (name == "train-extractive") return cmd_train_extractive(ctx);
  if (name == "gen-abstractive-data") return cmd_gen_abstractive(ctx);
  if (name == "compress") return cmd_compress(ctx);
  if (name == "eval-lm") return cmd_eval(ctx, false);
  if (name == "eval-qa") return cmd_eval(ctx, true);
  if (name == "analyze") return cmd_analyze(ctx);
  throw Error("unknown command '" + std::string(name) + "'");
}

}  // namespace recomp::pipeline
