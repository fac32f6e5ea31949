// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "recomp/compression.hpp"
#include "recomp/corpus/lexicon.hpp"
#include "recomp/extractive/dual_encoder.hpp"
#include "recomp/scoring/critic.hpp"

namespace recomp::baselines {

/// Non-punctuation tokens of `text` that are not stopwords, deduplicated in
/// first-occurrence order, joined by single spaces. Matching is
/// case-sensitive, so capitalized forms of stopwords survive.
std::string bag_of_words(std::string_view text,
                         const corpus::WordList& stopwords = corpus::default_stopwords());
CompressionResult bow_compress(std::string_view docs, const corpus::Tokenizer& tok = default_tokenizer(),
                               const corpus::WordList& stopwords = corpus::default_stopwords());

struct EntitySpan {
  std::string text;
  std::size_t start = 0;  // byte offsets into the document text
  std::size_t end = 0;
};

/// Annotations JSONL: {"doc_id","entities":[{"text","start","end"}]}.
using EntityAnnotations = std::unordered_map<std::string, std::vector<EntitySpan>>;
EntityAnnotations load_entity_annotations(const std::filesystem::path& path);

class NamedEntityTagger {
 public:
  enum class Kind { heuristic_capitalization, external_annotations };

  /// Maximal runs of capitalized words. A sentence-initial capitalized word
  /// counts only when the next word continues the run; a word ending in
  /// punctuation closes its run; runs made only of stopwords are dropped.
  static NamedEntityTagger heuristic(const corpus::WordList& stopwords = corpus::default_stopwords());
  /// Reads spans from annotations; documents without an entry have none.
  static NamedEntityTagger annotations(EntityAnnotations spans);

  Kind kind() const noexcept { return kind_; }
  /// Entities of one document in order of appearance (not deduplicated).
  std::vector<std::string> tag(const corpus::Document& doc) const;
  std::vector<std::string> tag_text(std::string_view text) const;

 private:
  Kind kind_ = Kind::heuristic_capitalization;
  const corpus::WordList* stopwords_ = nullptr;
  EntityAnnotations spans_;
};

/// Entities over `docs` in order, deduplicated by first occurrence, joined by
/// single spaces.
CompressionResult ne_compress(std::span<const corpus::Document* const> docs,
                              const NamedEntityTagger& tagger,
                              const corpus::Tokenizer& tok = default_tokenizer());

/// Uniform choice from the pool with a seeded generator. Empty pool gives the
/// empty summary.
CompressionResult random_sentence(std::span<const std::string> pool, std::uint64_t seed,
                                  std::size_t source_tokens,
                                  const corpus::Tokenizer& tok = default_tokenizer());

enum class RankKind { bm25, embedding };

CompressionResult rank_compress(RankKind kind, std::string_view x,
                                std::span<const corpus::Document* const> docs, std::size_t top_n,
                                const extractive::DualEncoder* model = nullptr,
                                const corpus::Tokenizer& tok = default_tokenizer());

/// Index of the candidate with the best end-task score (ties: lowest index).
std::size_t oracle_extractive_index(std::span<const std::string> candidates,
                                    const scoring::Critic& critic, const scoring::Example& ex,
                                    unsigned jobs = 1);
CompressionResult oracle_extractive(std::span<const std::string> candidates,
                                    const scoring::Critic& critic, const scoring::Example& ex,
                                    std::size_t source_tokens,
                                    const corpus::Tokenizer& tok = default_tokenizer());

// Compressor adapters used by the evaluation harnesses. Sentence policies draw
// from the decontextualized sentences of every retrieved document.

/// No retrieval at all.
class NoRetrievalCompressor final : public Compressor {
 public:
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return "none"; }
  bool uses_retrieval() const override { return false; }
};

/// Retrieves, then always returns the empty summary.
class EmptyCompressor final : public Compressor {
 public:
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return "empty"; }
};

/// All retrieved documents uncompressed. `ascending` puts the best document
/// last (QA evidence layout).
class FullDocsCompressor final : public Compressor {
 public:
  explicit FullDocsCompressor(bool ascending) : ascending_(ascending) {}
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return "full-docs"; }

 private:
  bool ascending_;
};

class BowCompressor final : public Compressor {
 public:
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return "bow"; }
};

class NeCompressor final : public Compressor {
 public:
  explicit NeCompressor(NamedEntityTagger tagger) : tagger_(std::move(tagger)) {}
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return "ne"; }

 private:
  NamedEntityTagger tagger_;
};

/// Seed per example: derive_seed(seed, ordinal).
class RandomSentenceCompressor final : public Compressor {
 public:
  explicit RandomSentenceCompressor(std::uint64_t seed) : seed_(seed) {}
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return "random"; }

 private:
  std::uint64_t seed_;
};

class RankCompressor final : public Compressor {
 public:
  RankCompressor(RankKind kind, std::size_t top_n, const extractive::DualEncoder* model = nullptr);
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return kind_ == RankKind::bm25 ? "bm25-sent" : "embed-sent"; }

 private:
  RankKind kind_;
  std::size_t top_n_;
  const extractive::DualEncoder* model_;
};

class OracleExtractiveCompressor final : public Compressor {
 public:
  explicit OracleExtractiveCompressor(const scoring::Critic& critic) : critic_(&critic) {}
  CompressionResult compress(const CompressionInput& in) const override;
  std::string policy() const override { return "oracle-ext"; }

 private:
  const scoring::Critic* critic_;
};

}  // namespace recomp::baselines
