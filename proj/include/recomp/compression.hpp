// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recomp/common/io.hpp"
#include "recomp/corpus/tokenizer.hpp"
#include "recomp/retrieval/bm25.hpp"
#include "recomp/scoring/example.hpp"

namespace recomp {

/// Output of any compression policy, with token accounting against the
/// uncompressed retrieved documents.
struct CompressionResult {
  std::string summary;
  std::size_t tokens = 0;
  std::size_t source_tokens = 0;
  double ratio = 0.0;  // tokens / source_tokens, 0 when the source is empty
  std::string policy;
  /// Pool indices of chosen sentences (sentence-level policies only).
  std::vector<std::size_t> selected;
};

json to_json(const CompressionResult& r);

CompressionResult make_result(std::string summary, std::size_t source_tokens, std::string policy,
                              const corpus::Tokenizer& tok);

/// The concatenated documents used as the compression-ratio denominator.
std::string source_text(std::span<const retrieval::Hit> hits);

std::vector<const corpus::Document*> hit_documents(std::span<const retrieval::Hit> hits);

/// "{title}: {text}" per hit, in hit (descending score) order.
std::vector<std::string> rendered_documents(std::span<const retrieval::Hit> hits);

/// Joins the `top_n` best pool sentences (descending score, ties by pool
/// position) with single spaces.
CompressionResult select_top_sentences(std::span<const std::string> pool,
                                       std::span<const double> scores, std::size_t top_n,
                                       std::size_t source_tokens, std::string policy,
                                       const corpus::Tokenizer& tok);

struct CompressionInput {
  const scoring::Example* example = nullptr;
  std::span<const retrieval::Hit> hits;
  std::size_t ordinal = 0;  // stable example position, used for per-example seeds
};

/// A compression policy applied per example by the evaluation harnesses.
class Compressor {
 public:
  virtual ~Compressor() = default;
  virtual CompressionResult compress(const CompressionInput& in) const = 0;
  virtual std::string policy() const = 0;
  /// False for the no-retrieval baseline, which skips the retriever entirely.
  virtual bool uses_retrieval() const { return true; }
};

const corpus::Tokenizer& default_tokenizer();

}  // namespace recomp
