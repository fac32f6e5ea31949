// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recomp/retrieval/candidate_pool.hpp"

namespace recomp::extractive {

/// Normalized bag of in-vocabulary term ids: weights are count / (number of
/// in-vocabulary terms), so the embedding is a mean over token rows.
struct TermBag {
  std::vector<std::pair<std::uint32_t, double>> terms;  // ascending term id
};

/// Shared-weight bi-encoder: embed(text) is the mean of term rows, and
/// sim(a, b) = <embed(a), embed(b)>. Out-of-vocabulary terms are ignored; a
/// text with no known terms embeds to the zero vector.
class DualEncoder {
 public:
  static constexpr char kMagic[8] = {'R', 'C', 'M', 'P', 'D', 'E', 'N', 'C'};
  static constexpr std::uint8_t kFormatVersion = 1;

  /// Vocabulary from the terms of `texts` in first-seen order. Each row is
  /// drawn from N(0, 1/dim) with a seed derived from (seed, term), so a
  /// term's initial row does not depend on the rest of the vocabulary.
  static DualEncoder initialize(std::span<const std::string> texts, std::size_t dim,
                                std::uint64_t seed);
  static DualEncoder from_weights(std::vector<std::string> vocab, std::size_t dim,
                                  std::vector<double> weights);

  /// Checkpoint: magic, version byte, u32 dim, u32 |V|, length-prefixed vocab,
  /// row-major float32 matrix.
  void save(const std::filesystem::path& path) const;
  static DualEncoder load(const std::filesystem::path& path);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t vocab_size() const noexcept { return vocab_.size(); }
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  std::optional<std::uint32_t> id(std::string_view term) const;

  TermBag bag(std::string_view text) const;
  std::vector<double> embed(std::string_view text) const;
  std::vector<double> embed(const TermBag& bag) const;
  double similarity(std::string_view a, std::string_view b) const;

  std::span<const double> row(std::uint32_t id) const {
    return {weights_.data() + static_cast<std::size_t>(id) * dim_, dim_};
  }
  std::span<double> row(std::uint32_t id) {
    return {weights_.data() + static_cast<std::size_t>(id) * dim_, dim_};
  }
  std::span<double> weights() noexcept { return weights_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<double> weights_;
};

/// Inner-product sentence ranker backed by a dual encoder.
class EmbeddingSentenceRanker final : public retrieval::SentenceRanker {
 public:
  explicit EmbeddingSentenceRanker(const DualEncoder& model) : model_(&model) {}
  std::vector<double> score(std::string_view query,
                            std::span<const std::string> sentences) const override;

 private:
  const DualEncoder* model_;
};

}  // namespace recomp::extractive
