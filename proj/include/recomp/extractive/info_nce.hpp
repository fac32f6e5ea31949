// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "recomp/extractive/contrastive_record.hpp"
#include "recomp/extractive/dual_encoder.hpp"

namespace recomp::extractive {

/// Gradient restricted to the embedding rows a record touches. Every row not
/// listed has an exactly zero gradient.
class SparseGradient {
 public:
  explicit SparseGradient(std::size_t dim) : dim_(dim) {}

  std::span<double> row(std::uint32_t id);
  /// Empty span when the row is untouched.
  std::span<const double> find(std::uint32_t id) const;
  const std::vector<std::uint32_t>& rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
  std::vector<std::uint32_t> rows_;
  std::vector<double> values_;
  std::unordered_map<std::uint32_t, std::size_t> slot_;
};

/// −log( e^{sim(x,p)} / (e^{sim(x,p)} + Σ_j e^{sim(x,n_j)}) ), evaluated as a
/// max-shifted log-sum-exp.
double info_nce_loss(const DualEncoder& model, const ContrastiveRecord& record);

/// Loss from raw similarities; sims[0] is the positive.
double info_nce_from_sims(std::span<const double> sims);

/// Exact gradient of info_nce_loss with respect to the embedding table.
///
/// With softmax weights w_k over sims s_k = <q, e_k>, the similarity
/// gradients are g_0 = w_0 − 1 and g_k = w_k; then dL/dq = Σ g_k e_k and
/// dL/de_k = g_k q. Each row t receives bag weight × the pooled gradient of
/// every text containing t (query and candidates share weights).
SparseGradient info_nce_grad(const DualEncoder& model, const ContrastiveRecord& record,
                             double* loss = nullptr);

}  // namespace recomp::extractive
