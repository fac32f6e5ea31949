// SPDX-License-Identifier: Apache-2.0
#include "recomp/extractive/info_nce.hpp"

#include <algorithm>
#include <cmath>

#include "recomp/simd/kernels.hpp"

namespace recomp::extractive {

std::span<double> SparseGradient::row(std::uint32_t id) {
  auto [it, fresh] = slot_.try_emplace(id, rows_.size());
  if (fresh) {
    rows_.push_back(id);
    values_.resize(values_.size() + dim_, 0.0);
  }
  return {values_.data() + it->second * dim_, dim_};
}

std::span<const double> SparseGradient::find(std::uint32_t id) const {
  auto it = slot_.find(id);
  if (it == slot_.end()) return {};
  return {values_.data() + it->second * dim_, dim_};
}

double info_nce_from_sims(std::span<const double> sims) {
  const double m = *std::max_element(sims.begin(), sims.end());
  double z = 0.0;
  for (double s : sims) z += std::exp(s - m);
  return m + std::log(z) - sims[0];
}

namespace {

struct Forward {
  TermBag query_bag;
  std::vector<double> query;
  std::vector<TermBag> cand_bags;  // [0] positive, then negatives
  std::vector<std::vector<double>> cands;
  std::vector<double> sims;
};

Forward forward(const DualEncoder& model, const ContrastiveRecord& r) {
  Forward f;
  f.query_bag = model.bag(r.input);
  f.query = model.embed(f.query_bag);
  auto add = [&](const std::string& text) {
    f.cand_bags.push_back(model.bag(text));
    f.cands.push_back(model.embed(f.cand_bags.back()));
    f.sims.push_back(simd::dot(f.cands.back(), f.query));
  };
  add(r.positive);
  for (const auto& n : r.negatives) add(n);
  return f;
}

}  // namespace

double info_nce_loss(const DualEncoder& model, const ContrastiveRecord& record) {
  return info_nce_from_sims(forward(model, record).sims);
}

SparseGradient info_nce_grad(const DualEncoder& model, const ContrastiveRecord& record,
                             double* loss) {
  const auto f = forward(model, record);
  const std::size_t k = f.sims.size();
  const double m = *std::max_element(f.sims.begin(), f.sims.end());
  std::vector<double> g(k);
  double z = 0.0;
  for (std::size_t i = 0; i < k; ++i) z += (g[i] = std::exp(f.sims[i] - m));
  for (auto& x : g) x /= z;
  g[0] -= 1.0;
  if (loss) *loss = m + std::log(z) - f.sims[0];

  const std::size_t d = model.dim();
  std::vector<double> dq(d, 0.0);
  for (std::size_t i = 0; i < k; ++i) simd::axpy(g[i], f.cands[i], dq);

  SparseGradient grad(d);
  for (const auto& [id, w] : f.query_bag.terms) simd::axpy(w, dq, grad.row(id));
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& [id, w] : f.cand_bags[i].terms) simd::axpy(w * g[i], f.query, grad.row(id));
  }
  return grad;
}

}  // namespace recomp::extractive
