// SPDX-License-Identifier: Apache-2.0
#include "recomp/extractive/dual_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "recomp/common/error.hpp"
#include "recomp/common/hash.hpp"
#include "recomp/common/io.hpp"
#include "recomp/common/rng.hpp"
#include "recomp/corpus/tokenizer.hpp"
#include "recomp/simd/kernels.hpp"

namespace recomp::extractive {

DualEncoder DualEncoder::initialize(std::span<const std::string> texts, std::size_t dim,
                                    std::uint64_t seed) {
  if (dim == 0) throw Error("embedding dimension must be >= 1");
  DualEncoder m;
  m.dim_ = dim;
  for (const auto& text : texts) {
    for (auto& t : corpus::normalized_terms(text)) {
      if (m.ids_.try_emplace(t, static_cast<std::uint32_t>(m.vocab_.size())).second) {
        m.vocab_.push_back(std::move(t));
      }
    }
  }
  m.weights_.resize(m.vocab_.size() * dim);
  const double sd = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::uint32_t v = 0; v < m.vocab_.size(); ++v) {
    Rng rng(derive_seed(seed, fnv1a64(m.vocab_[v])));
    for (auto& w : m.row(v)) w = sd * rng.normal();
  }
  return m;
}

DualEncoder DualEncoder::from_weights(std::vector<std::string> vocab, std::size_t dim,
                                      std::vector<double> weights) {
  if (dim == 0) throw Error("embedding dimension must be >= 1");
  if (weights.size() != vocab.size() * dim) throw Error("weight matrix does not match |V| x dim");
  DualEncoder m;
  m.dim_ = dim;
  m.vocab_ = std::move(vocab);
  for (std::uint32_t v = 0; v < m.vocab_.size(); ++v) {
    if (!m.ids_.try_emplace(m.vocab_[v], v).second) {
      throw Error("duplicate vocabulary entry '" + m.vocab_[v] + "'");
    }
  }
  m.weights_ = std::move(weights);
  return m;
}

std::optional<std::uint32_t> DualEncoder::id(std::string_view term) const {
  auto it = ids_.find(std::string(term));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

TermBag DualEncoder::bag(std::string_view text) const {
  TermBag b;
  std::unordered_map<std::uint32_t, std::size_t> slot;
  std::size_t n = 0;
  for (const auto& t : corpus::normalized_terms(text)) {
    auto it = ids_.find(t);
    if (it == ids_.end()) continue;
    ++n;
    auto [s, fresh] = slot.try_emplace(it->second, b.terms.size());
    if (fresh) b.terms.emplace_back(it->second, 0.0);
    b.terms[s->second].second += 1.0;
  }
  for (auto& [id, w] : b.terms) w /= static_cast<double>(n);
  // Term-id order makes the embedding a function of the bag alone, so permuted
  // texts get bit-identical vectors and tie exactly when ranked.
  std::sort(b.terms.begin(), b.terms.end());
  return b;
}

std::vector<double> DualEncoder::embed(const TermBag& bag) const {
  std::vector<double> out(dim_, 0.0);
  for (const auto& [id, w] : bag.terms) simd::axpy(w, row(id), out);
  return out;
}

std::vector<double> DualEncoder::embed(std::string_view text) const { return embed(bag(text)); }

double DualEncoder::similarity(std::string_view a, std::string_view b) const {
  return simd::dot(embed(a), embed(b));
}

void DualEncoder::save(const std::filesystem::path& path) const {
  BinaryWriter w;
  w.bytes(std::string_view(kMagic, sizeof(kMagic)));
  w.u8(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(dim_));
  w.u32(static_cast<std::uint32_t>(vocab_.size()));
  for (const auto& v : vocab_) w.str(v);
  for (double x : weights_) w.f32(static_cast<float>(x));
  write_file_atomic(path, w.data());
}

DualEncoder DualEncoder::load(const std::filesystem::path& path) {
  BinaryReader r(read_file(path), path.string());
  if (r.bytes(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    throw Error(path.string() + ": not a dual-encoder checkpoint");
  }
  if (const auto v = r.u8(); v != kFormatVersion) {
    throw Error(path.string() + ": unsupported checkpoint version " + std::to_string(v));
  }
  const std::size_t dim = r.u32();
  const std::size_t nv = r.u32();
  std::vector<std::string> vocab(nv);
  for (auto& v : vocab) v = r.str();
  std::vector<double> weights(nv * dim);
  for (auto& x : weights) x = r.f32();
  if (!r.at_end()) throw Error(path.string() + ": trailing bytes after checkpoint");
  return from_weights(std::move(vocab), dim, std::move(weights));
}

std::vector<double> EmbeddingSentenceRanker::score(std::string_view query,
                                                   std::span<const std::string> sentences) const {
  const auto q = model_->embed(query);
  std::vector<double> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(simd::dot(model_->embed(s), q));
  return out;
}

}  // namespace recomp::extractive
