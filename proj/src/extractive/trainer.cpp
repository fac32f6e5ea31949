// SPDX-License-Identifier: Apache-2.0
#include "recomp/extractive/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "recomp/common/error.hpp"
#include "recomp/common/hash.hpp"
#include "recomp/common/rng.hpp"
#include "recomp/extractive/info_nce.hpp"
#include "recomp/simd/kernels.hpp"

namespace recomp::extractive {

TrainResult train(DualEncoder& model, std::span<const ContrastiveRecord> records,
                  const TrainConfig& cfg) {
  if (records.empty()) throw Error("training needs at least one contrastive record");
  if (cfg.batch_size == 0) throw Error("batch size must be >= 1");
  if (!(cfg.learning_rate > 0.0)) throw Error("learning rate must be > 0");

  TrainResult result;
  auto weights = model.weights();
  std::vector<double> grad(weights.size(), 0.0);
  std::vector<double> m1, m2;
  if (cfg.optimizer == TrainConfig::Optimizer::adam) {
    m1.assign(weights.size(), 0.0);
    m2.assign(weights.size(), 0.0);
  }
  std::vector<std::uint32_t> touched;
  std::vector<char> is_touched(model.vocab_size(), 0);
  const std::size_t d = model.dim();

  std::vector<std::size_t> order(records.size());
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(cfg.seed, epoch));
    rng.shuffle(order);

    double epoch_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const double inv = 1.0 / static_cast<double>(end - start);
      double batch_sum = 0.0;
      for (std::size_t i = start; i < end; ++i) {
        const auto& rec = records[order[i]];
        double loss = 0.0;
        const auto g = info_nce_grad(model, rec, &loss);
        if (!std::isfinite(loss)) {
          std::ostringstream msg;
          msg << "non-finite loss " << loss << " at epoch " << epoch << ", step "
              << result.steps << ", record '" << rec.example_id << "'";
          throw Error(msg.str());
        }
        batch_sum += loss;
        for (auto row : g.rows()) {
          if (!is_touched[row]) {
            is_touched[row] = 1;
            touched.push_back(row);
          }
          simd::axpy(inv, g.find(row), std::span(grad).subspan(std::size_t{row} * d, d));
        }
      }
      epoch_sum += batch_sum;
      result.step_loss.push_back(batch_sum * inv);

      ++result.steps;
      double lr = cfg.learning_rate;
      if (cfg.warmup_steps > 0) {
        lr *= std::min(1.0, static_cast<double>(result.steps) /
                                static_cast<double>(cfg.warmup_steps));
      }
      if (cfg.optimizer == TrainConfig::Optimizer::adam) {
        const double t = static_cast<double>(result.steps);
        simd::AdamStep step;
        step.lr = lr * std::sqrt(1.0 - std::pow(cfg.beta2, t)) / (1.0 - std::pow(cfg.beta1, t));
        step.beta1 = cfg.beta1;
        step.beta2 = cfg.beta2;
        step.eps = cfg.adam_eps;
        simd::adam_step(weights, grad, m1, m2, step);
      } else {
        for (auto row : touched) {
          const auto off = std::size_t{row} * d;
          simd::axpy(-lr, std::span<const double>(grad).subspan(off, d), weights.subspan(off, d));
        }
      }
      for (auto row : touched) {
        std::fill_n(grad.begin() + static_cast<std::ptrdiff_t>(std::size_t{row} * d), d, 0.0);
        is_touched[row] = 0;
      }
      touched.clear();
    }
    result.epoch_loss.push_back(epoch_sum / static_cast<double>(records.size()));
  }
  return result;
}

}  // namespace recomp::extractive
