// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "recomp/extractive/contrastive_record.hpp"
#include "recomp/extractive/dual_encoder.hpp"

namespace recomp::extractive {

struct TrainConfig {
  enum class Optimizer { sgd, adam };
  Optimizer optimizer = Optimizer::adam;
  double learning_rate = 3e-2;
  std::size_t batch_size = 64;
  std::size_t epochs = 5;
  std::size_t warmup_steps = 0;  // linear ramp of the learning rate
  std::uint64_t seed = 13;       // fixes the per-epoch shuffle
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
};

struct TrainResult {
  std::vector<double> epoch_loss;  // mean pre-update loss over each epoch's records
  std::vector<double> step_loss;   // mean pre-update loss of each batch
  std::size_t steps = 0;
};

/// Mini-batch InfoNCE training, single-threaded for reproducibility: the same
/// seed and inputs give bit-identical loss curves. Throws Error with the
/// offending epoch/step/record when the loss becomes non-finite.
TrainResult train(DualEncoder& model, std::span<const ContrastiveRecord> records,
                  const TrainConfig& cfg);

}  // namespace recomp::extractive
