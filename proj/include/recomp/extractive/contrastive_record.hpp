// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "recomp/common/io.hpp"

namespace recomp::extractive {

inline constexpr std::size_t kMaxNegatives = 5;

/// One (x, positive, negatives) training triple with the end-task scores that
/// justified it.
struct ContrastiveRecord {
  std::string example_id;
  std::string input;
  std::string positive;
  std::vector<std::string> negatives;
  double positive_score = 0.0;
  std::vector<double> negative_scores;
  friend bool operator==(const ContrastiveRecord&, const ContrastiveRecord&) = default;
};

json to_json(const ContrastiveRecord& r);
/// Throws Error on missing fields or when 1 <= |negatives| <= 5 is violated.
ContrastiveRecord contrastive_from_json(const json& j);

std::vector<ContrastiveRecord> load_contrastive(const std::filesystem::path& path);

}  // namespace recomp::extractive
