// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <string_view>

namespace recomp::scoring {

/// Lowercase, drop punctuation, drop the articles a/an/the, collapse spaces.
std::string normalize_answer(std::string_view s);

/// 1 iff the normalized prediction equals some normalized gold.
int em_score(std::string_view pred, std::span<const std::string> golds);

/// Max over golds of token-multiset F1 between normalized strings. Two empty
/// strings score 1; empty against non-empty scores 0.
double f1_score(std::string_view pred, std::span<const std::string> golds);

/// Normalized substring membership (same normalization as em_score).
bool contains_normalized(std::string_view haystack, std::string_view needle);

}  // namespace recomp::scoring
