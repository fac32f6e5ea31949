// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace recomp::scoring {

struct LogLik {
  double logprob = 0.0;  // nats, summed over target tokens
  std::size_t token_count = 0;
};

struct GenerateParams {
  std::size_t max_tokens = 32;
  double temperature = 0.0;
  double top_p = 1.0;
  std::vector<std::string> stop{"\n"};
};

/// The language model M behind Score(M, y, [s; x]).
class Scorer {
 public:
  virtual ~Scorer() = default;
  /// Σ_t log p(continuation_t | prefix ⊕ continuation_<t).
  virtual LogLik loglik(std::string_view prefix, std::string_view continuation) const = 0;
  virtual std::string generate(std::string_view prompt, const GenerateParams& params) const = 0;
  virtual std::string name() const = 0;
};

}  // namespace recomp::scoring
