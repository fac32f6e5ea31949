// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <memory>
#include <semaphore>
#include <string>

#include "recomp/common/io.hpp"
#include "recomp/scoring/scorer.hpp"

namespace recomp::scoring {

struct RemoteConfig {
  std::string base_url;  // e.g. http://127.0.0.1:8765
  std::string model;
  int timeout_ms = 60000;
  int retries = 3;
  int backoff_ms = 250;  // doubled after every failed attempt
  unsigned max_in_flight = 8;

  /// RECOMP_BRIDGE_URL / RECOMP_BRIDGE_MODEL, falling back to `fallback`.
  static RemoteConfig from_env(RemoteConfig fallback);
  static RemoteConfig from_env();
};

/// Client for the lm-bridge wire protocol:
///   POST /v1/score    {"model","prefix","target"} -> {"logprob","target_token_count"}
///   POST /v1/generate {"model","prompt","max_tokens","temperature","top_p","stop"} -> {"text"}
///   GET  /health      -> {"status":"ok","model"}
/// Requests are idempotent. Transport failures and 5xx replies are retried
/// with exponential backoff; 4xx replies and malformed bodies fail at once.
/// Calls are synchronous per thread, so a response can only ever be paired
/// with the request that produced it; at most `max_in_flight` calls run
/// concurrently across threads.
class RemoteScorer final : public Scorer {
 public:
  explicit RemoteScorer(RemoteConfig cfg);

  LogLik loglik(std::string_view prefix, std::string_view continuation) const override;
  std::string generate(std::string_view prompt, const GenerateParams& params) const override;
  std::string name() const override { return "remote:" + cfg_.model; }

  /// GET /health; returns the served model name.
  std::string health() const;

  const RemoteConfig& config() const noexcept { return cfg_; }

 private:
  json call(const std::string& method, const std::string& path, const json* body) const;

  RemoteConfig cfg_;
  std::string host_;    // scheme://host[:port]
  std::string prefix_;  // path prefix, no trailing slash
  std::shared_ptr<std::counting_semaphore<>> slots_;
};

/// Response shape checks shared with the bridge fixtures; throw Error naming
/// the offending field.
void validate_score_response(const json& j);
void validate_generate_response(const json& j);
void validate_health_response(const json& j);

}  // namespace recomp::scoring
