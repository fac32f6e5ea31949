// SPDX-License-Identifier: Apache-2.0
#include "recomp/scoring/remote_scorer.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "recomp/common/error.hpp"
#include "recomp/common/log.hpp"

namespace recomp::scoring {

RemoteConfig RemoteConfig::from_env(RemoteConfig fallback) {
  if (const char* url = std::getenv("RECOMP_BRIDGE_URL"); url && *url) fallback.base_url = url;
  if (const char* m = std::getenv("RECOMP_BRIDGE_MODEL"); m && *m) fallback.model = m;
  return fallback;
}

RemoteConfig RemoteConfig::from_env() { return from_env(RemoteConfig{}); }

void validate_score_response(const json& j) {
  if (!j.is_object()) throw Error("score response: expected an object");
  if (!j.contains("logprob") || !j["logprob"].is_number()) {
    throw Error("score response: 'logprob' must be a number");
  }
  if (!j.contains("target_token_count") || !j["target_token_count"].is_number_integer() ||
      j["target_token_count"].get<long long>() < 0) {
    throw Error("score response: 'target_token_count' must be a non-negative integer");
  }
  if (j.contains("truncated") && !j["truncated"].is_boolean()) {
    throw Error("score response: 'truncated' must be a boolean");
  }
}

void validate_generate_response(const json& j) {
  if (!j.is_object()) throw Error("generate response: expected an object");
  if (!j.contains("text") || !j["text"].is_string()) {
    throw Error("generate response: 'text' must be a string");
  }
}

void validate_health_response(const json& j) {
  if (!j.is_object()) throw Error("health response: expected an object");
  if (!j.contains("status") || j["status"] != "ok") throw Error("health response: status != ok");
  if (!j.contains("model") || !j["model"].is_string()) {
    throw Error("health response: 'model' must be a string");
  }
}

RemoteScorer::RemoteScorer(RemoteConfig cfg)
    : cfg_(std::move(cfg)),
      slots_(std::make_shared<std::counting_semaphore<>>(
          static_cast<std::ptrdiff_t>(std::max(1u, cfg_.max_in_flight)))) {
  if (cfg_.base_url.empty()) throw Error("remote scorer needs a bridge URL (RECOMP_BRIDGE_URL)");
  const auto scheme = cfg_.base_url.find("://");
  const auto slash =
      cfg_.base_url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  host_ = cfg_.base_url.substr(0, slash);
  if (slash != std::string::npos) prefix_ = cfg_.base_url.substr(slash);
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
}

json RemoteScorer::call(const std::string& method, const std::string& path,
                        const json* body) const {
  struct Slot {
    std::counting_semaphore<>& s;
    explicit Slot(std::counting_semaphore<>& sem) : s(sem) { s.acquire(); }
    ~Slot() { s.release(); }
  } slot(*slots_);

  const std::string full = prefix_ + path;
  const std::string payload = body ? body->dump() : std::string();
  std::string last_error;
  int delay = cfg_.backoff_ms;
  for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
      delay *= 2;
    }
    httplib::Client cli(host_);
    const auto to = std::chrono::milliseconds(cfg_.timeout_ms);
    cli.set_connection_timeout(to);
    cli.set_read_timeout(to);
    cli.set_write_timeout(to);
    auto res = method == "GET" ? cli.Get(full) : cli.Post(full, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      log::warn(method + " " + full + " failed (" + last_error + "), attempt " +
                std::to_string(attempt + 1));
      continue;
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      log::warn(method + " " + full + " returned " + last_error + ", attempt " +
                std::to_string(attempt + 1));
      continue;
    }
    if (res->status != 200) {
      throw TransportError(method + " " + full + ": HTTP " + std::to_string(res->status) + ": " +
                           res->body);
    }
    try {
      return json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw TransportError(method + " " + full + ": malformed JSON reply: " + e.what());
    }
  }
  throw TransportError(method + " " + full + " failed after " + std::to_string(cfg_.retries + 1) +
                       " attempts: " + last_error);
}

LogLik RemoteScorer::loglik(std::string_view prefix, std::string_view continuation) const {
  const json body{{"model", cfg_.model}, {"prefix", prefix}, {"target", continuation}};
  const auto j = call("POST", "/v1/score", &body);
  validate_score_response(j);
  return {j["logprob"].get<double>(), j["target_token_count"].get<std::size_t>()};
}

std::string RemoteScorer::generate(std::string_view prompt, const GenerateParams& params) const {
  const json body{{"model", cfg_.model},           {"prompt", prompt},
                  {"max_tokens", params.max_tokens}, {"temperature", params.temperature},
                  {"top_p", params.top_p},         {"stop", params.stop}};
  const auto j = call("POST", "/v1/generate", &body);
  validate_generate_response(j);
  return j["text"].get<std::string>();
}

std::string RemoteScorer::health() const {
  const auto j = call("GET", "/health", nullptr);
  validate_health_response(j);
  return j["model"].get<std::string>();
}

}  // namespace recomp::scoring
