// SPDX-License-Identifier: Apache-2.0
#include "recomp/common/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace recomp::log {
namespace {
std::atomic<Level> g_level{Level::info};
std::mutex g_mu;

const char* tag(Level l) {
  switch (l) {
    case Level::debug: return "debug";
    case Level::info: return "info";
    case Level::warn: return "warn";
    case Level::error: return "error";
    default: return "";
  }
}
}  // namespace

void set_level(Level level) { g_level.store(level); }
Level level() { return g_level.load(); }

void write(Level l, std::string_view msg) {
  if (l < g_level.load()) return;
  std::lock_guard lock(g_mu);
  std::cerr << "[" << tag(l) << "] " << msg << '\n';
}

}  // namespace recomp::log
