// SPDX-License-Identifier: Apache-2.0
#include <exception>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "recomp/common/error.hpp"
#include "recomp/common/log.hpp"
#include "recomp/pipeline/commands.hpp"
#include "recomp/pipeline/config.hpp"

namespace {

struct Shortcut {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr Shortcut kShortcuts[] = {
    {"--jobs", "run.jobs", "worker threads (0 = logical CPUs)"},
    {"--seed", "run.seed", "master seed"},
    {"--task", "run.task", "lm or qa"},
    {"--scorer", "scorer.kind", "builtin or remote"},
    {"--bridge-url", "scorer.bridge_url", "bridge base URL"},
    {"--compressor", "compress.policy",
     "none, empty, full-docs, bow, ne, random, bm25-sent, embed-sent, extractive, abstractive, "
     "oracle-ext, oracle-abs"},
    {"--top-n", "compress.top_n", "sentences kept by sentence policies"},
    {"--epsilon", "extractive.epsilon", "LM score margin for negatives"},
    {"--output-dir", "paths.output_dir", "artifact directory"},
};

}  // namespace

int main(int argc, char** argv) {
  using recomp::pipeline::Config;
  CLI::App app{"recomp: retrieve, compress and prepend pipeline"};
  app.require_subcommand(1);
  std::string config_path;
  bool verbose = false;
  app.add_option("--config", config_path, "config file")->check(CLI::ExistingFile);
  app.add_flag("-v,--verbose", verbose, "debug logging");

  std::map<std::string, std::string> shortcut_values;
  for (const auto& s : kShortcuts) {
    app.add_option(s.flag, shortcut_values[s.key], s.help);
  }
  std::map<std::string, std::string> key_values;
  for (const auto& k : recomp::pipeline::config_schema()) {
    app.add_option("--" + k.name, key_values[k.name], k.help)->group("Config keys");
  }
  std::vector<CLI::App*> subs;
  for (const auto& c : recomp::pipeline::commands()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (verbose) recomp::log::set_level(recomp::log::Level::debug);

  try {
    Config cfg = config_path.empty() ? Config() : Config::from_file(config_path);
    for (const auto& s : kShortcuts) {
      if (app.count(s.flag) > 0) cfg.set(s.key, shortcut_values[s.key]);
    }
    for (const auto& k : recomp::pipeline::config_schema()) {
      if (app.count("--" + k.name) > 0) cfg.set(k.name, key_values[k.name]);
    }
    cfg.validate();
    for (auto* sub : subs) {
      if (sub->parsed()) return recomp::pipeline::run_command(sub->get_name(), cfg);
    }
  } catch (const recomp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return recomp::pipeline::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return recomp::pipeline::kExitError;
  }
  return recomp::pipeline::kExitError;
}
