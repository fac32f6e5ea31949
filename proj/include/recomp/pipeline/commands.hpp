// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recomp/pipeline/config.hpp"

namespace recomp::pipeline {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailureBudget = 2;

struct CommandInfo {
  std::string name;
  std::string help;
};

const std::vector<CommandInfo>& commands();

/// Runs one subcommand. Artifacts land in paths.output_dir (or the data
/// paths for `synth`). Throws on invalid input; returns kExitFailureBudget
/// when an evaluation breaches its failure budget.
int run_command(std::string_view name, const Config& cfg);

}  // namespace recomp::pipeline
