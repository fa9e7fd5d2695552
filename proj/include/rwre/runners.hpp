#pragma once

#include <string>
#include <vector>

#include "rwre/config.hpp"

namespace rwre {

// Executes one subcommand against a parsed config, writing JSON/CSV
// artifacts into out_dir. Returns the process exit code contract:
// 0 success, 1 failed checks, 2 config/precondition errors (thrown as
// ConfigError by callers).
int run_subcommand(const std::string& name, const ExperimentConfig& cfg,
                   const std::string& out_dir);

std::vector<std::string> subcommand_names();

}  // namespace rwre
