#pragma once

#include <string>
#include <vector>

#include "rwre/config.hpp"

namespace rwre {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The full acceptance battery. Fixed seeds and pinned tolerances; prints one
// line per criterion when verbose.
std::vector<CheckResult> run_acceptance(int workers, bool verbose);

// verify-all subcommand: runs the battery, writes verify_all.json, returns
// 0 when everything passes and 1 otherwise.
int run_verify_all(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace rwre
