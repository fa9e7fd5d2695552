#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "rwre/artifacts.hpp"
#include "rwre/environment.hpp"
#include "rwre/walk.hpp"

namespace rwre {

// Schema violations carry the offending field path; the CLI maps these to
// exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
  ojson raw;
  EnvironmentSpec env;
  std::uint64_t env_seed = 1;
  std::uint64_t walk_seed = 2;
  int workers = 1;

  // Section access with field-level errors.
  const ojson& section(const std::string& name) const;
  bool has_section(const std::string& name) const { return raw.contains(name); }
};

ExperimentConfig parse_config(const ojson& raw);
ExperimentConfig load_config_file(const std::string& path);

// Default experiment configuration: the d=2 standard test model.
ojson default_config_json();

// Helpers shared by runners.
EnvironmentSpec parse_environment(const ojson& j, const std::string& path);
Window parse_window(const ojson& j, int dim, const std::string& path);

double get_number(const ojson& j, const std::string& key, const std::string& path);
double get_number_or(const ojson& j, const std::string& key, double fallback);
std::int64_t get_int(const ojson& j, const std::string& key, const std::string& path);
std::int64_t get_int_or(const ojson& j, const std::string& key, std::int64_t fallback);

}  // namespace rwre
