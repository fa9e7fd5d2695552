#include "rwre/config.hpp"

#include <fstream>

namespace rwre {

namespace {

const ojson& require_key(const ojson& j, const std::string& key,
                         const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + "." + key + ": missing required field");
  return j.at(key);
}

}  // namespace

double get_number(const ojson& j, const std::string& key, const std::string& path) {
  const ojson& v = require_key(j, key, path);
  if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
  return v.get<double>();
}

double get_number_or(const ojson& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(key + ": expected a number");
  return j.at(key).get<double>();
}

std::int64_t get_int(const ojson& j, const std::string& key, const std::string& path) {
  const ojson& v = require_key(j, key, path);
  if (!v.is_number_integer()) throw ConfigError(path + "." + key + ": expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t get_int_or(const ojson& j, const std::string& key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ConfigError(key + ": expected an integer");
  return j.at(key).get<std::int64_t>();
}

EnvironmentSpec parse_environment(const ojson& j, const std::string& path) {
  int dim = static_cast<int>(get_int(j, "dimension", path));
  if (dim < 2 || dim > kMaxDim)
    throw ConfigError(path + ".dimension: must be in [2, " + std::to_string(kMaxDim) + "]");

  TransitionKernel base = TransitionKernel::uniform(dim);
  const ojson& bk = require_key(j, "base_kernel", path);
  if (bk.is_string()) {
    if (bk.get<std::string>() != "uniform")
      throw ConfigError(path + ".base_kernel: unknown preset '" + bk.get<std::string>() +
                        "' (use \"uniform\" or an explicit probability list)");
  } else if (bk.is_array()) {
    std::vector<double> probs;
    for (const ojson& v : bk) {
      if (!v.is_number()) throw ConfigError(path + ".base_kernel: entries must be numbers");
      probs.push_back(v.get<double>());
    }
    try {
      base = TransitionKernel(dim, probs);
    } catch (const std::exception& e) {
      throw ConfigError(path + ".base_kernel: " + e.what());
    }
  } else {
    throw ConfigError(path + ".base_kernel: expected \"uniform\" or a probability list");
  }

  double epsilon = get_number(j, "epsilon", path);

  PerturbationModel model = PerturbationModel::zero(dim);
  const ojson& atoms = require_key(j, "atoms", path);
  if (atoms.is_string()) {
    std::string preset = atoms.get<std::string>();
    if (preset == "standard")
      model = PerturbationModel::standard_test(dim);
    else if (preset == "zero")
      model = PerturbationModel::zero(dim);
    else
      throw ConfigError(path + ".atoms: unknown preset '" + preset + "'");
  } else if (atoms.is_array()) {
    std::vector<PerturbationAtom> list;
    std::size_t i = 0;
    for (const ojson& a : atoms) {
      std::string apath = path + ".atoms[" + std::to_string(i++) + "]";
      PerturbationAtom atom;
      atom.weight = get_number(a, "weight", apath);
      const ojson& z = require_key(a, "zeta", apath);
      if (!z.is_array()) throw ConfigError(apath + ".zeta: expected a list");
      for (const ojson& v : z) atom.zeta.push_back(v.get<double>());
      list.push_back(std::move(atom));
    }
    try {
      model = PerturbationModel(dim, list);
    } catch (const std::exception& e) {
      throw ConfigError(path + ".atoms: " + e.what());
    }
  } else {
    throw ConfigError(path + ".atoms: expected \"standard\", \"zero\", or an atom list");
  }

  std::optional<std::int64_t> period;
  if (j.contains("period") && !j.at("period").is_null())
    period = get_int(j, "period", path);

  EnvironmentSpec spec{base, epsilon, model, period};
  try {
    spec.realize(0);  // surface construction errors at parse time
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return spec;
}

Window parse_window(const ojson& j, int dim, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw ConfigError(path + ": expected a nonempty list of lattice points");
  Window w;
  w.dim = dim;
  for (const ojson& pt : j) {
    if (!pt.is_array() || static_cast<int>(pt.size()) != dim)
      throw ConfigError(path + ": each site needs exactly " + std::to_string(dim) +
                        " coordinates");
    Point p{};
    for (int i = 0; i < dim; ++i) p[i] = pt.at(static_cast<std::size_t>(i)).get<std::int64_t>();
    w.sites.push_back(p);
  }
  return w;
}

const ojson& ExperimentConfig::section(const std::string& name) const {
  if (!raw.contains(name))
    throw ConfigError(name + ": missing configuration section");
  return raw.at(name);
}

ExperimentConfig parse_config(const ojson& raw) {
  ExperimentConfig cfg;
  cfg.raw = raw;
  if (!raw.contains("environment"))
    throw ConfigError("environment: missing configuration section");
  cfg.env = parse_environment(raw.at("environment"), "environment");
  if (raw.contains("seeds")) {
    const ojson& s = raw.at("seeds");
    cfg.env_seed = static_cast<std::uint64_t>(get_int_or(s, "environment", 1));
    cfg.walk_seed = static_cast<std::uint64_t>(get_int_or(s, "walk", 2));
  }
  cfg.workers = static_cast<int>(get_int_or(raw, "workers", 0));
  if (cfg.workers < 0) throw ConfigError("workers: must be >= 0 (0 = auto)");
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path);
  ojson raw;
  try {
    raw = ojson::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(raw);
}

ojson default_config_json() {
  ojson j;
  j["environment"] = {{"dimension", 2},
                      {"base_kernel", "uniform"},
                      {"epsilon", 0.1},
                      {"atoms", "standard"}};
  j["seeds"] = {{"environment", 20250810}, {"walk", 987654321}};
  j["workers"] = 0;  // 0 = auto
  j["velocity"] = {{"walks", 200}, {"steps", 1000000}, {"burn_in", 0}};
  j["invariant"] = {{"window", {{0, 0}, {1, 0}}},
                    {"walks", 100},
                    {"steps", 200000}};
  j["mudelta"] = {{"window", {{0, 0}, {1, 0}}},
                  {"pattern", {0, 0}},
                  {"deltas", {0.9, 0.99, 0.999}},
                  {"replicas", 20000}};
  j["green"] = {{"radius", 2}, {"tol", 1e-6}};
  j["jkernel"] = {{"radius", 2}, {"tol", 1e-4}};
  j["expansion"] = {{"period", 8}, {"epsilons", {0.02, 0.04, 0.08}}, {"order", 2}};
  j["kalikow"] = ojson::object();
  j["polycond"] = {{"l", {1, 0}},
                   {"L_grid", {5, 8, 12, 18}},
                   {"M", 2},
                   {"runs", 4000},
                   {"max_steps", 10000000}};
  return j;
}

}  // namespace rwre
