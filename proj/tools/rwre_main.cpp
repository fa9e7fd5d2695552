#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "rwre/acceptance.hpp"
#include "rwre/rng.hpp"
#include "rwre/runners.hpp"
#include "rwre/version.hpp"

namespace {

const char* subcommand_help(const std::string& name) {
  if (name == "velocity") return "annealed velocity by double Monte Carlo";
  if (name == "invariant") return "empirical window measure of the environmental process";
  if (name == "mudelta") return "mu_delta estimates over a delta grid";
  if (name == "green") return "Green function table with absorbing-solve cross-check";
  if (name == "jkernel") return "J table of the reversed annealed kernel";
  if (name == "expansion") return "torus expansion terms and velocity coefficients";
  if (name == "kalikow") return "Kalikow criterion infimum and Lemma bound";
  if (name == "polycond") return "polynomial condition (P)_M sweep over box sizes";
  if (name == "torus-oracle") return "exact stationary distribution on a periodized environment";
  if (name == "verify-all") return "run the full acceptance battery";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("rwre-lab ") + rwre::kVersion +
               " — random walks in low-disorder random environments"};
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = -1;
  app.add_option("--config", config_path, "JSON experiment config file");
  app.add_option("--out", out_dir, "output directory for artifacts");
  app.add_option("--seed", seed, "override master seed (environment + walk)")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--workers", workers, "worker threads (0 = auto)");

  for (const std::string& name : rwre::subcommand_names())
    app.add_subcommand(name, subcommand_help(name));
  app.require_subcommand(1);

  CLI11_PARSE(app, argc, argv);
  std::string sub = app.get_subcommands().at(0)->get_name();

  try {
    rwre::ojson raw = config_path.empty()
                          ? rwre::default_config_json()
                          : rwre::load_config_file(config_path).raw;

    // Precedence: config < environment variable < flag.
    if (const char* v = std::getenv("RWRE_SEED")) {
      seed = std::strtoull(v, nullptr, 10);
      seed_set = true;
    }
    if (const char* v = std::getenv("RWRE_WORKERS")) workers = std::atoi(v);
    if (seed_set) {
      raw["seeds"]["environment"] = seed;
      raw["seeds"]["walk"] = rwre::hash_combine(seed, 0x77a143ull);
    }
    if (workers >= 0) raw["workers"] = workers;

    rwre::ExperimentConfig cfg = rwre::parse_config(raw);
    return rwre::run_subcommand(sub, cfg, out_dir);
  } catch (const rwre::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "precondition failed: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
