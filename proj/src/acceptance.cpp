#include "rwre/acceptance.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "rwre/ballistic.hpp"
#include "rwre/estimators.hpp"
#include "rwre/expansion.hpp"
#include "rwre/green.hpp"
#include "rwre/parallel.hpp"
#include "rwre/runners.hpp"
#include "rwre/stats.hpp"

namespace rwre {

namespace {

constexpr std::uint64_t kEnvSeed = 20250810;
constexpr std::uint64_t kWalkSeed = 987654321;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

// Criterion 1: empirical window pmf of a 1e7-step environmental-process run
// matches the exact torus Q_B with TV < 0.01 (d=2, L=4, eps=0.05).
CheckResult criterion1(int) {
  EnvironmentSpec spec = standard_test_spec(2, 0.05, 4);
  EnvironmentField env = spec.realize(kEnvSeed);
  Window window = Window::pair_e1(2);
  TorusOracle oracle = torus_solve(env, window);

  PatternCodec codec = oracle.codec;
  std::vector<double> counts(codec.n_patterns, 0.0);
  WalkState w = make_walk(origin_point(), kWalkSeed);
  const std::uint64_t n = 10000000;
  for (std::uint64_t k = 0; k < n; ++k) {
    counts[pattern_at(env, w.position, window, codec)] += 1.0;
    step(env, w);
  }
  double tv = 0.0;
  for (std::size_t id = 0; id < counts.size(); ++id)
    tv += std::abs(counts[id] / static_cast<double>(n) - oracle.window_pmf[id]);
  tv *= 0.5;

  CheckResult r{1, "torus oracle equivalence (TV of window pmf, 1e7 steps)", tv < 0.01,
                fmt("TV = %.3e (threshold 0.01), stationary residual %.1e", tv,
                    oracle.residual_inf)};
  return r;
}

// Criterion 2: expansion-order scaling on the L=8 torus. First order slope
// >= 1.7, second order slope >= 2.6 over eps in {0.02, 0.04, 0.08}.
CheckResult criterion2(int) {
  std::vector<double> eps_grid{0.02, 0.04, 0.08};
  std::vector<double> r1, r2;
  for (double eps : eps_grid) {
    EnvironmentSpec spec = standard_test_spec(2, eps, 8);
    TorusExpansion te = torus_expansion_terms(spec.realize(kEnvSeed), 2);
    r1.push_back(te.reconstruction_residual(eps, 1));
    r2.push_back(te.reconstruction_residual(eps, 2));
  }
  LineFit f1 = fit_loglog(eps_grid, r1);
  LineFit f2 = fit_loglog(eps_grid, r2);
  bool pass = f1.slope >= 1.7 && f2.slope >= 2.6;
  return {2, "expansion-order scaling on the torus (L=8)", pass,
          fmt("order-1 slope %.3f (>= 1.7), order-2 slope %.3f (>= 2.6)", f1.slope,
              f2.slope)};
}

// Criterion 3: velocity expansion residual drops by >= 3x when eps halves
// from 0.08 to 0.04 (2D standard model), CI-adjusted.
CheckResult criterion3(int workers) {
  const int walks = 400;
  const std::uint64_t steps = 2000000;
  double r[2], sigma[2];
  double eps_grid[2] = {0.08, 0.04};
  for (int i = 0; i < 2; ++i) {
    double eps = eps_grid[i];
    EnvironmentSpec spec = standard_test_spec(2, eps);
    TransitionKernel rev = spec.realize(0).annealed_kernel().reversed();
    std::vector<Point> pts;
    for (int e = 0; e < num_directions(2); ++e)
      pts.push_back(negated(direction_vector(e)));
    JTable jt = j_kernel(rev, pts, 1e-5);
    VelocityExpansion ve = velocity_coefficients(spec.base, spec.model, eps, jt);
    VelocityEstimate mc = estimate_velocity(spec, walks, steps, 0, kEnvSeed,
                                            kWalkSeed, workers);
    r[i] = std::abs(mc.mean[0] - ve.v_approx()[0]);
    sigma[i] = mc.stderror[0];
  }
  double combined = std::sqrt(sigma[1] * sigma[1] + (sigma[0] / 3.0) * (sigma[0] / 3.0));
  bool pass = r[1] <= r[0] / 3.0 + 2.0 * combined;
  return {3, "velocity expansion residual scaling (eps 0.08 -> 0.04)", pass,
          fmt("residual(0.08) = %.3e +- %.1e, residual(0.04) = %.3e +- %.1e, "
              "need r(0.04) <= r(0.08)/3 + 2s = %.3e",
              r[0], sigma[0], r[1], sigma[1], r[0] / 3.0 + 2.0 * combined)};
}

// Criterion 4: Theorem-3-style upper bound in d=3:
// v.e1 <= E[d(0,omega)].e1 + eps^2.4, CI-adjusted, at eps in {0.05, 0.1}.
CheckResult criterion4(int workers) {
  bool pass = true;
  std::string detail;
  for (double eps : {0.05, 0.1}) {
    EnvironmentSpec spec = standard_test_spec(3, eps);
    VelocityEstimate mc =
        estimate_velocity(spec, 200, 1000000, 0, kEnvSeed, kWalkSeed, workers);
    double annealed_drift = local_drift(spec.realize(0).annealed_kernel())[0];
    double bound = annealed_drift + std::pow(eps, 2.4);
    double lhs = mc.mean[0] - 2.0 * mc.stderror[0];
    bool ok = lhs <= bound && mc.mean[0] > 0.0;
    pass = pass && ok;
    detail += fmt("[eps=%.2f: v.e1 = %.5f +- %.1e vs bound %.5f] ", eps, mc.mean[0],
                  mc.stderror[0], bound);
  }
  return {4, "velocity upper bound, d=3 (E[d].e1 + eps^2.4)", pass, detail};
}

// Criterion 5: Green/J golden values and the resolvent identity.
CheckResult criterion5(int) {
  const double pi = std::numbers::pi;
  TransitionKernel srw = TransitionKernel::uniform(2);
  std::vector<Point> jpts{origin_point(), make_point(1, 0), make_point(1, 1)};
  JTable j0 = j_kernel(srw, jpts, 1e-4);
  double j_origin = j0.at(origin_point());
  double j_e1 = j0.at(make_point(1, 0));
  double j_diag = j0.at(make_point(1, 1));
  bool golden = j_origin == 0.0 && std::abs(j_e1 + 1.0) <= 1e-4 &&
                std::abs(j_diag + 4.0 / pi) <= 1e-4;

  // Resolvent residual <= declared truncation bound on a drifted table.
  EnvironmentSpec spec = standard_test_spec(2, 0.1);
  TransitionKernel p_eps = spec.realize(0).annealed_kernel();
  std::vector<Point> ball;
  for (std::int64_t x = -3; x <= 3; ++x)
    for (std::int64_t y = -3; y <= 3; ++y)
      if (std::llabs(x) + std::llabs(y) <= 3) ball.push_back(make_point(x, y));
  GreenTable g = green(p_eps, ball, 1e-8);
  double max_res = 0.0;
  for (const Point& p : ball) {
    if (l1_norm(p, 2) > 2) continue;  // interior points with all neighbors tabulated
    double res = g.at(p) - (l1_norm(p, 2) == 0 ? 1.0 : 0.0);
    for (int e = 0; e < 4; ++e) res -= p_eps(e) * g.at(moved(p, e));
    max_res = std::max(max_res, std::abs(res));
  }
  bool resolvent = max_res <= g.truncation_bound;

  bool pass = golden && resolvent;
  return {5, "Green/J golden values and resolvent identity", pass,
          fmt("J(0)=%.1e, J(e1)=%.6f (-1), J(1,1)=%.6f (-4/pi=%.6f); resolvent "
              "residual %.2e <= bound %.2e: %s",
              j_origin, j_e1, j_diag, -4.0 / pi, max_res, g.truncation_bound,
              resolvent ? "yes" : "NO")};
}

// Criterion 6: Kalikow positivity under the Lemma-1 QLD constant for 50
// randomized models, plus the homogeneity identity on random probes.
CheckResult criterion6(int) {
  SplitMix64 rng(0xace6u);
  int positive = 0, total = 0;
  double worst_homog = 0.0;
  double worst_inf = std::numeric_limits<double>::infinity();
  while (total < 50) {
    int dim = (total % 2 == 0) ? 2 : 3;
    int n_dirs = num_directions(dim);
    // Random elliptic base kernel.
    std::vector<double> probs(static_cast<std::size_t>(n_dirs));
    double sum = 0.0;
    for (double& p : probs) {
      p = 0.35 + rng.next_u01();
      sum += p;
    }
    for (double& p : probs) p /= sum;
    TransitionKernel base(dim, probs);

    // Random atoms, centered and clamped, then forced e1-biased.
    int n_atoms = 2 + static_cast<int>(rng.next() % 2);
    std::vector<PerturbationAtom> atoms;
    double wsum = 0.0;
    for (int a = 0; a < n_atoms; ++a) {
      PerturbationAtom at;
      at.zeta.resize(static_cast<std::size_t>(n_dirs));
      double mean = 0.0;
      for (double& z : at.zeta) {
        z = 2.0 * rng.next_u01() - 1.0;
        mean += z;
      }
      mean /= n_dirs;
      double maxabs = 0.0;
      for (double& z : at.zeta) {
        z -= mean;
        maxabs = std::max(maxabs, std::abs(z));
      }
      if (maxabs > 1.0)
        for (double& z : at.zeta) z /= maxabs;
      at.weight = 0.2 + rng.next_u01();
      wsum += at.weight;
      atoms.push_back(at);
    }
    for (PerturbationAtom& at : atoms) at.weight /= wsum;
    {
      double last = 1.0;
      for (std::size_t a = 0; a + 1 < atoms.size(); ++a) last -= atoms[a].weight;
      atoms.back().weight = last;
    }
    PerturbationModel model(dim, atoms);
    double d1e1 = model.mean()[0] - model.mean()[1];
    if (std::abs(d1e1) < 0.25) continue;
    if (d1e1 < 0.0) {
      for (PerturbationAtom& at : atoms)
        for (double& z : at.zeta) z = -z;
      model = PerturbationModel(dim, atoms);
      d1e1 = -d1e1;
    }

    double minp = base.min_prob();
    double C = 2.0 / (minp * minp);
    // QLD with this C: lambda = eps d1e1 > C eps^2  <=>  eps < d1e1 / C.
    double eps = std::min(0.8 * d1e1 / C, 0.5 * minp);
    if (eps <= 0.0) continue;
    ++total;

    EnvironmentField env(base, eps, model, 1);
    DriftConditionReport qld =
        check_drift_condition(env, {DriftConditionKind::QLD, C, 0.0});
    KalikowReport rep = kalikow_infimum(model, base, eps);
    if (qld.holds && rep.criterion_holds) ++positive;
    if (!rep.negative_witness) worst_inf = std::min(worst_inf, rep.inf_value);

    // Homogeneity: F(c g) c = F(g) to 1e-12 (relative).
    KalikowObjective obj = kalikow_objective(model, base, eps);
    for (int probe = 0; probe < 20; ++probe) {
      std::vector<double> gv(static_cast<std::size_t>(n_dirs));
      for (double& v : gv) v = 0.05 + 0.95 * rng.next_u01();
      double c = 0.05 + 0.95 * rng.next_u01();
      std::vector<double> cg = gv;
      for (double& v : cg) v *= c;
      double f = obj(gv);
      double err = std::abs(obj(cg) * c - f) / std::max(1.0, std::abs(f));
      worst_homog = std::max(worst_homog, err);
    }
  }
  bool pass = positive == 50 && worst_homog <= 1e-12;
  return {6, "Kalikow positivity under QLD (50 random models) + homogeneity", pass,
          fmt("positive infimum in %d/50 (min inf %.3e); max homogeneity error %.2e",
              positive, worst_inf, worst_homog)};
}

// Criterion 7: mu_delta converges toward the window measure as delta -> 1.
CheckResult criterion7(int workers) {
  EnvironmentSpec spec = standard_test_spec(2, 0.1);
  Window window = Window::pair_e1(2);
  WindowMeasureEstimate wm = estimate_window_measure(
      spec, window, 200, 200000, UINT64_MAX, kEnvSeed, kWalkSeed, workers);
  const std::uint64_t fid = 0;  // pattern (0,0): both sites on the + atom
  double q_ref = wm.q_estimate[fid];
  double q_sig = wm.q_stderr[fid];

  double deltas[3] = {0.9, 0.99, 0.999};
  int replicas[3] = {40000, 40000, 20000};
  double dist[3], sig[3];
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    MuDeltaEstimate est = estimate_mu_delta(spec, deltas[i], window, {fid},
                                            replicas[i], kEnvSeed + i, kWalkSeed + i,
                                            workers);
    dist[i] = std::abs(est.estimate - q_ref);
    sig[i] = std::sqrt(est.stderror * est.stderror + q_sig * q_sig);
    detail += fmt("[d=%.3f: |mu-Q| = %.4f +- %.4f] ", deltas[i], dist[i], sig[i]);
  }
  bool pass = dist[1] <= dist[0] + 2.0 * std::sqrt(sig[0] * sig[0] + sig[1] * sig[1]) &&
              dist[2] <= dist[1] + 2.0 * std::sqrt(sig[1] * sig[1] + sig[2] * sig[2]);
  return {7, "mu_delta convergence toward the window measure", pass, detail};
}

// Criterion 8: polynomial condition behavior: the driftless SRW fails at
// L=10, M=1; the standard model's failure probability decays in L.
CheckResult criterion8(int workers) {
  EnvironmentSpec srw{TransitionKernel::uniform(2), 0.0,
                      PerturbationModel::zero(2), {}};
  Vec e1{};
  e1[0] = 1.0;
  PolyConditionReport base = poly_condition_test(srw, e1, 10.0, 1.0, 2000, 10000000,
                                                 kEnvSeed, kWalkSeed, workers);
  bool srw_fails = base.verdict == PolyVerdict::fails && base.ci_lo > 0.1;

  EnvironmentSpec spec = standard_test_spec(2, 0.1);
  double grid[4] = {5, 8, 12, 18};
  int runs[4] = {4000, 4000, 8000, 30000};
  std::vector<double> ls, ps;
  std::string detail = fmt("SRW L=10: est %.3f CI [%.3f, %.3f] vs 0.1; ", base.estimate,
                           base.ci_lo, base.ci_hi);
  for (int i = 0; i < 4; ++i) {
    PolyConditionReport rep = poly_condition_test(spec, e1, grid[i], 2.0, runs[i],
                                                  10000000, kEnvSeed + i,
                                                  kWalkSeed + i, workers);
    detail += fmt("[L=%g: %.4f] ", grid[i], rep.estimate);
    if (rep.estimate > 0.0) {
      ls.push_back(grid[i]);
      ps.push_back(rep.estimate);
    }
  }
  bool decays = ls.size() >= 3;
  double exponent = 0.0;
  if (decays) {
    LineFit f = fit_loglog(ls, ps);
    exponent = -f.slope;
    decays = exponent > 0.0 && ps.back() < ps.front();
  }
  detail += fmt("decay exponent %.2f", exponent);
  return {8, "polynomial condition: SRW fails, drifted decay in L", srw_fails && decays,
          detail};
}

// Criterion 9: byte-identical artifacts on rerun with identical config+seeds.
CheckResult criterion9(int) {
  namespace fs = std::filesystem;
  ojson raw = default_config_json();
  raw["workers"] = 2;  // worker count must not affect artifact bytes
  raw["velocity"] = {{"walks", 8}, {"steps", 4000}, {"burn_in", 0}};
  raw["environment"]["period"] = 4;
  ExperimentConfig cfg = parse_config(raw);

  fs::path base = fs::temp_directory_path() / "rwre_determinism";
  fs::remove_all(base);
  std::vector<std::string> files;
  bool identical = true;
  std::string detail;
  for (const char* sub : {"velocity", "torus-oracle"}) {
    fs::path d1 = base / (std::string(sub) + "_1");
    fs::path d2 = base / (std::string(sub) + "_2");
    run_subcommand(sub, cfg, d1.string());
    run_subcommand(sub, cfg, d2.string());
    for (const auto& entry : fs::directory_iterator(d1)) {
      std::string name = entry.path().filename().string();
      std::string a = read_text_file(entry.path().string());
      std::string b = read_text_file((d2 / name).string());
      if (a != b) {
        identical = false;
        detail += fmt("mismatch in %s/%s; ", sub, name.c_str());
      }
      files.push_back(name);
    }
  }
  fs::remove_all(base);
  if (identical) detail = fmt("%zu artifacts byte-identical across reruns", files.size());
  return {9, "determinism: byte-identical artifacts on rerun", identical, detail};
}

}  // namespace

std::vector<CheckResult> run_acceptance(int workers, bool verbose) {
  std::vector<CheckResult (*)(int)> checks{criterion1, criterion2, criterion3,
                                           criterion4, criterion5, criterion6,
                                           criterion7, criterion8, criterion9};
  std::vector<CheckResult> results;
  for (auto* check : checks) {
    CheckResult r = check(workers);
    if (verbose) {
      std::printf("%s  [%d] %s — %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.detail.c_str());
      std::fflush(stdout);
    }
    results.push_back(std::move(r));
  }
  return results;
}

int run_verify_all(const ExperimentConfig& cfg, const std::string& out_dir) {
  int workers = cfg.workers > 0 ? cfg.workers : default_workers();
  std::vector<CheckResult> results = run_acceptance(workers, true);
  ojson out = artifact_header(cfg.raw, "verify-all");
  ojson rows = ojson::array();
  bool all = true;
  for (const CheckResult& r : results) {
    ojson j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    rows.push_back(j);
    all = all && r.pass;
  }
  out["checks"] = rows;
  out["all_pass"] = all;
  std::filesystem::create_directories(out_dir);
  write_text_file((std::filesystem::path(out_dir) / "verify_all.json").string(),
                  out.dump(2) + "\n");
  return all ? 0 : 1;
}

}  // namespace rwre
