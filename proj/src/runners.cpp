#include "rwre/runners.hpp"

#include <cmath>
#include <filesystem>

#include "rwre/acceptance.hpp"
#include "rwre/ballistic.hpp"
#include "rwre/estimators.hpp"
#include "rwre/expansion.hpp"
#include "rwre/green.hpp"
#include "rwre/parallel.hpp"
#include "rwre/stats.hpp"

namespace rwre {

namespace {

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

ojson point_json(const Point& p, int dim) {
  ojson a = ojson::array();
  for (int i = 0; i < dim; ++i) a.push_back(p[i]);
  return a;
}

ojson vec_json(const Vec& v, int dim) {
  ojson a = ojson::array();
  for (int i = 0; i < dim; ++i) a.push_back(v[i]);
  return a;
}

std::vector<Point> ball_points(int dim, int radius) {
  std::vector<Point> pts;
  std::function<void(int, Point)> rec = [&](int axis, Point p) {
    if (axis == dim) {
      if (l1_norm(p, dim) <= radius) pts.push_back(p);
      return;
    }
    for (std::int64_t c = -radius; c <= radius; ++c) {
      p[axis] = c;
      rec(axis + 1, p);
    }
  };
  rec(0, origin_point());
  return pts;
}

Window window_or_default(const ExperimentConfig& cfg, const ojson& section) {
  if (section.contains("window"))
    return parse_window(section.at("window"), cfg.env.base.dim, "window");
  return Window::pair_e1(cfg.env.base.dim);
}

int effective_workers(const ExperimentConfig& cfg) {
  return cfg.workers > 0 ? cfg.workers : default_workers();
}

int run_velocity(const ExperimentConfig& cfg, const std::string& dir) {
  const ojson& s = cfg.section("velocity");
  int walks = static_cast<int>(get_int_or(s, "walks", 200));
  std::uint64_t steps = static_cast<std::uint64_t>(get_int_or(s, "steps", 1000000));
  std::uint64_t burn = static_cast<std::uint64_t>(get_int_or(s, "burn_in", 0));
  VelocityEstimate est = estimate_velocity(cfg.env, walks, steps, burn, cfg.env_seed,
                                           cfg.walk_seed, effective_workers(cfg));
  ojson out = artifact_header(cfg.raw, "velocity");
  out["walks"] = walks;
  out["steps"] = steps;
  out["burn_in"] = burn;
  out["mean"] = vec_json(est.mean, cfg.env.base.dim);
  out["stderr"] = vec_json(est.stderror, cfg.env.base.dim);
  write_text_file(out_path(dir, "velocity.json"), out.dump(2) + "\n");
  return 0;
}

int run_invariant(const ExperimentConfig& cfg, const std::string& dir) {
  const ojson& s = cfg.section("invariant");
  Window window = window_or_default(cfg, s);
  int walks = static_cast<int>(get_int_or(s, "walks", 100));
  std::uint64_t steps = static_cast<std::uint64_t>(get_int_or(s, "steps", 200000));
  std::uint64_t burn = s.contains("burn_in")
                           ? static_cast<std::uint64_t>(get_int(s, "burn_in", "invariant"))
                           : UINT64_MAX;
  WindowMeasureEstimate est =
      estimate_window_measure(cfg.env, window, walks, steps, burn, cfg.env_seed,
                              cfg.walk_seed, effective_workers(cfg));

  ojson out = artifact_header(cfg.raw, "invariant");
  out["walks"] = walks;
  out["steps"] = steps;
  out["burn_in"] = est.burn_in;
  out["split_half_tv"] = est.split_half_tv;
  if (!est.warning.empty()) out["warning"] = est.warning;
  ojson rows = ojson::array();
  std::string csv = "pattern,p_mass,q_estimate,ratio,ratio_lo,ratio_hi,zero_count\n";
  for (std::uint64_t id = 0; id < est.codec.n_patterns; ++id) {
    ojson r;
    ojson tup = ojson::array();
    for (int a : est.codec.decode(id)) tup.push_back(a);
    r["pattern"] = tup;
    r["p_mass"] = est.p_mass[id];
    r["q_estimate"] = est.q_estimate[id];
    r["q_stderr"] = est.q_stderr[id];
    r["ratio"] = est.ratio[id];
    r["ratio_lo"] = est.ratio_lo[id];
    r["ratio_hi"] = est.ratio_hi[id];
    r["zero_count"] = static_cast<bool>(est.zero_count[id]);
    rows.push_back(r);
    std::string tup_str;
    for (int a : est.codec.decode(id)) tup_str += std::to_string(a);
    csv += csv_row({tup_str, format_double(est.p_mass[id]),
                    format_double(est.q_estimate[id]), format_double(est.ratio[id]),
                    format_double(est.ratio_lo[id]), format_double(est.ratio_hi[id]),
                    est.zero_count[id] ? "1" : "0"});
  }
  out["patterns"] = rows;
  write_text_file(out_path(dir, "invariant.json"), out.dump(2) + "\n");
  write_text_file(out_path(dir, "invariant.csv"), csv);
  return 0;
}

int run_mudelta(const ExperimentConfig& cfg, const std::string& dir) {
  const ojson& s = cfg.section("mudelta");
  Window window = window_or_default(cfg, s);
  PatternCodec codec(cfg.env.model.atom_count(), static_cast<int>(window.sites.size()));
  std::vector<int> tuple;
  for (const ojson& v : s.at("pattern")) tuple.push_back(v.get<int>());
  std::uint64_t fid = codec.encode(tuple);
  int replicas = static_cast<int>(get_int_or(s, "replicas", 20000));

  ojson out = artifact_header(cfg.raw, "mudelta");
  out["pattern"] = s.at("pattern");
  out["replicas"] = replicas;
  out["note"] = "empirical convergence only; the (P)_M hypothesis is not certified";
  ojson rows = ojson::array();
  std::string csv = "delta,estimate,stderr,numerator_mean,denominator_mean\n";
  for (const ojson& dv : s.at("deltas")) {
    double delta = dv.get<double>();
    MuDeltaEstimate est =
        estimate_mu_delta(cfg.env, delta, window, {fid}, replicas, cfg.env_seed,
                          cfg.walk_seed, effective_workers(cfg));
    ojson r;
    r["delta"] = delta;
    r["estimate"] = est.estimate;
    r["stderr"] = est.stderror;
    r["numerator_mean"] = est.numerator_mean;
    r["denominator_mean"] = est.denominator_mean;
    rows.push_back(r);
    csv += csv_row({format_double(delta), format_double(est.estimate),
                    format_double(est.stderror), format_double(est.numerator_mean),
                    format_double(est.denominator_mean)});
  }
  out["estimates"] = rows;
  write_text_file(out_path(dir, "mudelta.json"), out.dump(2) + "\n");
  write_text_file(out_path(dir, "mudelta.csv"), csv);
  return 0;
}

int run_green(const ExperimentConfig& cfg, const std::string& dir) {
  const ojson& s = cfg.section("green");
  int radius = static_cast<int>(get_int_or(s, "radius", 2));
  double tol = get_number_or(s, "tol", 1e-6);
  TransitionKernel kernel = cfg.env.realize(cfg.env_seed).annealed_kernel();
  std::vector<Point> pts = ball_points(kernel.dim, radius);
  GreenTable table = green(kernel, pts, tol);
  GreenTable oracle = absorbing_box_green(
      kernel, pts, static_cast<int>(get_int_or(s, "oracle_radius", 90)));

  double max_dev = 0.0;
  for (const Point& p : pts)
    max_dev = std::max(max_dev, std::abs(table.at(p) - oracle.at(p)));

  ojson out = artifact_header(cfg.raw, "green");
  out["kernel"] = kernel.to_string();
  out["radius"] = radius;
  out["tol"] = tol;
  out["terms_used"] = table.terms_used;
  out["truncation_bound"] = table.truncation_bound;
  out["bound_certified"] = table.bound_certified;
  out["converged"] = table.converged;
  out["max_abs_dev_vs_absorbing_oracle"] = max_dev;
  std::string csv = "point,green,oracle\n";
  for (const Point& p : pts)
    csv += csv_row({point_to_string(p, kernel.dim), format_double(table.at(p)),
                    format_double(oracle.at(p))});
  write_text_file(out_path(dir, "green.json"), out.dump(2) + "\n");
  write_text_file(out_path(dir, "green.csv"), csv);
  return 0;
}

int run_jkernel(const ExperimentConfig& cfg, const std::string& dir) {
  const ojson& s = cfg.section("jkernel");
  int radius = static_cast<int>(get_int_or(s, "radius", 2));
  double tol = get_number_or(s, "tol", 1e-4);
  TransitionKernel kernel =
      cfg.env.realize(cfg.env_seed).annealed_kernel().reversed();
  std::vector<Point> pts = ball_points(kernel.dim, radius);
  JTable table = j_kernel(kernel, pts, tol);

  ojson out = artifact_header(cfg.raw, "jkernel");
  out["kernel"] = kernel.to_string();
  out["kernel_role"] = "p*_eps (reversed annealed)";
  out["radius"] = radius;
  out["tol"] = tol;
  out["method"] = table.method;
  out["terms_used"] = table.terms_used;
  out["converged"] = table.converged;
  out["stability_gap"] = table.stability_gap;
  std::string csv = "point,j_value\n";
  for (const Point& p : pts)
    csv += csv_row({point_to_string(p, kernel.dim), format_double(table.at(p))});
  write_text_file(out_path(dir, "jkernel.json"), out.dump(2) + "\n");
  write_text_file(out_path(dir, "jkernel.csv"), csv);
  return 0;
}

int run_expansion(const ExperimentConfig& cfg, const std::string& dir) {
  const ojson& s = cfg.section("expansion");
  std::int64_t period = get_int_or(s, "period", cfg.env.period.value_or(8));
  int order = static_cast<int>(get_int_or(s, "order", 2));
  std::vector<double> eps_grid;
  if (s.contains("epsilons"))
    for (const ojson& v : s.at("epsilons")) eps_grid.push_back(v.get<double>());
  else
    eps_grid = {0.02, 0.04, 0.08};

  ojson out = artifact_header(cfg.raw, "expansion");
  out["environment_hash"] = config_hash(cfg.raw.at("environment"));
  out["period"] = period;
  out["order"] = order;

  std::vector<double> res1, res2;
  ojson rows = ojson::array();
  std::string csv = "epsilon,residual_order1,residual_order2\n";
  for (double eps : eps_grid) {
    EnvironmentSpec spec = cfg.env;
    spec.epsilon = eps;
    spec.period = period;
    EnvironmentField env = spec.realize(cfg.env_seed);
    TorusExpansion te = torus_expansion_terms(env, order);
    double r1 = te.reconstruction_residual(eps, 1);
    double r2 = order >= 2 ? te.reconstruction_residual(eps, 2) : 0.0;
    res1.push_back(r1);
    res2.push_back(r2);
    ojson r;
    r["epsilon"] = eps;
    r["residual_order1"] = r1;
    if (order >= 2) r["residual_order2"] = r2;
    r["stationary_residual"] = te.stationary_residual;
    rows.push_back(r);
    csv += csv_row({format_double(eps), format_double(r1),
                    order >= 2 ? format_double(r2) : std::string("")});
  }
  out["grid"] = rows;
  if (eps_grid.size() >= 2) {
    LineFit f1 = fit_loglog(eps_grid, res1);
    out["order1_slope"] = f1.slope;
    out["order1_slope_stderr"] = f1.slope_stderr;
    if (order >= 2) {
      LineFit f2 = fit_loglog(eps_grid, res2);
      out["order2_slope"] = f2.slope;
      out["order2_slope_stderr"] = f2.slope_stderr;
    }
  }

  // Velocity coefficients at the configured epsilon (infinite-lattice J).
  {
    double eps = cfg.env.epsilon;
    if (eps > 0.0) {
      TransitionKernel rev = cfg.env.realize(cfg.env_seed).annealed_kernel().reversed();
      std::vector<Point> pts = ball_points(rev.dim, 1);
      JTable jt = j_kernel(rev, pts, 1e-5);
      VelocityExpansion ve = velocity_coefficients(cfg.env.base, cfg.env.model, eps, jt);
      ojson v;
      v["epsilon"] = eps;
      v["d0"] = vec_json(ve.d0, rev.dim);
      v["d1"] = vec_json(ve.d1, rev.dim);
      v["d2"] = vec_json(ve.d2, rev.dim);
      v["v_approx"] = vec_json(ve.v_approx(), rev.dim);
      v["argument_convention"] = ve.argument_convention;
      v["d2_convention"] =
          "d2 = sum_e e (sum_e' C_{e,e'} K(e')); the scalar reading of the "
          "display vanishes identically and is rejected";
      out["velocity_expansion"] = v;
    }
  }
  write_text_file(out_path(dir, "expansion.json"), out.dump(2) + "\n");
  write_text_file(out_path(dir, "expansion.csv"), csv);
  return 0;
}

int run_kalikow(const ExperimentConfig& cfg, const std::string& dir) {
  KalikowReport rep =
      kalikow_infimum(cfg.env.model, cfg.env.base, cfg.env.epsilon);
  double bound = lemma1_bound(cfg.env.model, cfg.env.base, cfg.env.epsilon);
  ojson out = artifact_header(cfg.raw, "kalikow");
  out["lambda"] = rep.lambda;
  out["inf_value"] = rep.negative_witness ? ojson("-inf") : ojson(rep.inf_value);
  out["criterion_holds"] = rep.criterion_holds;
  out["negative_witness"] = rep.negative_witness;
  out["argmin_g"] = rep.argmin_g;
  out["lemma1_bound"] = bound;
  out["grid_size"] = rep.grid_size;
  out["refinement_steps"] = rep.refinement_steps;
  write_text_file(out_path(dir, "kalikow.json"), out.dump(2) + "\n");
  return 0;
}

int run_polycond(const ExperimentConfig& cfg, const std::string& dir) {
  const ojson& s = cfg.section("polycond");
  double M = get_number_or(s, "M", 2.0);
  int runs = static_cast<int>(get_int_or(s, "runs", 4000));
  std::uint64_t max_steps =
      static_cast<std::uint64_t>(get_int_or(s, "max_steps", 10000000));
  Vec l{};
  l[0] = 1.0;
  if (s.contains("l")) {
    int i = 0;
    for (const ojson& v : s.at("l")) {
      if (i < cfg.env.base.dim) l[i] = v.get<double>();
      ++i;
    }
  }
  std::vector<double> grid;
  if (s.contains("L_grid"))
    for (const ojson& v : s.at("L_grid")) grid.push_back(v.get<double>());
  else
    grid = {5, 8, 12, 18};

  ojson out = artifact_header(cfg.raw, "polycond");
  out["M"] = M;
  out["runs"] = runs;
  ojson rows = ojson::array();
  std::string csv = "L,M,estimate,ci_lo,ci_hi,threshold,verdict,censored\n";
  std::vector<double> fit_l, fit_p;
  for (double L : grid) {
    PolyConditionReport rep =
        poly_condition_test(cfg.env, l, L, M, runs, max_steps, cfg.env_seed,
                            cfg.walk_seed, effective_workers(cfg));
    ojson r;
    r["L"] = L;
    r["estimate"] = rep.estimate;
    r["ci_lo"] = rep.ci_lo;
    r["ci_hi"] = rep.ci_hi;
    r["threshold"] = rep.threshold;
    r["front_exits"] = rep.front_exits;
    r["failures"] = rep.failures;
    r["censored"] = rep.censored;
    r["c0"] = rep.c0;
    r["box_size_ok"] = rep.box_size_ok;
    r["verdict"] = to_string(rep.verdict);
    rows.push_back(r);
    csv += csv_row({format_double(L), format_double(M), format_double(rep.estimate),
                    format_double(rep.ci_lo), format_double(rep.ci_hi),
                    format_double(rep.threshold), to_string(rep.verdict),
                    std::to_string(rep.censored)});
    if (rep.estimate > 0.0) {
      fit_l.push_back(L);
      fit_p.push_back(rep.estimate);
    }
  }
  out["grid"] = rows;
  if (fit_l.size() >= 2) {
    LineFit f = fit_loglog(fit_l, fit_p);
    out["decay_exponent"] = -f.slope;
    out["decay_exponent_stderr"] = f.slope_stderr;
  }
  write_text_file(out_path(dir, "polycond.json"), out.dump(2) + "\n");
  write_text_file(out_path(dir, "polycond.csv"), csv);
  return 0;
}

int run_torus_oracle(const ExperimentConfig& cfg, const std::string& dir) {
  EnvironmentSpec spec = cfg.env;
  if (!spec.period) {
    if (cfg.has_section("torus_oracle"))
      spec.period = get_int(cfg.section("torus_oracle"), "period", "torus_oracle");
    else
      spec.period = 4;
  }
  EnvironmentField env = spec.realize(cfg.env_seed);
  Window window = cfg.has_section("torus_oracle")
                      ? window_or_default(cfg, cfg.section("torus_oracle"))
                      : Window::pair_e1(env.dim());
  TorusOracle oracle = torus_solve(env, window);
  ojson out = artifact_header(cfg.raw, "torus-oracle");
  out["period"] = *spec.period;
  out["stationary_residual"] = oracle.residual_inf;
  out["exact_velocity"] = vec_json(oracle.exact_velocity, env.dim());
  ojson pmf = ojson::array();
  for (std::uint64_t id = 0; id < oracle.codec.n_patterns; ++id) {
    ojson r;
    ojson tup = ojson::array();
    for (int a : oracle.codec.decode(id)) tup.push_back(a);
    r["pattern"] = tup;
    r["q_mass"] = oracle.window_pmf[id];
    pmf.push_back(r);
  }
  out["window_pmf"] = pmf;
  ojson pi = ojson::array();
  for (double v : oracle.pi) pi.push_back(v);
  out["pi"] = pi;
  write_text_file(out_path(dir, "torus_oracle.json"), out.dump(2) + "\n");
  return 0;
}

}  // namespace

std::vector<std::string> subcommand_names() {
  return {"velocity", "invariant", "mudelta",  "green",        "jkernel",
          "expansion", "kalikow",  "polycond", "torus-oracle", "verify-all"};
}

int run_subcommand(const std::string& name, const ExperimentConfig& cfg,
                   const std::string& out_dir) {
  if (name == "velocity") return run_velocity(cfg, out_dir);
  if (name == "invariant") return run_invariant(cfg, out_dir);
  if (name == "mudelta") return run_mudelta(cfg, out_dir);
  if (name == "green") return run_green(cfg, out_dir);
  if (name == "jkernel") return run_jkernel(cfg, out_dir);
  if (name == "expansion") return run_expansion(cfg, out_dir);
  if (name == "kalikow") return run_kalikow(cfg, out_dir);
  if (name == "polycond") return run_polycond(cfg, out_dir);
  if (name == "torus-oracle") return run_torus_oracle(cfg, out_dir);
  if (name == "verify-all") return run_verify_all(cfg, out_dir);
  throw ConfigError("unknown subcommand: " + name);
}

}  // namespace rwre
