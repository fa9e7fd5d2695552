#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/green.hpp"
#include "rwre/torus.hpp"
#include "rwre/walk.hpp"

namespace rwre {

// First-order expansion of the window density: a pattern on B evaluates to
// 1 + eps sum_{z in B} sum_e xi_bar(z,e) K(z+e). The coefficient K comes
// from a J table of the reversed kernel, evaluated with the argument order
// fixed by the exact torus solve (see argument_convention).
struct DensityExpansion {
  Window window;
  double epsilon = 0.0;
  std::string kernel_form;          // "p*_eps" (annealed) or "p*_0" (base)
  std::string argument_convention;  // "reflected": K(z+e) = J_{p*}(-(z+e))
  PerturbationModel model;
  std::vector<std::vector<double>> coeff;  // [window site][direction]

  DensityExpansion(Window w, double eps, PerturbationModel m)
      : window(std::move(w)), epsilon(eps), model(std::move(m)) {}

  double evaluate_atoms(const std::vector<int>& atoms) const;
  double evaluate(std::uint64_t pattern_id, const PatternCodec& codec) const;
};

DensityExpansion first_order_density(const TransitionKernel& base, double epsilon,
                                     const PerturbationModel& model,
                                     const Window& window, const JTable& jtable);

// Same contraction against an explicit coefficient table K(x) (e.g. exact
// torus J values); used to adjudicate conventions against the oracle.
DensityExpansion density_from_coefficients(
    const TransitionKernel& base, double epsilon, const PerturbationModel& model,
    const Window& window, const std::vector<double>& torus_j, std::int64_t L,
    bool reflect_argument);

// The displayed d=2 closed-form density on B = {(0,0),(1,0)} for uniform p0,
// with coefficients 4/pi and 8/pi - 4, exactly as printed.
double explicit_2d_density(const PerturbationModel& model, double epsilon,
                           const std::vector<int>& atoms);

struct VelocityExpansion {
  Vec d0{};
  Vec d1{};
  Vec d2{};
  double epsilon = 0.0;
  std::string kernel_form;
  std::string argument_convention;

  Vec v_approx() const {
    Vec v{};
    for (int i = 0; i < kMaxDim; ++i)
      v[i] = d0[i] + epsilon * d1[i] + epsilon * epsilon * d2[i];
    return v;
  }
};

// d0 = drift of p0, d1 = sum_e e E[xi(0,e)], and
// d2 = sum_e e (sum_e' C_{e,e'} K(e')) with K from the J table under the
// oracle-fixed convention. The scalar reading of the paper's display makes
// d2 vanish identically and is rejected (degenerate).
VelocityExpansion velocity_coefficients(const TransitionKernel& base,
                                        const PerturbationModel& model,
                                        double epsilon, const JTable& jtable);

// Exact realization of the expansion recursion h_{i+1} = -(R0*-I)^{-1} A* h_i
// on a periodized environment, plus the exact stationary density N pi for
// comparison.
struct TorusExpansion {
  int order = 1;
  std::vector<std::vector<double>> h;  // h[0..order] over torus sites
  std::vector<double> exact_density;   // N pi(x)
  double stationary_residual = 0.0;

  // max_x |exact - sum_{i<=m} eps^i h_i| for m <= order
  double reconstruction_residual(double epsilon, int m) const;
};

TorusExpansion torus_expansion_terms(const EnvironmentField& env, int order);

}  // namespace rwre
