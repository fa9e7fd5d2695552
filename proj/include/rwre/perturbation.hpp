#pragma once

#include <vector>

#include "rwre/lattice.hpp"

namespace rwre {

// One atom of a finite-support perturbation law: a vector zeta over the 2d
// directions with sum_e zeta(e) = 0 and |zeta(e)| <= 1, carried with its
// probability weight.
struct PerturbationAtom {
  std::vector<double> zeta;
  double weight = 0.0;
};

// Finite-support law of the per-site perturbation vector xi(x, .), with the
// derived moments used throughout: mean E[xi(0,e)], covariance
// C_{e,e'} = Cov(xi(0,e), xi(0,e')), and the centered atoms
// xi_bar = xi - E[xi].
class PerturbationModel {
 public:
  PerturbationModel(int dim, std::vector<PerturbationAtom> atoms);

  static PerturbationModel zero(int dim);

  // Two-atom e1-biased perturbation used as the standard test model:
  // zeta+ = (+1,-1,0,...) w.p. 3/4 and zeta- = (-1,+1,0,...) w.p. 1/4.
  static PerturbationModel standard_test(int dim);

  int dim() const { return dim_; }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  const PerturbationAtom& atom(int a) const { return atoms_[static_cast<std::size_t>(a)]; }
  const std::vector<PerturbationAtom>& atoms() const { return atoms_; }

  const std::vector<double>& mean() const { return mean_; }
  double cov(int e, int e2) const {
    return cov_[static_cast<std::size_t>(e * n_dirs_ + e2)];
  }
  // xi_bar(e) = zeta_a(e) - E[xi(0,e)] for atom a.
  double centered(int a, int e) const {
    return atoms_[static_cast<std::size_t>(a)].zeta[static_cast<std::size_t>(e)] -
           mean_[static_cast<std::size_t>(e)];
  }
  const std::vector<double>& cumulative_weights() const { return cum_weights_; }

  // Index of the atom selected by a uniform draw u in [0,1).
  int pick_atom(double u) const;

 private:
  int dim_;
  int n_dirs_;
  std::vector<PerturbationAtom> atoms_;
  std::vector<double> mean_;
  std::vector<double> cov_;
  std::vector<double> cum_weights_;
};

}  // namespace rwre
