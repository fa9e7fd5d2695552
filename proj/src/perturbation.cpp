#include "rwre/perturbation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rwre {

namespace {
constexpr double kTol = 1e-12;
}

PerturbationModel::PerturbationModel(int dim, std::vector<PerturbationAtom> atoms)
    : dim_(dim), n_dirs_(num_directions(dim)), atoms_(std::move(atoms)) {
  if (dim_ < 2 || dim_ > kMaxDim)
    throw std::invalid_argument("PerturbationModel: dimension must be in [2, " +
                                std::to_string(kMaxDim) + "]");
  if (atoms_.empty())
    throw std::invalid_argument("PerturbationModel: at least one atom required");

  double wsum = 0.0;
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    const PerturbationAtom& at = atoms_[a];
    if (at.zeta.size() != static_cast<std::size_t>(n_dirs_))
      throw std::invalid_argument("PerturbationModel: atom " + std::to_string(a) +
                                  " has wrong arity");
    if (!(at.weight > 0.0))
      throw std::invalid_argument("PerturbationModel: atom " + std::to_string(a) +
                                  " has nonpositive weight");
    double zsum = 0.0;
    for (double z : at.zeta) {
      if (std::abs(z) > 1.0 + kTol)
        throw std::invalid_argument("PerturbationModel: atom " + std::to_string(a) +
                                    " entry exceeds |zeta| <= 1");
      zsum += z;
    }
    if (std::abs(zsum) > kTol)
      throw std::invalid_argument(
          "PerturbationModel: atom " + std::to_string(a) +
          " violates sum_e zeta(e) = 0 (kernel normalization would break)");
    wsum += at.weight;
  }
  if (std::abs(wsum - 1.0) > kTol)
    throw std::invalid_argument("PerturbationModel: weights sum to " +
                                std::to_string(wsum) + ", expected 1");

  mean_.assign(static_cast<std::size_t>(n_dirs_), 0.0);
  for (const PerturbationAtom& at : atoms_)
    for (int e = 0; e < n_dirs_; ++e)
      mean_[static_cast<std::size_t>(e)] += at.weight * at.zeta[static_cast<std::size_t>(e)];

  cov_.assign(static_cast<std::size_t>(n_dirs_ * n_dirs_), 0.0);
  for (const PerturbationAtom& at : atoms_)
    for (int e = 0; e < n_dirs_; ++e)
      for (int f = 0; f < n_dirs_; ++f)
        cov_[static_cast<std::size_t>(e * n_dirs_ + f)] +=
            at.weight * (at.zeta[static_cast<std::size_t>(e)] - mean_[static_cast<std::size_t>(e)]) *
            (at.zeta[static_cast<std::size_t>(f)] - mean_[static_cast<std::size_t>(f)]);

  cum_weights_.resize(atoms_.size());
  double acc = 0.0;
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    acc += atoms_[a].weight;
    cum_weights_[a] = acc;
  }
  cum_weights_.back() = 1.0;
}

PerturbationModel PerturbationModel::zero(int dim) {
  PerturbationAtom at;
  at.zeta.assign(static_cast<std::size_t>(num_directions(dim)), 0.0);
  at.weight = 1.0;
  return PerturbationModel(dim, {at});
}

PerturbationModel PerturbationModel::standard_test(int dim) {
  PerturbationAtom plus, minus;
  plus.zeta.assign(static_cast<std::size_t>(num_directions(dim)), 0.0);
  minus.zeta.assign(static_cast<std::size_t>(num_directions(dim)), 0.0);
  plus.zeta[0] = +1.0;
  plus.zeta[1] = -1.0;
  plus.weight = 0.75;
  minus.zeta[0] = -1.0;
  minus.zeta[1] = +1.0;
  minus.weight = 0.25;
  return PerturbationModel(dim, {plus, minus});
}

int PerturbationModel::pick_atom(double u) const {
  int n = atom_count();
  for (int a = 0; a < n - 1; ++a)
    if (u < cum_weights_[static_cast<std::size_t>(a)]) return a;
  return n - 1;
}

}  // namespace rwre
