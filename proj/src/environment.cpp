#include "rwre/environment.hpp"

#include <stdexcept>
#include <string>

namespace rwre {

EnvironmentField::EnvironmentField(TransitionKernel base, double epsilon,
                                   PerturbationModel model, std::uint64_t seed,
                                   std::optional<std::int64_t> period)
    : base_(std::move(base)),
      epsilon_(epsilon),
      model_(std::move(model)),
      seed_(seed),
      period_(period) {
  if (model_.dim() != base_.dim)
    throw std::invalid_argument("EnvironmentField: model/base dimension mismatch");
  double min_p = base_.min_prob();
  if (epsilon_ < 0.0)
    throw std::invalid_argument("EnvironmentField: epsilon must be >= 0");
  kappa_ = min_p - epsilon_;
  // epsilon = 0 is the unperturbed (possibly non-elliptic) degenerate case;
  // any actual perturbation must keep kappa positive.
  if (epsilon_ > 0.0 && !(kappa_ > 0.0))
    throw std::invalid_argument(
        "EnvironmentField: epsilon >= min_e p0(e) breaks uniform ellipticity "
        "(kappa = min p0 - epsilon must be > 0)");
  if (period_ && *period_ < 2)
    throw std::invalid_argument("EnvironmentField: period must be >= 2");

  int n = num_directions(dim());
  atom_kernels_.reserve(static_cast<std::size_t>(model_.atom_count()));
  atom_dir_cdf_.reserve(static_cast<std::size_t>(model_.atom_count()));
  for (int a = 0; a < model_.atom_count(); ++a) {
    std::vector<double> probs(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e)
      probs[static_cast<std::size_t>(e)] =
          base_.probs[static_cast<std::size_t>(e)] +
          epsilon_ * model_.atom(a).zeta[static_cast<std::size_t>(e)];
    atom_kernels_.emplace_back(dim(), probs);
    std::vector<double> cdf(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (int e = 0; e < n; ++e) {
      acc += probs[static_cast<std::size_t>(e)];
      cdf[static_cast<std::size_t>(e)] = acc;
    }
    cdf.back() = 1.0;
    atom_dir_cdf_.push_back(std::move(cdf));
  }
}

TransitionKernel EnvironmentField::annealed_kernel() const {
  int n = num_directions(dim());
  std::vector<double> probs(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e)
    probs[static_cast<std::size_t>(e)] =
        base_.probs[static_cast<std::size_t>(e)] +
        epsilon_ * model_.mean()[static_cast<std::size_t>(e)];
  return TransitionKernel(dim(), std::move(probs));
}

EnvironmentSpec standard_test_spec(int dim, double epsilon,
                                   std::optional<std::int64_t> period) {
  return EnvironmentSpec{TransitionKernel::uniform(dim), epsilon,
                         PerturbationModel::standard_test(dim), period};
}

}  // namespace rwre
