#include "rwre/drift_conditions.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rwre {

double drift_alpha(int dim) {
  if (dim == 2) return 2.0;
  if (dim == 3) return 2.5;
  if (dim >= 4) return 3.0;
  throw std::invalid_argument("drift_alpha: dimension must be >= 2");
}

DriftConditionReport check_drift_condition(const EnvironmentField& env,
                                           const DriftConditionSpec& spec) {
  if (!(spec.C > 0.0))
    throw std::invalid_argument("check_drift_condition: C must be positive");

  double eps = env.epsilon();
  double lhs = local_drift(env.annealed_kernel())[0];

  double rhs = 0.0;
  const char* name = nullptr;
  switch (spec.kind) {
    case DriftConditionKind::LLD:
      rhs = spec.C * eps;
      name = "LLD";
      break;
    case DriftConditionKind::QLD:
      rhs = spec.C * eps * eps;
      name = "QLD";
      break;
    case DriftConditionKind::LD: {
      if (!env.base().symmetric() ||
          std::abs(env.base().min_prob() - 1.0 / num_directions(env.dim())) > 1e-12)
        throw std::invalid_argument(
            "check_drift_condition: (LD) requires the uniform base kernel p0 = 1/(2d)");
      if (!(spec.eta > 0.0 && spec.eta < 1.0))
        throw std::invalid_argument("check_drift_condition: (LD) requires eta in (0,1)");
      rhs = spec.C * std::pow(eps, drift_alpha(env.dim()) - spec.eta);
      name = "LD";
      break;
    }
  }

  DriftConditionReport rep;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.holds = lhs > rhs;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "(%s): E[d(0,omega).e1] = %.6g %s threshold %.6g",
                name, lhs, rep.holds ? ">" : "<=", rhs);
  rep.description = buf;
  return rep;
}

}  // namespace rwre
