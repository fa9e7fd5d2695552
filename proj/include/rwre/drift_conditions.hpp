#pragma once

#include <string>

#include "rwre/environment.hpp"

namespace rwre {

enum class DriftConditionKind { LLD, QLD, LD };

// alpha(2) = 2, alpha(3) = 2.5, alpha(d) = 3 for d >= 4.
double drift_alpha(int dim);

struct DriftConditionSpec {
  DriftConditionKind kind = DriftConditionKind::LLD;
  double C = 1.0;
  double eta = 0.0;  // LD only, in (0,1)
};

struct DriftConditionReport {
  bool holds = false;
  double lhs = 0.0;  // E[d(0,omega) . e1], in closed form from model moments
  double rhs = 0.0;  // C eps, C eps^2, or C eps^(alpha(d)-eta)
  std::string description;
};

// Closed-form evaluation of (LLD)/(QLD)/(LD): lhs = drift of p_eps along e1.
DriftConditionReport check_drift_condition(const EnvironmentField& env,
                                           const DriftConditionSpec& spec);

}  // namespace rwre
