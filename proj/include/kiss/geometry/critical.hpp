#pragma once

#include "kiss/numerics/precision.hpp"
#include "kiss/numerics/roots.hpp"

namespace kiss {

enum class Regime { Subcritical, Critical, Supercritical };
const char* to_string(Regime r);

// 2 log((2 + sqrt(l^2 + 4)) / l) - sqrt(l^2 + 4); decreasing in l, root at the critical value.
template <class Real>
Real lambda_critical_residual(const Real& lam) {
  using std::log;
  using std::sqrt;
  Real s = sqrt(lam * lam + 4);
  return 2 * log((2 + s) / lam) - s;
}

template <class Real>
Real solve_lambda_critical(const Real& tol) {
  auto F = [](const Real& l) { return lambda_critical_residual<Real>(l); };
  return find_root<Real>(F, Real(1) / 1000, Real(1000), tol);
}

double lambda_critical();  // binary64 value, computed once
Regime classify_regime(double lambda, double band = 1e-8);

}  // namespace kiss
