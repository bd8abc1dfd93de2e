#include "kiss/geometry/critical.hpp"

#include <cmath>

namespace kiss {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
  }
  return "unknown";
}

double lambda_critical() {
  static const double value = [] {
    ScopedPrecision guard(128);
    return to_double(solve_lambda_critical<BigReal>(BigReal("1e-30")));
  }();
  return value;
}

Regime classify_regime(double lambda, double band) {
  double lc = lambda_critical();
  if (std::abs(lambda - lc) <= band) return Regime::Critical;
  return lambda < lc ? Regime::Subcritical : Regime::Supercritical;
}

}  // namespace kiss
