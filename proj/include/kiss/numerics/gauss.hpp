#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "kiss/error.hpp"

namespace kiss {

template <class Real>
struct GaussRule {
  std::vector<Real> nodes;    // ascending in (-1, 1)
  std::vector<Real> weights;
};

namespace detail {

template <class Real>
Real newton_tolerance() {
  using std::abs;
  return std::numeric_limits<Real>::epsilon() * 8;
}

// P_n^{(a,b)} and P_{n-1}^{(a,b)} at x by the three-term recurrence.
template <class Real>
void jacobi_pair(int n, const Real& a, const Real& b, const Real& x, Real& pn, Real& pnm1) {
  Real p0 = 1;
  Real p1 = (a - b) / 2 + (a + b + 2) * x / 2;
  if (n == 0) {
    pn = p0;
    pnm1 = 0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    Real c = 2 * k + a + b;
    Real lhs = 2 * k * (k + a + b) * (c - 2);
    Real t1 = (c - 1) * (c * (c - 2) * x + a * a - b * b);
    Real t2 = 2 * (k + a - 1) * (k + b - 1) * c;
    Real p2 = (t1 * p1 - t2 * p0) / lhs;
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  pnm1 = p0;
}

inline std::vector<double> golub_welsch_guess(int n, double a, double b) {
  Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 1);
  for (int k = 0; k < n; ++k) {
    double c = 2.0 * k + a + b;
    diag(k) = k == 0 ? (b - a) / (a + b + 2) : (b * b - a * a) / (c * (c + 2));
    if (k >= 1) {
      double beta;
      if (k == 1) {
        beta = 4.0 * (1 + a) * (1 + b) / ((2 + a + b) * (2 + a + b) * (3 + a + b));
      } else {
        beta = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (c * c * (c + 1) * (c - 1));
      }
      off(k - 1) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off.head(n > 1 ? n - 1 : 0), Eigen::EigenvaluesOnly);
  std::vector<double> x(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return x;
}

}  // namespace detail

// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1,1], computed at the
// precision of Real by Newton refinement of double-precision seeds.
template <class Real>
GaussRule<Real> gauss_jacobi(int n, const Real& a, const Real& b) {
  using std::abs;
  using std::exp;
  using std::lgamma;
  using std::log;
  using std::pow;
  if (n < 1) fail(ErrorCode::InvalidArgument, "gauss_jacobi: n must be positive");
  std::vector<double> seeds =
      detail::golub_welsch_guess(n, static_cast<double>(a), static_cast<double>(b));
  GaussRule<Real> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  Real tol = detail::newton_tolerance<Real>();
  Real lognorm = lgamma(Real(n) + a) + lgamma(Real(n) + b) - lgamma(Real(n) + 1) -
                 lgamma(Real(n) + a + b + 1);
  Real c = 2 * n + a + b;
  for (int i = 0; i < n; ++i) {
    Real x = seeds[i];
    Real pn, pnm1, dp;
    for (int it = 0; it < 200; ++it) {
      detail::jacobi_pair(n, a, b, x, pn, pnm1);
      dp = (n * ((a - b) - c * x) * pn + 2 * (n + a) * (n + b) * pnm1) / (c * (1 - x * x));
      Real dx = pn / dp;
      x -= dx;
      if (abs(dx) <= tol * (1 + abs(x))) break;
      if (it == 199) fail(ErrorCode::NonConverged, "gauss_jacobi: Newton did not converge");
    }
    detail::jacobi_pair(n, a, b, x, pn, pnm1);
    dp = (n * ((a - b) - c * x) * pn + 2 * (n + a) * (n + b) * pnm1) / (c * (1 - x * x));
    rule.nodes[i] = x;
    rule.weights[i] = exp(lognorm) * c * pow(Real(2), a + b) / (dp * pnm1);
  }
  return rule;
}

template <class Real>
GaussRule<Real> gauss_legendre(int n) {
  return gauss_jacobi<Real>(n, Real(0), Real(0));
}

}  // namespace kiss
