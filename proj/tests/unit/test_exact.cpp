#include <doctest.h>

#include <algorithm>

#include "kiss/error.hpp"
#include "kiss/exact/oracle.hpp"

using namespace kiss;

namespace {

WeightSpec plain(double lambda, int n) {
  WeightSpec w;
  w.lambda = lambda;
  w.n = n;
  return w;
}

}  // namespace

TEST_CASE("moments of the plain oscillatory weight") {
  WeightSpec w = plain(1.0, 6);
  MomentTable t = compute_moments(w, 256);
  ScopedPrecision sp(256);
  BigReal om(6);
  // m_0 = 2 sin(omega) / omega, m_1 = 2i (sin omega - omega cos omega) / omega^2
  BigComplex m0(2 * sin(om) / om, BigReal(0));
  BigComplex m1(BigReal(0), 2 * (sin(om) - om * cos(om)) / (om * om));
  CHECK(abs(t.m[0] - m0) < BigReal("1e-60"));
  CHECK(abs(t.m[1] - m1) < BigReal("1e-60"));
  CHECK(t.max_error() < 1e-60);
  CHECK(oracle_bits(10) == 256);
  CHECK(oracle_bits(40) == 480);
}

TEST_CASE("classical reduction: Legendre polynomials from the moment system") {
  for (int n = 1; n <= 12; ++n) {
    ExactPolynomial p = solve_orthogonality(plain(0.0, n));
    std::vector<BigReal> exact = legendre_monic_exact(n);
    ScopedPrecision sp(p.bits);
    BigReal worst = 0;
    for (int j = 0; j < n; ++j) worst = std::max(worst, BigReal(abs(p.coeffs[j] - BigComplex(exact[j]))));
    CHECK(worst < BigReal("1e-20"));
    CHECK(p.residual < 1e-40);
  }
}

TEST_CASE("zeros of the degree-8 Legendre polynomial are the Gauss-Legendre nodes") {
  ExactPolynomial p = solve_orthogonality(plain(0.0, 8));
  std::vector<BigComplex> z = polynomial_zeros(p);
  CHECK(zeros_residual(p, z) < 1e-40);
  ScopedPrecision sp(p.bits);
  GaussRule<BigReal> g = gauss_legendre<BigReal>(8);
  std::sort(z.begin(), z.end(), [](const BigComplex& a, const BigComplex& b) { return real(a) < real(b); });
  for (int i = 0; i < 8; ++i) CHECK(abs(z[i] - BigComplex(g.nodes[i])) < BigReal("1e-20"));
}

TEST_CASE("oscillatory oracle: orthogonality, zeros and the Cauchy transform") {
  WeightSpec w = plain(2.0, 10);
  w.alpha = 0.5;
  w.beta = -0.25;
  w.h_star = AnalyticFactor::exponential(Complex(0.3, 0.1));
  unsigned bits = oracle_bits(10);
  MomentTable t = compute_moments(w, bits, 1);
  ExactPolynomial p = solve_orthogonality(t, w);
  CHECK(p.residual < 1e-50);
  std::vector<BigComplex> z = polynomial_zeros(p);
  CHECK(z.size() == 10u);
  CHECK(zeros_residual(p, z) < 1e-40);
  // C(p w)(z) = O(z^{-n-1}): the first n Laurent coefficients vanish
  std::vector<BigComplex> c = cauchy_coefficients(p, t);
  ScopedPrecision sp(bits);
  for (int k = 0; k < 10; ++k) CHECK(abs(c[k]) < BigReal("1e-50"));
  CHECK(abs(c[10]) > BigReal("1e-20"));
  // the deviation from z^{-n-1} decays like 1/|z|
  double d3 = cauchy_transform_check(p, w, 1e3), d5 = cauchy_transform_check(p, w, 1e5);
  CHECK(d3 / d5 == doctest::Approx(100).epsilon(0.05));
  // orthogonality checked by an independent integral of x^k p(x)
  for (int k : {0, 5, 9}) {
    auto f = [&](const BigComplex& x) { return pow(x, k) * p(x); };
    double err = 0;
    BigComplex v = weighted_integral(w, bits, f, &err);
    CHECK(abs(v) < BigReal("1e-50"));
  }
}

TEST_CASE("precision escalation and singular systems") {
  WeightSpec w = plain(2.0, 12);
  ExactPolynomial lo = solve_orthogonality(w, OracleOptions{256, false, 0});
  ExactPolynomial hi = solve_orthogonality(w, OracleOptions{512, false, 0});
  CHECK(escalation_change(lo, hi) < 1e-50);
  ExactPolynomial e = solve_orthogonality(w, OracleOptions{256, true, 0});
  CHECK(escalation_change(e, hi) < 1e-50);
  try {
    solve_orthogonality(w, OracleOptions{256, false, 0.999});
    FAIL("expected SingularSystem");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::SingularSystem);
  }
}
