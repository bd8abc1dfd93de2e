#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "kiss/exact/oracle.hpp"

namespace kiss {

namespace {

using BigMatrix = Eigen::Matrix<BigComplex, Eigen::Dynamic, Eigen::Dynamic>;
using BigVector = Eigen::Matrix<BigComplex, Eigen::Dynamic, 1>;

// p and p' by Horner.
void horner(const std::vector<BigComplex>& c, const BigComplex& z, BigComplex& p, BigComplex& dp) {
  p = BigComplex(1);
  dp = BigComplex(0);
  for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) {
    dp = dp * z + p;
    p = p * z + c[j];
  }
}

BigReal max_coeff(const std::vector<BigComplex>& c) {
  BigReal r = 1;
  for (const BigComplex& x : c) r = std::max(r, BigReal(abs(x)));
  return r;
}

}  // namespace

BigComplex ExactPolynomial::operator()(const BigComplex& z) const {
  ScopedPrecision sp(bits);
  BigComplex p(1);
  for (int j = n - 1; j >= 0; --j) p = p * z + coeffs[j];
  return p;
}

Complex ExactPolynomial::operator()(Complex z) const { return to_complex((*this)(to_big(z))); }

Complex ExactPolynomial::log_abs_arg(Complex z) const {
  ScopedPrecision sp(bits);
  BigComplex p = (*this)(to_big(z));
  return {to_double(BigReal(log(abs(p)))), to_double(BigReal(atan2(imag(p), real(p))))};
}

ExactPolynomial solve_orthogonality(const MomentTable& t, const WeightSpec& weight, double singular_ratio) {
  int n = weight.n;
  if (static_cast<int>(t.m.size()) < 2 * n) fail(ErrorCode::InvalidArgument, "moment table too short");
  ScopedPrecision sp(t.bits);
  ExactPolynomial p;
  p.n = n;
  p.lambda = weight.lambda;
  p.alpha = weight.alpha;
  p.beta = weight.beta;
  p.bits = t.bits;
  p.moment_error = t.max_error();
  BigMatrix H(n, n);
  BigVector rhs(n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) H(k, j) = t.m[k + j];
    rhs(k) = -t.m[k + n];
  }
  Eigen::PartialPivLU<BigMatrix> lu(H);
  BigReal umin = -1, umax = 0;
  for (int i = 0; i < n; ++i) {
    BigReal u = abs(lu.matrixLU()(i, i));
    umax = std::max(umax, u);
    umin = umin < 0 ? u : std::min(umin, u);
  }
  p.pivot_ratio = umax > 0 ? to_double(BigReal(umin / umax)) : 0.0;
  double thresh = singular_ratio > 0 ? singular_ratio : std::ldexp(1.0, -static_cast<int>(t.bits) / 2);
  if (!(umin > 0) || umin / umax < thresh)
    fail(ErrorCode::SingularSystem, "moment system is numerically singular; deg p_n may drop");
  BigVector c = lu.solve(rhs);
  p.coeffs.assign(c.data(), c.data() + n);

  BigReal scale = 0;
  for (const BigComplex& m : t.m) scale = std::max(scale, BigReal(abs(m)));
  BigReal worst = 0;
  for (int k = 0; k < n; ++k) {
    BigComplex r = t.m[k + n];
    for (int j = 0; j < n; ++j) r += p.coeffs[j] * t.m[k + j];
    worst = std::max(worst, BigReal(abs(r)));
  }
  p.residual = to_double(BigReal(worst / scale));
  if (static_cast<int>(t.m.size()) > 2 * n) {
    BigComplex nr = t.m[2 * n];
    for (int j = 0; j < n; ++j) nr += p.coeffs[j] * t.m[n + j];
    p.norm = nr;
  }
  return p;
}

ExactPolynomial solve_orthogonality(const WeightSpec& weight, const OracleOptions& opt) {
  unsigned bits = opt.bits ? opt.bits : oracle_bits(weight.n);
  ExactPolynomial p = solve_orthogonality(compute_moments(weight, bits, 1), weight, opt.singular_ratio);
  if (opt.escalate) {
    ExactPolynomial q = solve_orthogonality(compute_moments(weight, 2 * bits, 1), weight, opt.singular_ratio);
    double allowed = std::pow(10.0, -0.2 * digits_for_bits(bits));
    if (escalation_change(p, q) > allowed) return q;
  }
  return p;
}

double escalation_change(const ExactPolynomial& lo, const ExactPolynomial& hi) {
  ScopedPrecision sp(hi.bits);
  BigReal d = 0;
  for (int j = 0; j < lo.n; ++j) d = std::max(d, BigReal(abs(lo.coeffs[j] - hi.coeffs[j])));
  return to_double(d);
}

std::vector<BigComplex> polynomial_zeros(const ExactPolynomial& p, double tol) {
  int n = p.n;
  ScopedPrecision sp(p.bits);
  std::vector<BigComplex> z(n);
  BigReal pi = big_pi();
  for (int k = 0; k < n; ++k) {
    BigReal t = 2 * pi * k / n + BigReal(0.4);
    z[k] = BigComplex(BigReal(1.5) * cos(t), BigReal(1.5) * sin(t));
  }
  BigReal stop = tol > 0 ? BigReal(tol) : pow(BigReal(2), -static_cast<int>(p.bits) + 16);
  // ill-conditioned zeros stall above `stop`; accept a plateau below 2^{-bits/3}
  BigReal plateau = pow(BigReal(2), -static_cast<int>(p.bits) / 3);
  BigReal prev = -1;
  int flat = 0;
  BigComplex f, df;
  bool done = false;
  for (int it = 0; it < 1000 && !done; ++it) {
    BigReal worst = 0;
    for (int i = 0; i < n; ++i) {
      horner(p.coeffs, z[i], f, df);
      if (f == BigComplex(0)) continue;
      BigComplex ratio = f / df;
      BigComplex s(0);
      for (int j = 0; j < n; ++j)
        if (j != i) s += BigComplex(1) / (z[i] - z[j]);
      BigComplex step = ratio / (BigComplex(1) - ratio * s);
      z[i] -= step;
      worst = std::max(worst, BigReal(abs(step) / std::max(BigReal(1), BigReal(abs(z[i])))));
    }
    if (prev >= 0 && worst < plateau && worst > prev / 2) ++flat;
    else flat = 0;
    prev = worst;
    done = worst <= stop || flat >= 3;
  }
  if (!done) fail(ErrorCode::NotConverged, "Aberth iteration did not converge");
  for (int i = 0; i < n; ++i)
    for (int it = 0; it < 2; ++it) {
      horner(p.coeffs, z[i], f, df);
      if (df != BigComplex(0)) z[i] -= f / df;
    }
  return z;
}

double zeros_residual(const ExactPolynomial& p, const std::vector<BigComplex>& zeros) {
  ScopedPrecision sp(p.bits);
  BigReal worst = 0;
  BigComplex f, df;
  for (const BigComplex& z : zeros) {
    horner(p.coeffs, z, f, df);
    worst = std::max(worst, BigReal(abs(f)));
  }
  return to_double(BigReal(worst / max_coeff(p.coeffs)));
}

double cauchy_transform_check(const ExactPolynomial& p, const WeightSpec& weight, double radius) {
  ScopedPrecision sp(p.bits);
  WeightSpec w = weight;
  w.n = p.n;
  BigReal pi = big_pi();
  BigComplex two_pi_i(BigReal(0), 2 * pi);
  std::vector<BigComplex> v;
  for (int a = 0; a < 8; ++a) {
    BigReal t = 2 * pi * a / 8 + BigReal(0.1);
    BigComplex z(radius * cos(t), radius * sin(t));
    BigComplex c = weighted_integral(w, p.bits, [&](const BigComplex& x) { return p(x) / (x - z); },
                                     nullptr, 2 * p.n) / two_pi_i;
    v.push_back(c * pow(z, p.n + 1));
  }
  BigComplex mean(0);
  for (const BigComplex& x : v) mean += x;
  mean /= BigReal(v.size());
  BigReal worst = 0;
  for (const BigComplex& x : v) worst = std::max(worst, BigReal(abs(x - mean)));
  return to_double(BigReal(worst / abs(mean)));
}

std::vector<BigComplex> cauchy_coefficients(const ExactPolynomial& p, const MomentTable& t) {
  ScopedPrecision sp(p.bits);
  if (static_cast<int>(t.m.size()) < 2 * p.n + 1) fail(ErrorCode::InvalidArgument, "moment table too short");
  BigComplex two_pi_i(BigReal(0), 2 * big_pi());
  std::vector<BigComplex> out;
  for (int k = 0; k <= p.n; ++k) {
    BigComplex s = t.m[k + p.n];
    for (int j = 0; j < p.n; ++j) s += p.coeffs[j] * t.m[k + j];
    out.push_back(-s / two_pi_i);
  }
  return out;
}

std::vector<BigReal> legendre_monic_exact(int n) {
  using boost::multiprecision::cpp_rational;
  auto inner = [](const std::vector<cpp_rational>& a, const std::vector<cpp_rational>& b) {
    cpp_rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if ((i + j) % 2 == 0) s += a[i] * b[j] * cpp_rational(2, static_cast<long>(i + j + 1));
    return s;
  };
  std::vector<std::vector<cpp_rational>> basis;
  for (int k = 0; k <= n; ++k) {
    std::vector<cpp_rational> xk(k + 1, 0);
    xk[k] = 1;
    std::vector<cpp_rational> pk = xk;
    for (const auto& q : basis) {
      cpp_rational c = inner(xk, q) / inner(q, q);
      for (std::size_t i = 0; i < q.size(); ++i) pk[i] -= c * q[i];
    }
    basis.push_back(pk);
  }
  std::vector<BigReal> out;
  for (int j = 0; j < n; ++j) {
    const cpp_rational& q = basis[n][j];
    out.push_back(BigReal(numerator(q).str()) / BigReal(denominator(q).str()));
  }
  return out;
}

}  // namespace kiss
