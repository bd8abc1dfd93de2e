#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "kiss/geometry/weight.hpp"
#include "kiss/numerics/gauss.hpp"
#include "kiss/numerics/precision.hpp"

namespace kiss {

// m_k = int_{-1}^{1} x^k h(x) e^{i omega x} dx, k = 0..count-1, omega = lambda n.
struct MomentTable {
  int n = 0;
  double omega = 0;
  unsigned bits = 0;
  int nodes = 0;                 // Gauss-Jacobi nodes of the accepted table
  std::vector<BigComplex> m;
  std::vector<double> error;     // |difference| against the next finer rule
  double max_error() const;
};

// max(256, 12 n).
unsigned oracle_bits(int n);

// Gauss-Jacobi rule for (1-x)^a (1+x)^b at the given precision, cached by (nodes, a, b, bits).
std::shared_ptr<const GaussRule<BigReal>> cached_gauss_jacobi(int nodes, double a, double b, unsigned bits);

// Moments 0..2n-1+extra for weight.n = n. Node counts are multiples of 64 with at
// least 10 nodes per period of e^{i omega x}; the table is accepted once two
// consecutive rules agree to 10^{-(digits-5)}.
MomentTable compute_moments(const WeightSpec& weight, unsigned bits, int extra = 0);

// int_{-1}^{1} f(x) h(x) e^{i omega x} dx by the same rules, with the error estimate.
BigComplex weighted_integral(const WeightSpec& weight, unsigned bits,
                             const std::function<BigComplex(const BigComplex&)>& f, double* error = nullptr,
                             int min_nodes = 0);

struct ExactPolynomial {
  int n = 0;
  double lambda = 0, alpha = 0, beta = 0;
  unsigned bits = 0;
  std::vector<BigComplex> coeffs;  // c_0..c_{n-1}; p(x) = x^n + sum c_j x^j
  BigComplex norm;                 // int x^n p h e^{i omega x}
  double residual = 0;             // max_k<n |int x^k p h e^{i omega x}|, scaled by max |m_k|
  double moment_error = 0;
  double pivot_ratio = 0;          // min/max |U_ii| of the LU factorization

  BigComplex operator()(const BigComplex& z) const;
  Complex operator()(Complex z) const;
  // log p(z) in binary64, usable where p(z) overflows.
  Complex log_abs_arg(Complex z) const;
};

struct OracleOptions {
  unsigned bits = 0;          // 0: oracle_bits(n)
  bool escalate = false;      // re-solve at 2x bits and compare
  double singular_ratio = 0;  // 0: 2^{-bits/2}
};

// Monic p_n from the n x n moment system sum_j c_j m_{k+j} = -m_{k+n}, k < n.
ExactPolynomial solve_orthogonality(const WeightSpec& weight, const OracleOptions& opt = {});
ExactPolynomial solve_orthogonality(const MomentTable& moments, const WeightSpec& weight,
                                    double singular_ratio = 0);

// Maximum over coefficients of |c(P) - c(2P)| when escalating.
double escalation_change(const ExactPolynomial& lo, const ExactPolynomial& hi);

// All n zeros by Aberth-Ehrlich iteration (start on |z| = 1.5) and Newton polishing.
std::vector<BigComplex> polynomial_zeros(const ExactPolynomial& p, double tol = 0);
// max |p(z_i)| / max(1, max |c_j|).
double zeros_residual(const ExactPolynomial& p, const std::vector<BigComplex>& zeros);

// Max over 8 angles of |v - mean| / |mean|, v = C(p w)(z) z^{n+1}, |z| = radius.
double cauchy_transform_check(const ExactPolynomial& p, const WeightSpec& weight, double radius = 1e3);
// Coefficients of z^{-k-1}, k = 0..n, of C(p w)(z): -(1/2 pi i) sum_j c_j m_{j+k}.
std::vector<BigComplex> cauchy_coefficients(const ExactPolynomial& p, const MomentTable& moments);

// Rational Gram-Schmidt oracle for omega = 0, alpha = beta = 0, h* = 1 (Legendre case):
// exact monic coefficients as fractions num/den of arbitrary size, converted to BigReal.
std::vector<BigReal> legendre_monic_exact(int n);

}  // namespace kiss
