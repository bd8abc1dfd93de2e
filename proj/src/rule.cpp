#include "kiss/quadrature/rule.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace kiss {

namespace {
using BigMatrix = Eigen::Matrix<BigComplex, Eigen::Dynamic, Eigen::Dynamic>;
using BigVector = Eigen::Matrix<BigComplex, Eigen::Dynamic, 1>;
}  // namespace

QuadratureRule build_rule(const WeightSpec& weight, const RuleOptions& opt) {
  unsigned bits = opt.bits ? opt.bits : oracle_bits(weight.n);
  int n = weight.n;
  MomentTable t = compute_moments(weight, bits);
  ExactPolynomial p = solve_orthogonality(t, weight);
  ScopedPrecision sp(bits);
  QuadratureRule r;
  r.n = n;
  r.lambda = weight.lambda;
  r.alpha = weight.alpha;
  r.beta = weight.beta;
  r.omega = weight.omega();
  r.bits = bits;
  r.nodes = polynomial_zeros(p);
  std::sort(r.nodes.begin(), r.nodes.end(), [](const BigComplex& a, const BigComplex& b) {
    return real(a) < real(b) || (real(a) == real(b) && imag(a) < imag(b));
  });

  BigReal sep = -1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      BigReal d = abs(r.nodes[i] - r.nodes[j]);
      sep = sep < 0 ? d : std::min(sep, d);
    }
  if (n > 1 && sep < pow(BigReal(2), -static_cast<int>(bits) / 4))
    fail(ErrorCode::SingularSystem, "rule nodes are numerically confluent");

  // transposed Vandermonde: sum_j w_j x_j^k = m_k, k < n
  BigMatrix V(n, n);
  BigVector rhs(n);
  for (int j = 0; j < n; ++j) {
    BigComplex pw(1);
    for (int k = 0; k < n; ++k) {
      V(k, j) = pw;
      pw *= r.nodes[j];
    }
  }
  for (int k = 0; k < n; ++k) rhs(k) = t.m[k];
  BigVector w = Eigen::PartialPivLU<BigMatrix>(V).solve(rhs);
  r.weights.assign(w.data(), w.data() + n);

  BigReal scale = 1, worst = 0, hull = 0;
  for (const BigComplex& m : t.m) scale = std::max(scale, BigReal(abs(m)));
  for (int k = 0; k < 2 * n; ++k) {
    BigComplex s(0);
    for (int j = 0; j < n; ++j) s += r.weights[j] * pow(r.nodes[j], k);
    worst = std::max(worst, BigReal(abs(s - t.m[k])));
  }
  for (const BigComplex& x : r.nodes) hull = std::max(hull, BigReal(abs(x)));
  r.exactness = to_double(BigReal(worst / scale));
  r.hull_radius = to_double(hull);
  double tol = opt.exactness_tol > 0 ? opt.exactness_tol : std::pow(10.0, -0.5 * digits_for_bits(bits));
  if (!(r.exactness <= tol)) fail(ErrorCode::SingularSystem, "rule fails the degree 2n-1 exactness check");
  return r;
}

BigComplex integrate_oscillatory(const BigFunction& f, const QuadratureRule& rule) {
  ScopedPrecision sp(rule.bits);
  BigComplex s(0);
  for (int j = 0; j < rule.n; ++j) s += rule.weights[j] * f(rule.nodes[j]);
  return s;
}

BigComplex reference_integral(const BigFunction& f, const WeightSpec& weight, unsigned bits) {
  double omega = std::abs(weight.omega());
  int density = static_cast<int>(2 * std::max(10 * omega / M_PI, 0.7 * digits_for_bits(bits) + 32));
  return weighted_integral(weight, 2 * bits, f, nullptr, density);
}

BigFunction builtin_function(const std::string& name) {
  if (name == "1") return [](const BigComplex&) { return BigComplex(1); };
  if (name == "x2") return [](const BigComplex& x) { return x * x; };
  if (name == "exp") return [](const BigComplex& x) { return exp(x); };
  if (name == "cos") return [](const BigComplex& x) { return cos(x); };
  if (name == "pole3") return [](const BigComplex& x) { return BigComplex(1) / (x - BigComplex(3)); };
  fail(ErrorCode::InvalidArgument, "unknown test function '" + name + "'");
}

std::vector<std::string> builtin_function_names() { return {"1", "x2", "exp", "cos", "pole3"}; }

}  // namespace kiss
