#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kiss/exact/oracle.hpp"

namespace kiss {

using BigFunction = std::function<BigComplex(const BigComplex&)>;

// Complex Gaussian rule: nodes are the zeros of p_n, weights match m_0..m_{n-1}.
struct QuadratureRule {
  int n = 0;
  double lambda = 0, alpha = 0, beta = 0, omega = 0;
  unsigned bits = 0;
  std::vector<BigComplex> nodes;
  std::vector<BigComplex> weights;
  double exactness = 0;  // max_{k<2n} |sum w_j x_j^k - m_k| / max(1, max |m_k|)
  double hull_radius = 0;  // max |x_j|
};

struct RuleOptions {
  unsigned bits = 0;         // 0: oracle_bits(n)
  double exactness_tol = 0;  // 0: 10^{-(digits/2)}
};

QuadratureRule build_rule(const WeightSpec& weight, const RuleOptions& opt = {});
BigComplex integrate_oscillatory(const BigFunction& f, const QuadratureRule& rule);

// int f h e^{i omega x} on [-1,1] at twice the precision and node density of the rule.
BigComplex reference_integral(const BigFunction& f, const WeightSpec& weight, unsigned bits);

// Named test functions usable across the process boundary: 1, x2, exp, cos, pole3.
BigFunction builtin_function(const std::string& name);
std::vector<std::string> builtin_function_names();

}  // namespace kiss
