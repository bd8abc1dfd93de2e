#include <doctest.h>

#include <algorithm>

#include "kiss/error.hpp"
#include "kiss/quadrature/rule.hpp"

using namespace kiss;

namespace {

WeightSpec plain(double lambda, int n) {
  WeightSpec w;
  w.lambda = lambda;
  w.n = n;
  return w;
}

void sort_rule(QuadratureRule& r) {
  std::vector<int> idx(r.n);
  for (int i = 0; i < r.n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return real(r.nodes[a]) < real(r.nodes[b]); });
  std::vector<BigComplex> x, w;
  for (int i : idx) {
    x.push_back(r.nodes[i]);
    w.push_back(r.weights[i]);
  }
  r.nodes = x;
  r.weights = w;
}

}  // namespace

TEST_CASE("rules integrate the moments through degree 2n - 1") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    WeightSpec w = plain(lambda, 10);
    w.alpha = 0.5;
    w.beta = -0.25;
    QuadratureRule r = build_rule(w);
    CHECK(r.exactness < 1e-20);
    CHECK(r.nodes.size() == 10u);
    CHECK(r.hull_radius < 3.0);
  }
}

TEST_CASE("rules are continuous as omega tends to zero") {
  int n = 8;
  QuadratureRule a = build_rule(plain(0.0, n)), b = build_rule(plain(1e-6 / n, n));
  sort_rule(a);
  sort_rule(b);
  ScopedPrecision sp(a.bits);
  BigReal drift = 0;
  for (int i = 0; i < n; ++i) {
    drift = std::max(drift, BigReal(abs(a.nodes[i] - b.nodes[i])));
    drift = std::max(drift, BigReal(abs(a.weights[i] - b.weights[i])));
  }
  CHECK(drift < BigReal("1e-4"));
  CHECK(drift > 0);
  // at omega = 0 the rule is Gauss-Legendre
  GaussRule<BigReal> g = gauss_legendre<BigReal>(n);
  for (int i = 0; i < n; ++i) {
    CHECK(abs(a.nodes[i] - BigComplex(g.nodes[i])) < BigReal("1e-20"));
    CHECK(abs(a.weights[i] - BigComplex(g.weights[i])) < BigReal("1e-20"));
  }
}

TEST_CASE("oscillatory integral of e^x") {
  WeightSpec w = plain(1.0, 12);
  QuadratureRule r = build_rule(w);
  BigFunction f = builtin_function("exp");
  ScopedPrecision sp(r.bits);
  BigComplex q = integrate_oscillatory(f, r);
  BigComplex ref = reference_integral(f, w, r.bits);
  // closed form: (e^{1 + i omega} - e^{-1 - i omega}) / (1 + i omega)
  BigComplex a(BigReal(1), BigReal(12));
  BigComplex exact = (exp(a) - exp(-a)) / a;
  CHECK(abs(ref - exact) / abs(exact) < BigReal("1e-40"));
  CHECK(abs(q - ref) / abs(ref) < BigReal("1e-8"));
}

TEST_CASE("named functions") {
  std::vector<std::string> names = builtin_function_names();
  for (const char* s : {"1", "x2", "exp", "cos", "pole3"})
    CHECK(std::find(names.begin(), names.end(), s) != names.end());
  CHECK_THROWS_AS(builtin_function("nope"), Error);
  WeightSpec w = plain(1.0, 12);
  QuadratureRule r = build_rule(w);
  ScopedPrecision sp(r.bits);
  BigComplex q = integrate_oscillatory(builtin_function("pole3"), r);
  BigComplex ref = reference_integral(builtin_function("pole3"), w, r.bits);
  CHECK(isfinite(real(q)));
  CHECK(abs(q - ref) / abs(ref) < BigReal("1e-6"));
  // x^2 is integrated exactly
  BigComplex q2 = integrate_oscillatory(builtin_function("x2"), r);
  CHECK(abs(q2 - reference_integral(builtin_function("x2"), w, r.bits)) < BigReal("1e-20"));
}
