// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
// Usage: acceptance [criterion numbers...]

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "kiss/asymptotics/asymptotics.hpp"
#include "kiss/exact/oracle.hpp"
#include "kiss/quadrature/rule.hpp"
#include "kiss/surface/theta.hpp"
#include "support.hpp"

using namespace kiss;
using kiss::testing::at_fraction;
using kiss::testing::reduce_log;
using kiss::testing::Stopwatch;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " [fail]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

WeightSpec weight(double lambda, bool general) {
  WeightSpec w;
  w.lambda = lambda;
  if (general) {
    w.alpha = 0.5;
    w.beta = -0.25;
    w.h_star = AnalyticFactor::exponential(Complex(0.3, 0.1));
  }
  return w;
}

std::shared_ptr<const TwoCutGeometry> geo2() {
  static auto g = std::make_shared<const TwoCutGeometry>(TwoCutGeometry::build(2.0));
  return g;
}

std::shared_ptr<const OneCutGeometry> geo1() {
  static auto g = std::make_shared<const OneCutGeometry>(OneCutGeometry::build(0.5));
  return g;
}

const EllipticData& surface2() {
  static const EllipticData d = EllipticData::build(geo2());
  return d;
}

double distance_to_identity(const Parametrix2x2& m) {
  return std::max({std::abs(m.a11 - 1.0), std::abs(m.a12), std::abs(m.a21), std::abs(m.a22 - 1.0)});
}

// 1. critical lambda
Outcome criterion1() {
  Outcome o;
  double lc = lambda_critical();
  double res = std::abs(lambda_critical_residual(lc));
  o.require(res <= 1e-12, "residual " + fmt("%.2e", res));
  o.require(lc > 1.32 && lc < 1.33, "lambda_cr " + fmt("%.15f", lc));
  return o;
}

// 2. classical reduction
Outcome criterion2() {
  Outcome o;
  WeightSpec w = weight(0.0, false);
  double worst = 0;
  for (int n = 1; n <= 12; ++n) {
    w.n = n;
    ExactPolynomial p = solve_orthogonality(w);
    std::vector<BigReal> exact = legendre_monic_exact(n);
    ScopedPrecision sp(p.bits);
    for (int j = 0; j < n; ++j) worst = std::max(worst, to_double(BigReal(abs(p.coeffs[j] - BigComplex(exact[j])))));
  }
  o.require(worst <= 1e-20, "coefficients vs rational Gram-Schmidt " + fmt("%.1e", worst));
  w.n = 8;
  ExactPolynomial p = solve_orthogonality(w);
  std::vector<BigComplex> z = polynomial_zeros(p);
  ScopedPrecision sp(p.bits);
  GaussRule<BigReal> g = gauss_legendre<BigReal>(8);
  std::sort(z.begin(), z.end(), [](const BigComplex& a, const BigComplex& b) { return real(a) < real(b); });
  double zw = 0;
  for (int i = 0; i < 8; ++i) zw = std::max(zw, to_double(BigReal(abs(z[i] - BigComplex(g.nodes[i])))));
  o.require(zw <= 1e-20, "n=8 zeros vs Gauss-Legendre " + fmt("%.1e", zw));
  return o;
}

// 3. geometry invariants
Outcome criterion3() {
  Outcome o;
  const OneCutGeometry& g1 = *geo1();
  double m = std::abs(g1.total_mass() - 1.0);
  o.require(m <= 1e-8, "lambda=0.5 mass-1 " + fmt("%.1e", m));
  double sp1 = g1.s_property_residual(20);
  o.require(sp1 <= 1e-5, "lambda=0.5 S-property " + fmt("%.1e", sp1));

  const TwoCutGeometry& g2 = *geo2();
  Complex m1 = g2.arc_mass(1), m2 = g2.arc_mass(2);
  double tot = std::abs(m1 + m2 - 1.0), per = std::max(std::abs(m1 - 0.5), std::abs(m2 - 0.5));
  o.require(tot <= 1e-8, "lambda=2 mass-1 " + fmt("%.1e", tot));
  o.require(per <= 1e-8, "lambda=2 arc masses-1/2 " + fmt("%.1e", per));
  double ti = std::abs(g2.tau_raw().imag());
  o.require(ti <= 1e-8, "|Im tau| " + fmt("%.1e", ti));
  PlanarArc r = g2.gamma1().reflected();
  double refl = 0;
  for (std::size_t i = 0; i < r.size(); ++i) refl = std::max(refl, g2.gamma2().distance_to(r[i]));
  o.require(refl <= 1e-6, "gamma_2 reflection " + fmt("%.1e", refl));
  double sp2 = g2.s_property_residual(10);
  o.require(sp2 <= 1e-5, "lambda=2 S-property " + fmt("%.1e", sp2));
  return o;
}

// 4. surface suite
Outcome criterion4() {
  Outcome o;
  const EllipticData& d = surface2();
  const TwoCutGeometry& g = *geo2();
  double ap = std::abs(d.alpha_period(g.hat_gamma().points()) - 1.0);
  o.require(ap <= 1e-10, "alpha period-1 " + fmt("%.1e", ap));
  o.require(d.B().imag() > 0, "Im B " + fmt("%.6f", d.B().imag()));
  double ja = 0, jb = 0;
  for (double f : {0.2, 0.4, 0.6, 0.8}) {
    auto [h, hn] = at_fraction(g.hat_gamma(), f);
    ja = std::max(ja, std::abs(d.abel(SurfacePoint::at(h, 1), hn) - d.abel(SurfacePoint::at(h, 1), -hn) + d.B()));
    auto [s, sn] = at_fraction(g.gamma1(), f);
    jb = std::max(jb, std::abs(d.abel(SurfacePoint::at(s, 0), sn) - d.abel(SurfacePoint::at(s, 1), -sn) - 1.0));
  }
  o.require(ja <= 1e-8 && jb <= 1e-8, "Abel jumps (-B, 1) " + fmt("%.1e", ja) + ", " + fmt("%.1e", jb));

  {
    ScopedPrecision sp(256);
    BigComplex B = to_big(d.B()), one(1), pii = big_i() * big_pi();
    BigReal worst = 0;
    for (BigComplex u : {BigComplex(BigReal("0.21"), BigReal("0.13")), BigComplex(BigReal("-0.4"), BigReal("0.35"))}) {
      BigComplex t = theta(u, B, 60);
      worst = std::max(worst, BigReal(abs(theta(BigComplex(u + one), B, 60) - t)));
      worst = std::max(worst, BigReal(abs(theta(BigComplex(u + B), B, 60) - exp(-pii * B - BigReal(2) * pii * u) * t)));
    }
    worst = std::max(worst, BigReal(abs(theta(BigComplex((B + one) / BigReal(2)), B, 60))));
    o.require(worst <= BigReal("1e-25"), "theta identities " + fmt("%.1e", to_double(worst)));
  }

  TwoCutAsymptotics T(geo2(), weight(2.0, true));
  Complex c = T.szego().alpha_jump_exponent();
  double tau = g.tau(), tj = 0, res = 0;
  int agree = 0, converged = 0;
  for (int n : {3, 10}) {
    TwoCutDegree deg = T.degree(n);
    for (int k : {0, 1}) {
      const ThetaRatio& th = *deg.theta[k];
      for (double f : {0.3, 0.6}) {
        auto [h, hn] = at_fraction(g.hat_gamma(), f);
        Complex ra = th(SurfacePoint::at(h, 1), hn) / th(SurfacePoint::at(h, 1), -hn);
        tj = std::max(tj, std::abs(ra - std::exp(Complex(0, -M_PI) * (double(n) + 2.0 * c))));
        auto [s, sn] = at_fraction(g.gamma1(), f);
        Complex rb = th(SurfacePoint::at(s, 0), sn) / th(SurfacePoint::at(s, 1), -sn);
        tj = std::max(tj, std::abs(rb - std::exp(Complex(0, -2 * M_PI * tau * n))));
      }
      const JacobiSolver& J = T.jacobi();
      InversionResult r = J.solve(n, k, c);
      res = std::max(res, r.residual);
      Complex target = J.target(n, k, c);
      for (int s = 0; s < J.seed_count(); s += 3) {
        try {
          InversionResult q = J.solve_target(target, s);
          ++converged;
          if (surface_distance(q.point, r.point) < 1e-8) ++agree;
        } catch (const Error&) {
        }
      }
    }
  }
  o.require(tj <= 1e-8, "Theta jump factors " + fmt("%.1e", tj));
  o.require(res <= 1e-10, "Jacobi residual " + fmt("%.1e", res));
  o.require(converged > 0 && agree == converged,
            "multistart " + std::to_string(agree) + "/" + std::to_string(converged) + " agree");
  return o;
}

// Slope of log|f| between two radii along direction dir from e.
template <class F>
double exponent_fit(F&& logf, Complex e, Complex dir) {
  double r1 = 1e-3, r2 = 1e-5;
  return (logf(e + r1 * dir).real() - logf(e + r2 * dir).real()) / std::log(r1 / r2);
}

// 5. Szego suites
Outcome criterion5() {
  Outcome o;
  double one = 0;
  for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{0.5, -0.25}}) {
    WeightSpec w = weight(0.5, false);
    w.alpha = a;
    w.beta = b;
    w.h_star = AnalyticFactor::exponential(Complex(0.2, -0.1));
    SzegoOneCut S(geo1(), w);
    for (int k = 1; k <= 50; ++k) {
      auto [s, n] = at_fraction(geo1()->arc(), k / 51.0);
      Complex prod = std::exp(S.log_value(s, n) + S.log_value(s, -n));
      one = std::max(one, std::abs(prod / (geo1()->w(s, n) * w.h(s)) - 1.0));
    }
  }
  o.require(one <= 1e-7, "one-cut S+S- = w+h " + fmt("%.1e", one));

  WeightSpec w = weight(2.0, true);
  SzegoTwoCut S(surface2(), w);
  double recip = 0, arcs = 0, hat = 0;
  for (Complex z : {Complex(0.3, -0.4), Complex(-1.5, 2.0), Complex(2.5, 0.7), Complex(-0.2, 1.8)})
    recip = std::max(recip, std::abs(S.log_value(SurfacePoint::at(z, 0)) + S.log_value(SurfacePoint::at(z, 1))));
  for (const PlanarArc* a : {&geo2()->gamma1(), &geo2()->gamma2()})
    for (double f : {0.2, 0.5, 0.8}) {
      auto [s, n] = at_fraction(*a, f);
      Complex ref = 0;
      Complex l = S.log_value(SurfacePoint::at(s, 0), n) + S.log_value(SurfacePoint::at(s, 0), -n) + log_h_at(w, Node(s), ref);
      arcs = std::max(arcs, std::abs(reduce_log(l)));
    }
  // alpha cycle: the jump exponent is -c_h with + on the left of hat-gamma
  Complex c = S.alpha_jump_exponent();
  for (double f : {0.2, 0.5, 0.8}) {
    auto [s, n] = at_fraction(geo2()->hat_gamma(), f);
    Complex r = std::exp(S.log_value(SurfacePoint::at(s, 1), n) - S.log_value(SurfacePoint::at(s, 1), -n));
    hat = std::max(hat, std::abs(r - std::exp(Complex(0, 2 * M_PI) * c)));
  }
  o.require(recip <= 1e-7, "two-cut S(z0) S(z1) = 1 " + fmt("%.1e", recip));
  o.require(arcs <= 1e-7, "two-cut S+S- = 1/h " + fmt("%.1e", arcs));
  o.require(hat <= 1e-7, "alpha-cycle jump " + fmt("%.1e", hat));
  Complex dir = Complex(1, -1) / std::sqrt(2.0);
  auto lf = [&](Complex z) { return S.log_value(SurfacePoint::at(z, 0)); };
  double e1 = exponent_fit(lf, 1.0, dir), em1 = exponent_fit(lf, -1.0, -std::conj(dir));
  o.require(std::abs(e1 + w.alpha / 2) <= 0.05, "exponent at 1 " + fmt("%.4f", e1));
  o.require(std::abs(em1 + w.beta / 2) <= 0.05, "exponent at -1 " + fmt("%.4f", em1));
  return o;
}

// 6. parametrix structure
Outcome criterion6() {
  Outcome o;
  WeightSpec w1 = weight(0.5, true);
  OneCutAsymptotics A(geo1(), w1);
  double det1 = 0;
  for (Complex z : kiss::testing::random_points(50, 2.5, {&geo1()->arc()}, 0.05, 11))
    det1 = std::max(det1, std::abs(A.parametrix(z).det() - 1.0));
  double inf1 = distance_to_identity(A.parametrix(Complex(1e6, 0)));

  WeightSpec w2 = weight(2.0, true);
  TwoCutAsymptotics T(geo2(), w2);
  TwoCutDegree d = T.degree(10);
  double det2 = 0;
  for (Complex z : kiss::testing::random_points(50, 2.5, {&geo2()->gamma1(), &geo2()->gamma2(), &geo2()->hat_gamma()},
                                                0.05, 12))
    det2 = std::max(det2, std::abs(T.parametrix(d, z).det() - 1.0));
  double inf2 = distance_to_identity(T.parametrix(d, Complex(1e6, 0)));
  double jump = 0;
  double tau = geo2()->tau();
  for (int arc : {1, 2}) {
    const PlanarArc& a = arc == 1 ? geo2()->gamma1() : geo2()->gamma2();
    for (double f : {0.2, 0.4, 0.6, 0.8}) {
      auto [s, nrm] = at_fraction(a, f);
      Complex e = std::exp(Complex(0, (2 - arc) * 2 * 10 * M_PI * tau)) * w2.h(s);
      jump = std::max(jump, max_abs_diff(T.parametrix(d, s, nrm), T.parametrix(d, s, -nrm) * Parametrix2x2{0, e, -1.0 / e, 0}));
    }
  }
  for (double f : {0.3, 0.7}) {
    auto [s, nrm] = at_fraction(geo2()->hat_gamma(), f);
    Complex e = std::exp(Complex(0, 10 * M_PI));
    jump = std::max(jump, max_abs_diff(T.parametrix(d, s, nrm), T.parametrix(d, s, -nrm) * Parametrix2x2{e, 0, 0, 1.0 / e}));
  }
  o.require(det1 <= 1e-8, "one-cut det " + fmt("%.1e", det1));
  o.require(det2 <= 1e-8, "two-cut det " + fmt("%.1e", det2));
  o.require(inf1 <= 1e-5 && inf2 <= 1e-5, "|N(1e6) - I| " + fmt("%.1e", inf1) + ", " + fmt("%.1e", inf2));
  o.require(jump <= 1e-6, "two-cut jumps " + fmt("%.1e", jump));
  return o;
}

// 7. asymptotic validation against the oracle
Outcome criterion7() {
  Outcome o;
  const std::vector<Complex> zs{Complex(2, 0), Complex(0, 2), Complex(-1.5, 0.5)};
  struct Case {
    const char* name;
    double lambda;
    double lo, hi;
  };
  const Case cases[] = {{"sub", 0.5, -1.4, -0.6}, {"super", 2.0, -1.4, -0.6}, {"crit", lambda_critical(), -1.2, -0.35}};
  const unsigned bits = 768;
  for (const Case& cs : cases) {
    WeightSpec w = weight(cs.lambda, false);
    PredictOptions po;
    po.allow_outside_subsequence = true;
    Predictor P(w, po);
    std::vector<std::vector<std::pair<int, double>>> bracket(zs.size());
    std::vector<double> last_rel(zs.size(), NAN);
    int last_n = 0;
    for (int n = 16; n <= 64; ++n) {
      WeightSpec wn = w;
      wn.n = n;
      ExactPolynomial p = solve_orthogonality(wn, OracleOptions{bits, false, 0});
      for (std::size_t i = 0; i < zs.size(); ++i) {
        AsymptoticPrediction a = P.predict(zs[i], n);
        if (!a.in_subsequence) continue;
        double rel = std::abs(std::exp(p.log_abs_arg(zs[i]) - a.log_value) - 1.0);
        bracket[i].push_back({n, rel * std::exp(a.log_factor.real())});
        last_rel[i] = rel;
        last_n = n;
      }
    }
    for (std::size_t i = 0; i < zs.size(); ++i) {
      std::optional<double> s = loglog_slope(bracket[i]);
      bool ok = s && *s >= cs.lo && *s <= cs.hi;
      char zbuf[48];
      std::snprintf(zbuf, sizeof zbuf, "(%g,%g)", zs[i].real(), zs[i].imag());
      o.require(ok, std::string(cs.name) + " z=" + zbuf + " slope " + (s ? fmt("%.3f", *s) : std::string("none")));
      o.require(last_rel[i] <= 0.1, std::string(cs.name) + " z=" + zbuf + " rel(n=" + std::to_string(last_n) +
                                        ") " + fmt("%.1e", last_rel[i]));
    }
  }
  return o;
}

// 8. quadrature
Outcome criterion8() {
  Outcome o;
  int n = 10;
  auto sorted = [](QuadratureRule r) {
    std::vector<int> idx(r.n);
    for (int i = 0; i < r.n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return real(r.nodes[a]) < real(r.nodes[b]); });
    QuadratureRule s = r;
    for (int i = 0; i < r.n; ++i) {
      s.nodes[i] = r.nodes[idx[i]];
      s.weights[i] = r.weights[idx[i]];
    }
    return s;
  };
  WeightSpec w0 = weight(0.0, false), w1 = weight(1e-6 / n, false);
  w0.n = w1.n = n;
  QuadratureRule a = sorted(build_rule(w0)), b = sorted(build_rule(w1));
  double drift = 0;
  {
    ScopedPrecision sp(a.bits);
    for (int i = 0; i < n; ++i)
      drift = std::max({drift, to_double(BigReal(abs(a.nodes[i] - b.nodes[i]))),
                        to_double(BigReal(abs(a.weights[i] - b.weights[i])))});
  }
  o.require(drift <= 1e-4, "omega->0 drift " + fmt("%.1e", drift));
  double ex = 0;
  for (double lambda : {0.5, 1.0, 2.0}) {
    WeightSpec w = weight(lambda, true);
    w.n = n;
    ex = std::max(ex, build_rule(w).exactness);
  }
  o.require(ex <= 1e-20, "exactness " + fmt("%.1e", ex));
  WeightSpec we = weight(1.0, false);
  we.n = 12;
  QuadratureRule r = build_rule(we);
  BigFunction f = builtin_function("exp");
  ScopedPrecision sp(r.bits);
  BigComplex q = integrate_oscillatory(f, r), ref = reference_integral(f, we, r.bits);
  double rel = to_double(BigReal(abs(q - ref) / abs(ref)));
  o.require(rel <= 1e-8, "e^x rel " + fmt("%.1e", rel));
  return o;
}

// 9. zeros accumulate on the support
Outcome criterion9() {
  Outcome o;
  const int n = 30;
  for (double lambda : {0.5, lambda_critical(), 2.0}) {
    WeightSpec w = weight(lambda, false);
    w.n = n;
    ExactPolynomial p = solve_orthogonality(w);
    std::vector<BigComplex> zeros = polynomial_zeros(p);
    std::function<double(Complex)> dist;
    std::shared_ptr<const OneCutGeometry> g1;
    if (classify_regime(lambda) == Regime::Supercritical) {
      dist = [](Complex z) { return std::min(geo2()->gamma1().distance_to(z), geo2()->gamma2().distance_to(z)); };
    } else {
      g1 = std::make_shared<const OneCutGeometry>(OneCutGeometry::build(lambda));
      dist = [g1](Complex z) { return g1->arc().distance_to(z); };
    }
    int near = 0;
    for (const BigComplex& z : zeros)
      if (dist(to_complex(z)) <= 0.1) ++near;
    double frac = double(near) / n;
    o.require(frac >= 0.8, std::string(to_string(classify_regime(lambda))) + " " + fmt("%.2f", frac));
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<double, std::function<Outcome()>>> all{
      {1, criterion1},   {10, criterion2}, {120, criterion3}, {300, criterion4}, {300, criterion5},
      {120, criterion6}, {1800, criterion7}, {60, criterion8}, {300, criterion9}};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Stopwatch sw;
    Outcome o;
    try {
      o = all[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail += std::string("exception: ") + e.what();
    }
    double t = sw.seconds();
    bool in_time = t < all[i].first;
    if (!in_time) o.detail += "; runtime over " + fmt("%.0f s", all[i].first);
    bool ok = o.pass && in_time;
    if (!ok) ++failed;
    std::printf("criterion %d: %s (%.1f s) %s\n", id, ok ? "PASS" : "FAIL", t, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
