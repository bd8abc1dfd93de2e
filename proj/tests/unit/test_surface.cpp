#include <doctest.h>

#include <memory>

#include "kiss/asymptotics/asymptotics.hpp"
#include "kiss/surface/theta.hpp"
#include "support.hpp"

using namespace kiss;
using kiss::testing::at_fraction;

namespace {

std::shared_ptr<const TwoCutGeometry> geo() {
  static auto g = std::make_shared<const TwoCutGeometry>(TwoCutGeometry::build(2.0));
  return g;
}

const EllipticData& data() {
  static const EllipticData d = EllipticData::build(geo());
  return d;
}

WeightSpec general_weight() {
  WeightSpec w;
  w.lambda = 2.0;
  w.alpha = 0.5;
  w.beta = -0.25;
  w.h_star = AnalyticFactor::exponential(Complex(0.3, 0.1));
  return w;
}

}  // namespace

TEST_CASE("periods of the normalized differential") {
  const EllipticData& d = data();
  CHECK(std::abs(d.alpha_period(geo()->hat_gamma().points()) - 1.0) < 1e-10);
  // another realization of hat-gamma, above the original
  Complex a = -std::conj(geo()->z_star()), b = geo()->z_star();
  std::vector<Complex> alt{a, a + Complex(0.1, 0.8), Complex(0, 2.2), b + Complex(-0.1, 0.8), b};
  CHECK(std::abs(d.alpha_period(alt) - 1.0) < 1e-10);
  CHECK(d.B().imag() > 0);
  CHECK(std::abs(d.B() - Complex(0, 0.801769606285931)) < 1e-10);
  CHECK(std::abs(d.beta_period_loop(0.05) - d.B()) < 1e-10);
  CHECK(std::abs(d.normalization() - 4.25859921840814) < 1e-10);
}

TEST_CASE("Abel map jumps across the cycles") {
  const EllipticData& d = data();
  for (double f : {0.25, 0.5, 0.75}) {
    // alpha: the lift of hat-gamma to sheet 1, + on the left
    auto [h, hn] = at_fraction(geo()->hat_gamma(), f);
    Complex ja = d.abel(SurfacePoint::at(h, 1), hn) - d.abel(SurfacePoint::at(h, 1), -hn);
    CHECK(std::abs(ja + d.B()) < 1e-8);
    // beta: crossing gamma_1 from sheet 1 (right side) to sheet 0 (left side)
    auto [s, sn] = at_fraction(geo()->gamma1(), f);
    Complex jb = d.abel(SurfacePoint::at(s, 0), sn) - d.abel(SurfacePoint::at(s, 1), -sn);
    CHECK(std::abs(jb - 1.0) < 1e-8);
    // gamma_2 contains the base point: no jump
    auto [t, tn] = at_fraction(geo()->gamma2(), f);
    Complex j2 = d.abel(SurfacePoint::at(t, 0), tn) - d.abel(SurfacePoint::at(t, 1), -tn);
    CHECK(std::abs(j2) < 1e-8);
  }
  // sheets are exchanged by the involution: A(z^(1)) = -A(z^(0))
  Complex z(0.4, -1.1);
  CHECK(std::abs(d.abel(SurfacePoint::at(z, 1)) + d.abel(SurfacePoint::at(z, 0))) < 1e-12);
  // the chart at infinity agrees with the plane evaluation
  Complex far(5.0, 1.5);
  CHECK(std::abs(d.abel0_chart(1.0 / far) - d.abel0(far)) < 1e-10);
  CHECK(std::abs(d.abel0_chart(0) - d.abel0_infinity()) < 1e-14);
}

TEST_CASE("quartic root and the pair (A, B)") {
  const EllipticData& d = data();
  Complex z(-0.7, 1.6), zs = geo()->z_star();
  Complex g = d.quartic_gamma(z);
  Complex ratio = (z + std::conj(zs)) * (z - 1.0) / ((z - zs) * (z + 1.0));
  CHECK(std::abs(std::pow(g, 4) - ratio) < 1e-12);
  CHECK(std::abs(d.quartic_gamma(Complex(1e7, 3e6)) - 1.0) < 1e-6);
  auto [A0, B0] = d.ab_pair(d.p_point());
  CHECK(std::abs(B0) < 1e-10);
  CHECK(std::abs(A0) > 0.1);
  auto [A, B] = d.ab_pair(z);
  CHECK(std::isfinite(std::abs(A)));
  CHECK(std::isfinite(std::abs(B)));
}

TEST_CASE("theta in extended precision at the computed modulus") {
  ScopedPrecision sp(256);
  BigComplex B = to_big(data().B());
  BigComplex one(1), pii = big_i() * big_pi();
  for (BigComplex u : {BigComplex(BigReal("0.21"), BigReal("0.13")), BigComplex(BigReal("-0.4"), BigReal("0.35"))}) {
    BigComplex t = theta(u, B, 60);
    CHECK(abs(theta(BigComplex(u + one), B, 60) - t) < BigReal("1e-25"));
    CHECK(abs(theta(BigComplex(u + B), B, 60) - exp(-pii * B - BigReal(2) * pii * u) * t) < BigReal("1e-25"));
    CHECK(abs(theta(BigComplex(-u), B, 60) - t) < BigReal("1e-25"));
  }
  CHECK(abs(theta(BigComplex((B + one) / BigReal(2)), B, 60)) < BigReal("1e-25"));
}

TEST_CASE("Jacobi inversion: residual and multistart agreement") {
  const EllipticData& d = data();
  JacobiSolver J(d);
  SzegoTwoCut S(d, general_weight());
  Complex c = S.alpha_jump_exponent();
  for (int n : {3, 10}) {
    for (int k : {0, 1}) {
      InversionResult r = J.solve(n, k, c);
      CHECK(r.residual < 1e-10);
      Complex T = J.target(n, k, c);
      int agree = 0, converged = 0;
      for (int s = 0; s < J.seed_count(); s += 3) {
        try {
          InversionResult q = J.solve_target(T, s);
          ++converged;
          if (surface_distance(q.point, r.point) < 1e-8) ++agree;
        } catch (const Error&) {
        }
      }
      CHECK(converged >= 3);
      CHECK(agree == converged);
    }
  }
  // the p lifts: p^(0) is the zero of B on sheet 0
  CHECK(J.p_lift(0).sheet != J.p_lift(1).sheet);
  CHECK(std::abs(J.p_lift(0).z - d.p_point()) < 1e-14);
}

TEST_CASE("Theta_{n,k} jump factors") {
  const EllipticData& d = data();
  TwoCutAsymptotics T(geo(), general_weight());
  Complex c = T.szego().alpha_jump_exponent();
  double tau = geo()->tau();
  for (int n : {3, 10}) {
    TwoCutDegree deg = T.degree(n);
    for (int k : {0, 1}) {
      const ThetaRatio& th = *deg.theta[k];
      for (double f : {0.3, 0.6}) {
        auto [h, hn] = at_fraction(geo()->hat_gamma(), f);
        Complex ra = th(SurfacePoint::at(h, 1), hn) / th(SurfacePoint::at(h, 1), -hn);
        CHECK(std::abs(ra - std::exp(Complex(0, -M_PI) * (double(n) + 2.0 * c))) < 1e-8);
        auto [s, sn] = at_fraction(geo()->gamma1(), f);
        Complex rb = th(SurfacePoint::at(s, 0), sn) / th(SurfacePoint::at(s, 1), -sn);
        CHECK(std::abs(rb - std::exp(Complex(0, -2 * M_PI * tau * n))) < 1e-8);
      }
      // zero at z_{n,k}, pole at p^(k)
      if (!deg.inv[k].point.infinite && std::abs(deg.inv[k].point.z) < 20)
        CHECK(std::abs(th(deg.inv[k].point)) < 1e-6);
    }
  }
  (void)d;
}

TEST_CASE("c_h vanishes for the trivial weight") {
  WeightSpec w;
  w.lambda = 2.0;
  CHECK(std::abs(data().c_h(w)) < 1e-12);
}
