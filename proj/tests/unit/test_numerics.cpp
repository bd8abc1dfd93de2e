#include <doctest.h>

#include <cmath>

#include "kiss/error.hpp"
#include "kiss/numerics/contour.hpp"
#include "kiss/numerics/gauss.hpp"
#include "kiss/numerics/path_planner.hpp"
#include "kiss/numerics/planar_arc.hpp"
#include "kiss/numerics/precision.hpp"
#include "kiss/numerics/roots.hpp"
#include "kiss/surface/theta.hpp"

using namespace kiss;

TEST_CASE("scoped precision restores the previous default") {
  unsigned before = working_bits();
  {
    ScopedPrecision sp(512);
    CHECK(working_bits() >= 512);
    BigReal x = big_pi();
    CHECK(abs(x - BigReal("3.14159265358979323846264338327950288419716939937510582097494459")) < BigReal("1e-60"));
  }
  CHECK(working_bits() == before);
}

TEST_CASE("decimal strings round-trip at full precision") {
  ScopedPrecision sp(256);
  BigReal x = sqrt(BigReal(2)) / 7;
  BigReal y = parse_big(to_decimal(x, digits_for_bits(256) + 2));
  CHECK(abs(x - y) < pow(BigReal(2), -250));
  CHECK(std::stod(to_decimal(0.1)) == 0.1);
  CHECK(bits_for_digits(digits_for_bits(300)) <= 300 + 4);
}

TEST_CASE("Gauss-Legendre integrates polynomials through degree 2n-1") {
  GaussRule<double> g = gauss_legendre<double>(8);
  for (int k = 0; k < 16; ++k) {
    double s = 0;
    for (int i = 0; i < 8; ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
    double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(s - exact) < 1e-14);
  }
}

TEST_CASE("Gauss-Jacobi in extended precision") {
  ScopedPrecision sp(256);
  BigReal a("0.5"), b("-0.25");
  GaussRule<BigReal> g = gauss_jacobi<BigReal>(20, a, b);
  BigReal s = 0, s1 = 0;
  for (int i = 0; i < 20; ++i) {
    s += g.weights[i];
    s1 += g.weights[i] * g.nodes[i];
  }
  // int (1-x)^a (1+x)^b = 2^{a+b+1} B(a+1, b+1); first moment (b-a)/(a+b+2) times that
  BigReal m0 = pow(BigReal(2), a + b + 1) * exp(lgamma(a + 1) + lgamma(b + 1) - lgamma(a + b + 2));
  CHECK(abs(s - m0) < BigReal("1e-70"));
  CHECK(abs(s1 - m0 * (b - a) / (a + b + 2)) < BigReal("1e-70"));
  for (int i = 1; i < 20; ++i) CHECK(g.nodes[i - 1] < g.nodes[i]);
}

TEST_CASE("bracketed root finding") {
  ScopedPrecision sp(256);
  auto f = [](const BigReal& x) { return x * x - 2; };
  BigReal r = find_root<BigReal>(f, BigReal(0), BigReal(2), BigReal("1e-60"));
  CHECK(abs(r - sqrt(BigReal(2))) < BigReal("1e-59"));
  auto g = [](double x) { return x * x + 1; };
  CHECK_THROWS_AS(find_root<double>(g, -1.0, 1.0, 1e-12), Error);
}

TEST_CASE("contour integration with endpoint singularities and closed circles") {
  Path seg = polyline_path({Complex(-1), Complex(1)});
  seg.front().at_start = Singularity{-0.5, false, 0};
  seg.front().at_end = Singularity{-0.5, false, 1};
  struct F {
    Complex operator()(const Node& s) const {
      Complex zp = s.minus(-1.0, 0), zm = s.minus(1.0, 1);
      return 1.0 / std::sqrt(-zp * zm);
    }
  };
  QuadResult r = integrate(seg, F{});
  CHECK(std::abs(r.value - M_PI) < 1e-12);

  Path circle{PathPiece::circle(Complex(0.3, 0.1), 0.5, 0, 2 * M_PI)};
  QuadResult c = integrate(circle, [](Complex z) { return 1.0 / (z - Complex(0.3, 0.1)); });
  CHECK(std::abs(c.value - Complex(0, 2 * M_PI)) < 1e-12);
  QuadResult c2 = integrate(circle, [](Complex z) { return std::exp(z); });
  CHECK(std::abs(c2.value) < 1e-12);
}

TEST_CASE("logarithmic endpoint singularity") {
  Path seg = polyline_path({Complex(0), Complex(1)});
  seg.front().at_start = Singularity{0.0, true, 0};
  QuadResult r = integrate(seg, [](const Node& s) { return std::log(s.minus(0.0, 0)); });
  CHECK(std::abs(r.value + 1.0) < 1e-12);
}

TEST_CASE("branch helpers pick the nearest representative") {
  Complex l = nearest_log(std::log(Complex(-1, -1e-3)), Complex(0, M_PI));
  CHECK(std::abs(l.imag() - (M_PI + std::atan2(-1e-3, -1) + M_PI)) < 1e-12);
  CHECK(nearest_sign(Complex(-1, 0.1), Complex(1, 0)) == Complex(1, -0.1));
}

TEST_CASE("planar arc utilities") {
  std::vector<Complex> pts;
  for (int k = 0; k <= 100; ++k) pts.push_back(Complex(-1 + 0.02 * k, 0.4 * std::sin(M_PI * 0.01 * k)));
  PlanarArc a(pts, "-1", "1");
  CHECK(a.distance_to(Complex(0, 0.4)) < 1e-3);
  CHECK(a.distance_to(Complex(0, 1.4)) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(a.tangent(50) - Complex(1, 0)) < 1e-3);
  CHECK(std::abs(a.left_normal(50) - Complex(0, 1)) < 1e-3);
  PlanarArc r = a.reflected();
  CHECK(std::abs(r[10] + std::conj(a[10])) < 1e-15);
  CHECK(segments_cross(Complex(0, -1), Complex(0, 1), Complex(-1, 0), Complex(1, 0)));
  CHECK_FALSE(segments_cross(Complex(0, 1), Complex(0, 2), Complex(-1, 0), Complex(1, 0)));
  CHECK(inside_polygon({Complex(0, 0), Complex(1, 0), Complex(1, 1), Complex(0, 1)}, Complex(0.5, 0.5)));
}

TEST_CASE("arc logarithm agrees with the principal value outside the enclosed region") {
  std::vector<Complex> pts;
  for (int k = 0; k <= 200; ++k) {
    double t = M_PI * (1 - k / 200.0);
    pts.push_back(Complex(std::cos(t), 0.8 * std::sin(t)));
  }
  ArcLog L(Complex(-1), Complex(1), pts);
  for (Complex z : {Complex(0, -0.5), Complex(2, 1), Complex(-3, 0.2), Complex(0, 2)})
    CHECK(std::abs(L(z) - std::log((z + 1.0) / (z - 1.0))) < 1e-13);
  // inside: continuous across the chord
  Complex above = L(Complex(0, 1e-9)), below = L(Complex(0, -1e-9));
  CHECK(std::abs(above - below) < 1e-6);
  CHECK(L.enclosed(Complex(0, 0.3)));
  // the cut now sits on the arc: jump of 2 pi i
  Complex out = L(Complex(0, 0.8 + 1e-9)), in = L(Complex(0, 0.8 - 1e-9));
  CHECK(std::abs(std::abs(out - in) - 2 * M_PI) < 1e-6);
}

TEST_CASE("path planner routes around obstacles") {
  std::vector<Complex> wall{Complex(0, -1), Complex(0, 1)};
  PathPlanner P({wall}, {});
  std::vector<Complex> r = P.route(Complex(-1, 0), Complex(1, 0));
  REQUIRE(r.size() >= 2);
  CHECK(r.front() == Complex(-1, 0));
  CHECK(r.back() == Complex(1, 0));
  for (std::size_t i = 1; i < r.size(); ++i) CHECK_FALSE(segments_cross(r[i - 1], r[i], wall[0], wall[1]));
}

TEST_CASE("theta function: quasi-periodicity and the zero at (B+1)/2") {
  ScopedPrecision sp(256);
  BigComplex B(BigReal("0.13"), BigReal("0.8017696062859"));
  BigComplex u(BigReal("0.31"), BigReal("-0.22"));
  BigComplex one(1);
  BigComplex pii = big_i() * big_pi();
  int digits = 40;
  BigComplex t = theta(u, B, digits);
  CHECK(abs(theta(BigComplex(u + one), B, digits) - t) < BigReal("1e-38"));
  BigComplex shifted = theta(BigComplex(u + B), B, digits);
  CHECK(abs(shifted - exp(-pii * B - BigReal(2) * pii * u) * t) < BigReal("1e-38"));
  CHECK(abs(theta(BigComplex((B + one) / BigReal(2)), B, digits)) < BigReal("1e-38"));
  // binary64 instantiation agrees
  Complex td = theta(to_complex(u), to_complex(B), 15);
  CHECK(std::abs(td - to_complex(t)) < 1e-13);
}
