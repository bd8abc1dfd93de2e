#pragma once

#include <memory>
#include <vector>

#include "kiss/geometry/two_cut.hpp"
#include "kiss/geometry/weight.hpp"

namespace kiss {

// Point of the two-sheeted surface of y^2 = Q. `infinite` marks infinity^{(sheet)}.
struct SurfacePoint {
  Complex z{};
  int sheet = 0;
  bool infinite = false;

  static SurfacePoint at(Complex z, int sheet) { return {z, sheet, false}; }
  static SurfacePoint infinity(int sheet) { return {Complex(0), sheet, true}; }
};

double surface_distance(const SurfacePoint& a, const SurfacePoint& b);

// Holomorphic differential H = dz / (N w), its periods and the Abel map
// A(z) = int_1^z H on the surface cut along alpha and beta.
class EllipticData {
 public:
  static EllipticData build(std::shared_ptr<const TwoCutGeometry> geometry, double tol = 1e-14);

  const TwoCutGeometry& geometry() const { return *geo_; }
  std::shared_ptr<const TwoCutGeometry> geometry_ptr() const { return geo_; }

  // N = oint_alpha dt / w.
  Complex normalization() const { return N_; }
  Complex B() const { return B_; }
  // Orientation of beta relative to gamma_1 traversed from -1 (+1 or -1).
  int beta_sign() const { return beta_sign_; }

  // w(z^{(k)}) = (-1)^k w2(z).
  Complex w(const SurfacePoint& p, Complex approach = 0) const;
  // dA/dz at p, or dA/du in the chart u = 1/z when p is near infinity (chart = true).
  Complex abel_derivative(const SurfacePoint& p, bool chart = false) const;

  // A on sheet 0; z in the plane off gamma_1 u hat-gamma u gamma_2.
  Complex abel0(Complex z, Complex approach = 0) const;
  Complex abel0_infinity() const { return A_inf_; }
  // A in the chart u = 1/z on sheet 0, |u| <= 1/4.
  Complex abel0_chart(Complex u) const;
  Complex abel(const SurfacePoint& p, Complex approach = 0) const;
  // Sheet-0 Abel map along a caller-supplied polyline starting at 1.
  Complex abel0_along(const std::vector<Complex>& pts, double tol = 1e-14) const;

  // oint_alpha H using another realization of hat-gamma (polyline from -conj z* to z*).
  Complex alpha_period(const std::vector<Complex>& hat, double tol = 1e-14) const;
  // s_beta * oint dt/(N w2) over a sheet-0 loop at distance `offset` around gamma_1,
  // equal to B when the loop is independent of the arc discretization.
  Complex beta_period_loop(double offset, double tol = 1e-13) const;

  // gamma(z) = ((z + conj z*)(z - 1) / ((z - z*)(z + 1)))^{1/4}, gamma(inf) = 1.
  Complex quartic_gamma(Complex z, Complex approach = 0) const;
  // (A(z), B(z)) from gamma.
  std::pair<Complex, Complex> ab_pair(Complex z, Complex approach = 0) const;

  // p = i Im z* / (1 - Re z*).
  Complex p_point() const;

  // c_h = (1/2 pi i) oint log(h) H over the lift of gamma_1 u gamma_2.
  Complex c_h(const WeightSpec& weight, double tol = 1e-13) const;
  // int_{gamma_1 u gamma_2} log h / w2_+ ds, with a continuous branch of log h* along each arc.
  Complex log_h_moment(const WeightSpec& weight, double tol = 1e-13) const;

 private:
  std::shared_ptr<const TwoCutGeometry> geo_;
  Complex N_{}, B_{}, A_inf_{};
  int beta_sign_ = 1;
};

// u^2 w2(1/u) on sheet 0 near u = 0.
Complex chart_root(const TwoCutGeometry& geo, Complex u);

// log h at a quadrature node on an arc: log h*(s) continued from `ref`, plus
// alpha log(1-s) + beta log(1+s) with the endpoint differences taken from the node.
Complex log_h_at(const WeightSpec& weight, const Node& s, Complex& hstar_ref);

}  // namespace kiss
