#pragma once

#include <functional>
#include <memory>

#include "kiss/geometry/one_cut.hpp"
#include "kiss/geometry/weight.hpp"
#include "kiss/surface/elliptic.hpp"

namespace kiss {

// Contour through `arc` with a circular detour of radius r around the point
// of the arc nearest to z, placed on the side away from z (or away from
// `approach` when z is on the arc). `detour_right` reports that side.
struct DeformedArc {
  Path path;
  bool has_detour = false;
  bool detour_right = false;
  std::size_t detour_piece = 0;  // index of the circular piece
};
DeformedArc deform_around(const PlanarArc& arc, Complex z, Complex approach, double radius,
                          std::optional<Singularity> s0, std::optional<Singularity> s1);

// S_h(z) = exp{ w(z)/(2 pi i) int log((w_+ h)(x)) / (w_+(x) (x - z)) dx } on C minus gamma_lambda.
class SzegoOneCut {
 public:
  SzegoOneCut(std::shared_ptr<const OneCutGeometry> geometry, WeightSpec weight, double tol = 1e-13);

  const OneCutGeometry& geometry() const { return *geo_; }
  const WeightSpec& weight() const { return weight_; }

  Complex log_value(Complex z, Complex approach = 0) const;
  Complex operator()(Complex z, Complex approach = 0) const { return std::exp(log_value(z, approach)); }
  Complex log_at_infinity() const { return log_inf_; }
  Complex at_infinity() const { return std::exp(log_inf_); }
  // log((w_+ h)(x)) continued analytically from the arc, log h* continued from `ref`.
  Complex log_boundary(const Node& x, Complex& ref) const;
  // i (1-x)^{1/2} (1+x)^{1/2}, the continuation of w_+ off the arc.
  static Complex w_plus_continued(const Node& x);

 private:
  std::shared_ptr<const OneCutGeometry> geo_;
  WeightSpec weight_;
  double tol_;
  Complex log_inf_{};
  Complex cauchy(Complex z, Complex approach) const;  // int F(x)/(x - z) dx
};

// Omega_{p,q}: third-kind differential with residues +1, -1 at p, q and zero alpha period.
class ThirdKind {
 public:
  ThirdKind(const EllipticData& data, SurfacePoint p, SurfacePoint q, double tol = 1e-13);
  // Coefficient of dt at t (t off the cuts).
  Complex operator()(const SurfacePoint& t) const;
  // Same at a quadrature node (exact endpoint offsets) with a boundary-value direction.
  Complex at(const SurfacePoint& t, Complex approach, const Node& node) const;
  Complex raw(const SurfacePoint& t) const;
  // oint_alpha of the normalized differential.
  Complex alpha_period() const;
  // (1/2 pi i) times the integral over a small circle around the projection of p on p's sheet.
  Complex residue_at_p(double radius = 1e-3) const;
  Complex correction() const { return c_; }

 private:
  const EllipticData* data_;
  SurfacePoint p_, q_;
  double tol_;
  Complex wp_{}, wq_{}, c_{};
  Complex alpha_integral(bool normalized) const;
};

// S~_h on the surface through log S~(z^{(0)}) = -(w2(z)/(2 pi i)) [I_1(z) + 2 K(z) I_0 / N].
class SzegoTwoCut {
 public:
  SzegoTwoCut(const EllipticData& data, WeightSpec weight, double tol = 1e-13);

  const WeightSpec& weight() const { return weight_; }
  Complex c_h() const { return c_h_; }
  // Exponent c with S~_+ = S~_- e^{2 pi i c} across alpha (+ on the left of alpha); equals -c_h.
  Complex alpha_jump_exponent() const { return -c_h_; }
  // log S~_h(z^{(sheet)}); approach resolves z on gamma_1, gamma_2 or hat-gamma.
  Complex log_value(const SurfacePoint& p, Complex approach = 0) const;
  Complex operator()(const SurfacePoint& p, Complex approach = 0) const {
    return std::exp(log_value(p, approach));
  }
  // Direct evaluation of (1/4 pi i) oint log(h) Omega_{p, p'} over the lift of the arcs.
  Complex log_value_direct(const SurfacePoint& p) const;

 private:
  const EllipticData* data_;
  WeightSpec weight_;
  double tol_;
  Complex I0_{}, c_h_{}, M1_{}, H1_{};
  double far_ = 0;  // beyond this radius the subtracted expansion is used
  Complex arc_moment(const std::function<Complex(Complex)>& k) const;
  Complex hat_moment(const std::function<Complex(Complex)>& k) const;
  Complex arc_cauchy(Complex z, Complex approach) const;  // I_1
  Complex hat_cauchy(Complex z, Complex approach) const;  // K
};

}  // namespace kiss
