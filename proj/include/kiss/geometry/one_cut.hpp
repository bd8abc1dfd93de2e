#pragma once

#include <functional>

#include "kiss/geometry/anchors.hpp"
#include "kiss/geometry/critical.hpp"
#include "kiss/numerics/planar_arc.hpp"

namespace kiss {

struct TraceOptions {
  double step_max = 1e-2;
  double tol = 1e-13;
};

// Support curve and the associated functions for lambda <= lambda_cr:
// w = (z^2-1)^{1/2} holomorphic off the arc, the Joukowski map z + w, the
// phase 2 log(z + w) + i lambda w and the equilibrium density.
class OneCutGeometry {
 public:
  static OneCutGeometry build(double lambda, const TraceOptions& opt = {});

  double lambda() const { return lambda_; }
  bool critical() const { return critical_; }
  const PlanarArc& arc() const { return arc_; }
  // Crossing with the imaginary axis (the saddle 2i/lambda when critical).
  Complex apex() const { return apex_; }

  Complex w(const Node& z, Complex approach = 0) const;
  Complex joukowski(const Node& z, Complex approach = 0) const;
  Complex phase(const Node& z, Complex approach = 0) const;
  Complex q_sqrt(const Node& z, Complex approach = 0) const;
  Complex V(Complex z) const { return Complex(0, -lambda_) * z; }

  // + side value of w on the arc, analytically continued (exact off the samples).
  Complex w_plus(const Node& s) const;
  // Complex line density -(1/2 pi i)(2 + i lambda s)/w_+(s) of the equilibrium measure.
  Complex density(const Node& s) const;
  double ell() const;  // 2 log 2
  // g(z) = log(joukowski) - i lambda / (2 joukowski) - log 2.
  Complex g(Complex z, Complex approach = 0) const;
  // g(z) by direct quadrature of the logarithmic potential of the density.
  Complex g_direct(Complex z, double tol = 1e-12) const;
  Complex total_mass(double tol = 1e-13) const;

  // max over npts interior samples of the jump of the normal derivative of
  // 2 U^mu + Re V across the arc (second-order one-sided differences).
  double s_property_residual(int npts, double h_fd = 1e-4) const;

 private:
  double lambda_ = 0;
  bool critical_ = false;
  Complex apex_{};
  PlanarArc arc_;
  ArcLog log_ratio_;
};

// max over npts samples (uniform in arc length) of |d_n+ G - d_n- G| across the arc,
// by fourth-order differences with step h along the left normal.
double normal_derivative_jump(const PlanarArc& arc, const std::function<double(Complex)>& G, int npts,
                              double h);

// Principal branch of (z^2-1)^{1/2} with cut [-1,1]; `approach` resolves z on the cut.
Complex w_principal(const Node& z, Complex approach = 0);

}  // namespace kiss
