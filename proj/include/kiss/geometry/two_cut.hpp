#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "kiss/geometry/anchors.hpp"
#include "kiss/geometry/one_cut.hpp"
#include "kiss/numerics/path_planner.hpp"

namespace kiss {

enum class Branch { MinusOne, PlusOne, ZStar, ZStarBar };

// Admissible regions for integration paths. Each kind lists the curves a
// path may not cross.
enum class RouteKind {
  Abel,     // gamma_1, hat-gamma, gamma_2
  Phi1,     // as Abel plus (-inf, -1]
  PhiM1,    // as Abel plus [1, inf)
  PhiSoft,  // gamma_1, gamma_2, (-inf, -1], [1, inf)
};

// Supercritical geometry: the arcs gamma_1 (-1 -> -conj z*), gamma_2
// (z* -> 1), the connecting arc hat-gamma (-conj z* -> z*), the branch of
// Q^{1/2} off gamma_1 u gamma_2 and the functions phi_e, g, l*.
class TwoCutGeometry {
 public:
  static TwoCutGeometry build(double lambda, const TraceOptions& opt = {});

  double lambda() const { return lambda_; }
  double x_star() const { return x_star_; }
  Complex z_star() const { return z_star_; }
  Complex branch_point(Branch e) const;

  const PlanarArc& gamma1() const { return gamma1_; }
  const PlanarArc& gamma2() const { return gamma2_; }
  const PlanarArc& hat_gamma() const { return hat_; }
  // gamma_1, hat-gamma, gamma_2 joined into one polyline from -1 to 1.
  const PlanarArc& support() const { return support_; }
  // Unit direction in which hat-gamma leaves z*.
  Complex soft_direction() const { return soft_dir_; }

  Complex V(Complex z) const { return Complex(0, -lambda_) * z; }
  Complex Q(Complex z) const;
  // [(z^2-1)(z-z*)(z+conj z*)]^{1/2} ~ z^2, holomorphic off gamma_1 u gamma_2.
  Complex w2(const Node& z, Complex approach = 0) const;
  // arc 1: log((z+1)/(z+conj z*)), arc 2: log((z-z*)/(z-1)); cut on that arc, 0 at infinity.
  Complex log_ratio(int arc, const Node& z, Complex approach = 0) const;
  // Q^{1/2} -> i lambda / 2 at infinity.
  Complex q_sqrt(const Node& z, Complex approach = 0) const;
  // -(1/pi i) Q^{1/2}_+(s) for s on gamma_1 u gamma_2.
  Complex density(const Node& s, Complex left) const;
  Complex arc_mass(int arc, double tol = 1e-13) const;  // arc = 1 or 2
  Complex tau_raw(double tol = 1e-13) const;
  double tau() const { return tau_; }
  // max |Re int Q^{1/2}_+| along gamma_1 from -1 and along gamma_2 from z*.
  double trajectory_residual() const;

  // phi_e(z) = 2 int_e^z Q^{1/2} in the domain of holomorphy attached to e.
  Complex phi(Branch e, Complex z, Complex approach = 0) const;
  Complex phi1(Complex z, Complex approach = 0) const { return phi(Branch::PlusOne, z, approach); }
  Complex ell_star() const { return ell_star_; }
  Complex ell_star_at(Complex z) const;
  // g = (V - l*)/2 + phi_1/2.
  Complex g(Complex z, Complex approach = 0) const;
  // g by quadrature of the logarithmic potential of the equilibrium density.
  Complex g_direct(Complex z, double tol = 1e-13) const;

  // max over npts samples on each of gamma_1, gamma_2 of the jump of the normal
  // derivative of 2 U^mu + Re V.
  double s_property_residual(int npts, double h_fd = 1e-4) const;

  std::vector<Complex> route(RouteKind kind, Complex from, Complex to, Complex leave = 0,
                             Complex arrive = 0) const;
  // int of Q^{1/2} along a polyline whose ends may sit at branch points.
  Complex integrate_q(const std::vector<Complex>& pts, std::optional<Branch> start,
                      std::optional<Branch> end, double tol = 1e-14) const;

 private:
  double lambda_ = 0, x_star_ = 0, tau_ = 0;
  Complex z_star_{}, soft_dir_{}, ell_star_{};
  PlanarArc gamma1_, gamma2_, hat_, support_;
  ArcLog log1_, log2_;
  std::shared_ptr<const std::array<PathPlanner, 4>> planners_;
};

int anchor_of(Branch e);
// F(x) = Re int_{z_lambda(x)}^1 Q^{1/2}(s; x) ds, sign fixed by Im > 0.
double x_star_residual(double lambda, double x);
double solve_x_star(double lambda, double tol = 1e-15);

}  // namespace kiss
