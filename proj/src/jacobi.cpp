#include "kiss/surface/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kiss/surface/theta.hpp"

namespace kiss {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPlaneRadius = 3.0;
constexpr double kChartEnter = 1.0 / 3.5;

bool crosses(const PlanarArc& arc, Complex a, Complex b) {
  int count = 0;
  for (std::size_t i = 0; i + 1 < arc.size(); ++i)
    if (segments_cross(a, b, arc[i], arc[i + 1])) ++count;
  return count % 2 == 1;
}

// Smallest representative of u modulo Z + B Z.
Complex lattice_min(Complex u, Complex B) {
  long j, m;
  Complex r;
  reduce_lattice(u, B, j, m, r);
  Complex best = r;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      Complex c = r + double(a) + double(b) * B;
      if (std::abs(c) < std::abs(best)) best = c;
    }
  return best;
}

}  // namespace

void reduce_lattice(Complex u, Complex B, long& j, long& m, Complex& r) {
  m = std::lround(u.imag() / B.imag());
  j = std::lround((u - double(m) * B).real());
  r = u - double(j) - double(m) * B;
}

JacobiSolver::JacobiSolver(const EllipticData& data) : data_(&data) {
  const TwoCutGeometry& g = data.geometry();
  auto [A, Bf] = data.ab_pair(data.p_point());
  // B/A vanishes at p on the sheet where gamma(p) = +-1
  p_sheet0_ = std::abs(Bf) <= std::abs(A) ? 0 : 1;

  auto clear = [&](Complex z) {
    for (const PlanarArc* a : {&g.gamma1(), &g.gamma2(), &g.hat_gamma()})
      if (a->distance_to(z) < 0.08) return false;
    return std::abs(z - 1.0) > 0.08;
  };
  std::vector<Complex> base;
  for (double r : {0.6, 1.6, 2.6})
    for (int k = 0; k < 8; ++k) base.push_back(std::polar(r, 2 * kPi * (k + 0.25) / 8));
  for (Complex z : {Complex(0, 0.5), Complex(0, 1.0), Complex(0, 0.0), Complex(0.0, -0.5)})
    base.push_back(z);
  for (int sheet : {0, 1}) {
    seeds_.push_back(SurfacePoint::infinity(sheet));
    for (Complex z : base)
      if (clear(z)) seeds_.push_back(SurfacePoint::at(z, sheet));
  }
  for (const SurfacePoint& s : seeds_) seed_values_.push_back(data.abel(s));
}

SurfacePoint JacobiSolver::p_lift(int k) const {
  return SurfacePoint::at(data_->p_point(), k == 0 ? p_sheet0_ : 1 - p_sheet0_);
}

Complex JacobiSolver::target(int n, int k, Complex c_h) const {
  Complex B = data_->B();
  double tau = data_->geometry().tau();
  return data_->abel(p_lift(k)) + c_h + double(n) * (0.5 + B * tau);
}

bool JacobiSolver::newton(Complex T, SurfacePoint& P, const InversionOptions& opt, int& iters) const {
  const TwoCutGeometry& g = data_->geometry();
  Complex B = data_->B();
  bool chart = P.infinite || std::abs(P.z) > 1.0 / kChartEnter;
  Complex u = P.infinite ? Complex(0) : 1.0 / P.z;
  Complex z = P.z;
  int sheet = P.sheet;
  double sgn = 1;
  for (iters = 0; iters < opt.max_iter; ++iters) {
    sgn = sheet == 0 ? 1.0 : -1.0;
    Complex a = chart ? sgn * data_->abel0_chart(u) : sgn * data_->abel0(z);
    Complex r = lattice_min(a - T, B);
    if (std::abs(r) <= opt.tol) {
      P = chart ? (u == Complex(0) ? SurfacePoint::infinity(sheet) : SurfacePoint::at(1.0 / u, sheet))
                : SurfacePoint::at(z, sheet);
      return true;
    }
    if (chart) {
      Complex d = -sgn / (data_->normalization() * chart_root(g, u));
      Complex du = -r / d;
      if (std::abs(du) > 0.15) du *= 0.15 / std::abs(du);
      u += du;
      if (std::abs(u) > kChartEnter) {
        chart = false;
        z = 1.0 / u;
      }
    } else {
      Complex d = sgn / (data_->normalization() * g.w2(z));
      Complex dz = -r / d;
      double cap = 0.5 * std::max(1.0, 0.5 * std::abs(z));
      if (std::abs(dz) > cap) dz *= cap / std::abs(dz);
      Complex zn = z + dz;
      // each crossing of gamma_1 or gamma_2 changes the sheet
      if (crosses(g.gamma1(), z, zn) != crosses(g.gamma2(), z, zn)) sheet = 1 - sheet;
      for (Branch e : {Branch::MinusOne, Branch::PlusOne, Branch::ZStar, Branch::ZStarBar}) {
        Complex bp = g.branch_point(e);
        if (std::abs(zn - bp) < 1e-9) zn = bp + Complex(1e-9, 1e-9);
      }
      z = zn;
      if (std::abs(z) > kPlaneRadius + 0.5) {
        chart = true;
        u = 1.0 / z;
      }
    }
  }
  return false;
}

InversionResult JacobiSolver::solve_target(Complex T, int seed, const InversionOptions& opt) const {
  InversionResult res;
  res.target = T;
  SurfacePoint P = seeds_.at(seed);
  int iters = 0;
  if (!newton(T, P, opt, iters)) fail(ErrorCode::NotConverged, "Jacobi inversion: Newton did not converge");
  res.point = P;
  res.iterations = iters;
  res.seed = seed;
  res.abel_value = data_->abel(P);
  Complex r;
  reduce_lattice(res.abel_value - T, data_->B(), res.j, res.m, r);
  res.residual = std::abs(r);
  return res;
}

InversionResult JacobiSolver::solve(int n, int k, Complex c_h, const InversionOptions& opt) const {
  Complex T = target(n, k, c_h);
  Complex B = data_->B();
  std::vector<int> order(seeds_.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dist(seeds_.size());
  for (std::size_t i = 0; i < seeds_.size(); ++i) dist[i] = std::abs(lattice_min(seed_values_[i] - T, B));
  std::sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });
  int tries = std::min<int>(opt.max_seeds, static_cast<int>(order.size()));
  for (int t = 0; t < tries; ++t) {
    try {
      return solve_target(T, order[t], opt);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotConverged && e.code() != ErrorCode::PathFailure) throw;
    }
  }
  fail(ErrorCode::NotConverged, "Jacobi inversion failed from every seed");
}

ThetaRatio::ThetaRatio(const EllipticData& data, const InversionResult& inv, Complex abel_p, int n)
    : data_(&data) {
  Complex B = data.B();
  zero_shift_ = inv.abel_value + 0.5 * (B + 1.0);
  pole_shift_ = abel_p + 0.5 * (B + 1.0);
  slope_ = Complex(0, -2 * kPi) * (double(inv.m) + data.geometry().tau() * n);
}

Complex ThetaRatio::at_abel(Complex a) const {
  Complex B = data_->B();
  Complex den = theta<Complex>(a - pole_shift_, B, 17);
  if (std::abs(den) < 1e-300) fail(ErrorCode::AtPole, "Theta_{n,k} evaluated at its pole");
  return std::exp(slope_ * a) * theta<Complex>(a - zero_shift_, B, 17) / den;
}

Complex ThetaRatio::operator()(const SurfacePoint& P, Complex approach) const {
  return at_abel(data_->abel(P, approach));
}

bool in_subsequence(const InversionResult& inv, double eps) {
  if (inv.point.sheet != 0) return true;
  if (inv.point.infinite) return false;
  return std::abs(inv.point.z) < 1.0 / eps;
}

}  // namespace kiss
