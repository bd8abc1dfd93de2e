#include "kiss/geometry/two_cut.hpp"

#include <algorithm>
#include <cmath>

#include "kiss/numerics/roots.hpp"

namespace kiss {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Q^{1/2}(z; x) up to sign, from the principal root of the quotient.
struct RawRoot {
  double lambda;
  Complex zs;
  Complex operator()(Complex z, Complex zm1, Complex zp1) const {
    return Complex(0, 0.5 * lambda) * std::sqrt((z - zs) * (z + std::conj(zs)) / (zm1 * zp1));
  }
};

// Sign-tracked Q^{1/2} along a path from a hard endpoint.
struct TrackedRoot {
  RawRoot raw;
  Complex ref{};
  Complex operator()(const Node& n) {
    Complex v = raw(n.z, n.minus(1.0, kAnchorPlusOne), n.minus(-1.0, kAnchorMinusOne));
    ref = ref == Complex(0) ? v : nearest_sign(v, ref);
    return ref;
  }
};

Complex plain_root(const RawRoot& raw, Complex z) { return raw(z, z - 1.0, z + 1.0); }

Complex segment_integral(const RawRoot& raw, Complex a, Complex b, Complex q_at_a) {
  TrackedRoot f{raw, q_at_a};
  QuadOptions opt;
  opt.tol = 1e-15;
  return integrate(Path{PathPiece::line(a, b)}, f, opt).value;
}

// Follows Re int_e^z Q^{1/2} = 0 from the hard endpoint e to the soft endpoint.
std::vector<Complex> trace_hard_to_soft(const RawRoot& raw, double e, Complex target,
                                        const TraceOptions& opt) {
  // Q ~ c/(z - e) near e; the trajectory leaves along c (z - e) < 0.
  Complex zs = raw.zs;
  Complex c = -(raw.lambda * raw.lambda / 4) * (e - zs) * (e + std::conj(zs)) / (2.0 * e);
  Complex d0 = -std::conj(c) / std::abs(c);
  int anchor = e > 0 ? kAnchorPlusOne : kAnchorMinusOne;
  auto from_edge = [&](Complex z, Complex& q_end) {
    PathPiece p = PathPiece::line(e, z);
    p.at_start = Singularity{-0.5, false, anchor};
    TrackedRoot f{raw, 0};
    QuadOptions qo;
    qo.tol = 1e-15;
    Complex val = integrate(Path{p}, f, qo).value;
    // int_e^z c^{1/2} (t - e)^{-1/2} dt = 2 (z - e) Q^{1/2}(z) to leading order
    q_end = nearest_sign(plain_root(raw, z), val / (2.0 * (z - e)));
    return val;
  };

  const double delta = 1e-4;
  Complex z = e + delta * d0;
  Complex q{};
  Complex Phi = from_edge(z, q);
  for (int it = 0; it < 30 && std::abs(Phi.real()) > opt.tol; ++it) {
    z -= Phi.real() / q;
    Phi = from_edge(z, q);
  }

  std::vector<Complex> pts{Complex(e, 0), z};
  Complex prev = d0;
  double best = std::abs(z - target);
  for (int step = 0; step < 200000; ++step) {
    double dist = std::abs(z - target);
    if (dist < 1e-6) break;
    if (dist > best + 0.05 && best < 0.05)
      fail(ErrorCode::TraceStalled, "two-cut trace passed the soft endpoint");
    best = std::min(best, dist);
    double h = std::min({opt.step_max, 0.3 * dist, 0.5 * std::abs(z - e)});
    Complex t = Complex(0, 1) * std::conj(q) / std::abs(q);
    if ((t * std::conj(prev)).real() < 0) t = -t;
    bool accepted = false;
    Complex zn{}, qn{}, Phin{};
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      zn = z + h * t;
      bool ok = false;
      for (int it = 0; it < 30; ++it) {
        Phin = Phi + segment_integral(raw, z, zn, q);
        qn = nearest_sign(plain_root(raw, zn), q);
        if (std::abs(Phin.real()) <= opt.tol) {
          ok = true;
          break;
        }
        zn -= Phin.real() / qn;
      }
      double moved = std::abs(zn - z);
      if (ok && moved > 0.3 * h && moved < 2.0 * h && ((zn - z) * std::conj(prev)).real() > 0)
        accepted = true;
      else
        h *= 0.5;
    }
    if (!accepted) fail(ErrorCode::TraceStalled, "two-cut trace: corrector failed");
    prev = (zn - z) / std::abs(zn - z);
    z = zn;
    q = qn;
    Phi = Phin;
    pts.push_back(z);
  }
  if (std::abs(z - target) > 1e-5) fail(ErrorCode::TraceStalled, "two-cut trace missed the soft endpoint");
  if (std::abs(pts.back() - target) < 1e-7) pts.pop_back();
  pts.push_back(target);
  return pts;
}

Complex bezier(const std::array<Complex, 4>& P, double t) {
  double s = 1 - t;
  return s * s * s * P[0] + 3 * s * s * t * P[1] + 3 * s * t * t * P[2] + t * t * t * P[3];
}

bool polylines_cross(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 1; i + 2 < a.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.size(); ++j)
      if (segments_cross(a[i], a[i + 1], b[j], b[j + 1])) return true;
  return false;
}

std::vector<Complex> ray(double sign) {
  std::vector<Complex> r;
  for (double x : {1.0, 1.5, 2.0, 3.0, 4.0, 5.5, 7.5, 10.0, 1e4}) r.push_back(Complex(sign * x, 0));
  return r;
}

double exponent_of(Branch e) { return e == Branch::MinusOne || e == Branch::PlusOne ? -0.5 : 0.5; }

template <class Make>
Complex integrate_segments(const PlanarArc& arc, std::optional<Singularity> s0,
                           std::optional<Singularity> s1, double tol, Make&& make) {
  Complex total = 0;
  QuadOptions opt;
  opt.tol = tol;
  std::size_t n = arc.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    PathPiece p = PathPiece::line(arc[i], arc[i + 1]);
    if (i == 0) p.at_start = s0;
    if (i + 2 == n) p.at_end = s1;
    Complex d = arc[i + 1] - arc[i];
    Complex left = Complex(0, 1) * d / std::abs(d);
    total += integrate(Path{p}, make(i, left), opt).value;
  }
  return total;
}

}  // namespace

int anchor_of(Branch e) {
  switch (e) {
    case Branch::MinusOne: return kAnchorMinusOne;
    case Branch::PlusOne: return kAnchorPlusOne;
    case Branch::ZStar: return kAnchorZStar;
    case Branch::ZStarBar: return kAnchorZStarBar;
  }
  return -1;
}

double x_star_residual(double lambda, double x) {
  Complex zs(x, 2.0 / lambda);
  RawRoot raw{lambda, zs};
  Complex corner(1.0, 2.0 / lambda);
  PathPiece up = PathPiece::line(1.0, corner);
  up.at_start = Singularity{-0.5, false, kAnchorPlusOne};
  Path path{up};
  if (std::abs(corner - zs) > 1e-14) path.push_back(PathPiece::line(corner, zs));
  QuadOptions opt;
  opt.tol = 1e-15;
  Complex I = integrate(path, TrackedRoot{raw, 0}, opt).value;
  if (I.imag() < 0) I = -I;
  return I.real();
}

double solve_x_star(double lambda, double tol) {
  if (classify_regime(lambda) != Regime::Supercritical)
    fail(ErrorCode::WrongRegime, "x_* is defined for lambda > lambda_cr");
  auto F = [lambda](double x) { return x_star_residual(lambda, x); };
  return find_root<double>(F, 1e-6, 1 - 1e-6, tol);
}

TwoCutGeometry TwoCutGeometry::build(double lambda, const TraceOptions& opt) {
  TwoCutGeometry g;
  g.lambda_ = lambda;
  g.x_star_ = solve_x_star(lambda);
  g.z_star_ = Complex(g.x_star_, 2.0 / lambda);
  Complex zs = g.z_star_, zb = -std::conj(zs);
  RawRoot raw{lambda, zs};

  std::vector<Complex> right = trace_hard_to_soft(raw, 1.0, zs, opt);
  std::vector<Complex> left = trace_hard_to_soft(raw, -1.0, zb, opt);
  g.gamma1_ = PlanarArc(left, "-1", "-conj(z*)");
  std::reverse(right.begin(), right.end());
  g.gamma2_ = PlanarArc(right, "z*", "1");

  // Local trajectory directions at z*: Q^{1/2} ~ q1 (z - z*)^{1/2}.
  Complex q1 = Complex(0, 0.5 * lambda) * std::sqrt((zs - zb) / ((zs - 1.0) * (zs + 1.0)));
  Complex into = right[1] - right[0];
  double best = 1e300, theta = 0;
  for (int k = 0; k < 3; ++k) {
    double th = (2.0 / 3.0) * (kPi / 2 - std::arg(q1) + k * kPi);
    double diff = std::abs(std::arg(std::polar(1.0, th) / into));
    if (diff < best) {
      best = diff;
      theta = th;
    }
  }
  g.soft_dir_ = -std::polar(1.0, theta);

  std::vector<Complex> hat;
  for (double scale : {0.8, 0.5, 0.3, 0.15}) {
    double L = scale * std::max(g.x_star_, 0.05);
    Complex P2 = zs + L * g.soft_dir_;
    std::array<Complex, 4> P{zb, -std::conj(P2), P2, zs};
    double len = std::abs(P[1] - P[0]) + std::abs(P[2] - P[1]) + std::abs(P[3] - P[2]);
    int m = std::max(16, static_cast<int>(std::ceil(2.0 * len / opt.step_max)));
    hat.clear();
    for (int k = 0; k <= m; ++k) hat.push_back(bezier(P, double(k) / m));
    hat.front() = zb;
    hat.back() = zs;
    if (!polylines_cross(hat, left) && !polylines_cross(hat, right)) break;
    hat.clear();
  }
  if (hat.empty()) fail(ErrorCode::TraceStalled, "could not place the connecting arc");
  g.hat_ = PlanarArc(hat, "-conj(z*)", "z*");

  std::vector<Complex> all = left;
  all.insert(all.end(), hat.begin() + 1, hat.end());
  all.insert(all.end(), right.begin() + 1, right.end());
  g.support_ = PlanarArc(all, "-1", "1");

  g.log1_ = ArcLog(Complex(-1, 0), zb, left);
  g.log2_ = ArcLog(zs, Complex(1, 0), right);

  std::vector<Complex> marked{Complex(-1, 0), Complex(1, 0), zs, zb};
  auto planners = std::make_shared<std::array<PathPlanner, 4>>();
  (*planners)[0] = PathPlanner({left, hat, right}, marked);
  (*planners)[1] = PathPlanner({left, hat, right, ray(-1)}, marked);
  (*planners)[2] = PathPlanner({left, hat, right, ray(1)}, marked);
  (*planners)[3] = PathPlanner({left, right, ray(-1), ray(1)}, marked);
  g.planners_ = planners;

  Complex traw = g.tau_raw();
  if (std::abs(traw.imag()) > 1e-8)
    fail(ErrorCode::ImagResidual, "tau has a non-negligible imaginary part");
  g.tau_ = traw.real();
  g.ell_star_ = g.ell_star_at(3.0);
  return g;
}

Complex TwoCutGeometry::branch_point(Branch e) const {
  switch (e) {
    case Branch::MinusOne: return -1.0;
    case Branch::PlusOne: return 1.0;
    case Branch::ZStar: return z_star_;
    case Branch::ZStarBar: return -std::conj(z_star_);
  }
  return 0;
}

Complex TwoCutGeometry::Q(Complex z) const {
  return -(lambda_ * lambda_ / 4) * (z - z_star_) * (z + std::conj(z_star_)) / (z * z - 1.0);
}

Complex TwoCutGeometry::w2(const Node& n, Complex approach) const {
  Complex zb = -std::conj(z_star_);
  Complex zp1 = n.minus(-1.0, kAnchorMinusOne), zm1 = n.minus(1.0, kAnchorPlusOne);
  Complex dzb = n.minus(zb, kAnchorZStarBar), dzs = n.minus(z_star_, kAnchorZStar);
  Complex r1 = dzb * std::exp(0.5 * log1_.eval(n.z, zp1, dzb, approach));
  Complex r2 = zm1 * std::exp(0.5 * log2_.eval(n.z, dzs, zm1, approach));
  return r1 * r2;
}

Complex TwoCutGeometry::log_ratio(int arc, const Node& n, Complex approach) const {
  if (arc == 1)
    return log1_.eval(n.z, n.minus(-1.0, kAnchorMinusOne), n.minus(-std::conj(z_star_), kAnchorZStarBar),
                      approach);
  return log2_.eval(n.z, n.minus(z_star_, kAnchorZStar), n.minus(1.0, kAnchorPlusOne), approach);
}

Complex TwoCutGeometry::q_sqrt(const Node& n, Complex approach) const {
  Complex zp1 = n.minus(-1.0, kAnchorMinusOne), zm1 = n.minus(1.0, kAnchorPlusOne);
  return Complex(0, 0.5 * lambda_) * w2(n, approach) / (zm1 * zp1);
}

Complex TwoCutGeometry::density(const Node& s, Complex left) const {
  return -q_sqrt(s, left) / Complex(0, kPi);
}

Complex TwoCutGeometry::arc_mass(int arc, double tol) const {
  const PlanarArc& a = arc == 1 ? gamma1_ : gamma2_;
  Singularity hard{-0.5, false, arc == 1 ? kAnchorMinusOne : kAnchorPlusOne};
  Singularity soft{0.5, false, arc == 1 ? kAnchorZStarBar : kAnchorZStar};
  auto make = [this](std::size_t, Complex left) {
    return [this, left](const Node& s) { return density(s, left); };
  };
  return arc == 1 ? integrate_segments(a, hard, soft, tol, make)
                  : integrate_segments(a, soft, hard, tol, make);
}

Complex TwoCutGeometry::tau_raw(double tol) const {
  Path p = hat_.path(Singularity{0.5, false, kAnchorZStarBar}, Singularity{0.5, false, kAnchorZStar});
  QuadOptions opt;
  opt.tol = tol;
  Complex I = integrate(p, [this](const Node& s) { return q_sqrt(s); }, opt).value;
  return -I / Complex(0, kPi);
}

double TwoCutGeometry::trajectory_residual() const {
  double worst = 0;
  QuadOptions opt;
  opt.tol = 1e-15;
  for (int arc : {1, 2}) {
    const PlanarArc& a = arc == 1 ? gamma1_ : gamma2_;
    Complex run = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      PathPiece p = PathPiece::line(a[i], a[i + 1]);
      if (i == 0) p.at_start = Singularity{arc == 1 ? -0.5 : 0.5, false, arc == 1 ? kAnchorMinusOne : kAnchorZStar};
      if (i + 2 == a.size()) p.at_end = Singularity{arc == 1 ? 0.5 : -0.5, false, arc == 1 ? kAnchorZStarBar : kAnchorPlusOne};
      Complex d = a[i + 1] - a[i];
      Complex left = Complex(0, 1) * d / std::abs(d);
      run += integrate(Path{p}, [this, left](const Node& s) { return q_sqrt(s, left); }, opt).value;
      worst = std::max(worst, std::abs(run.real()));
    }
  }
  return worst;
}

std::vector<Complex> TwoCutGeometry::route(RouteKind kind, Complex from, Complex to, Complex leave,
                                           Complex arrive) const {
  return (*planners_)[static_cast<int>(kind)].route(from, to, leave, arrive);
}

Complex TwoCutGeometry::integrate_q(const std::vector<Complex>& pts, std::optional<Branch> start,
                                    std::optional<Branch> end, double tol) const {
  if (pts.size() < 2) return 0;
  Path p = polyline_path(pts);
  if (start) p.front().at_start = Singularity{exponent_of(*start), false, anchor_of(*start)};
  if (end) p.back().at_end = Singularity{exponent_of(*end), false, anchor_of(*end)};
  QuadOptions opt;
  opt.tol = tol;
  return integrate(p, [this](const Node& s) { return q_sqrt(s); }, opt).value;
}

Complex TwoCutGeometry::phi(Branch e, Complex z, Complex approach) const {
  RouteKind kind = RouteKind::PhiSoft;
  Complex leave = soft_dir_;
  switch (e) {
    case Branch::PlusOne:
      kind = RouteKind::Phi1;
      leave = 1.0;
      break;
    case Branch::MinusOne:
      kind = RouteKind::PhiM1;
      leave = -1.0;
      break;
    case Branch::ZStar:
      break;
    case Branch::ZStarBar:
      leave = -std::conj(soft_dir_);
      break;
  }
  Complex from = branch_point(e);
  auto pts = route(kind, from, z, leave, -approach);
  return 2.0 * integrate_q(pts, e, std::nullopt);
}

Complex TwoCutGeometry::g(Complex z, Complex approach) const {
  return 0.5 * (V(z) - ell_star_) + 0.5 * phi1(z, approach);
}

Complex TwoCutGeometry::ell_star_at(Complex z) const {
  return V(z) + phi1(z) - 2.0 * g_direct(z);
}

Complex TwoCutGeometry::g_direct(Complex z, double tol) const {
  // log(z - s) continued along gamma_lambda from s = -1, where it is principal.
  Complex ref = std::log(z + 1.0);
  struct LogDensity {
    const TwoCutGeometry* geo;
    Complex z, left, ref;
    Complex operator()(const Node& s) {
      ref = nearest_log(std::log(z - s.z), ref);
      return ref * geo->density(s, left);
    }
  };
  Complex total = 0;
  auto run_arc = [&](const PlanarArc& a, Singularity s0, Singularity s1) {
    std::vector<Complex> start_logs(a.size());
    start_logs[0] = ref;
    for (std::size_t i = 1; i < a.size(); ++i)
      start_logs[i] = nearest_log(std::log(z - a[i]), start_logs[i - 1]);
    total += integrate_segments(a, s0, s1, tol, [&](std::size_t i, Complex left) {
      return LogDensity{this, z, left, start_logs[i]};
    });
    ref = start_logs.back();
  };
  run_arc(gamma1_, Singularity{-0.5, false, kAnchorMinusOne}, Singularity{0.5, false, kAnchorZStarBar});
  for (std::size_t i = 1; i < hat_.size(); ++i) ref = nearest_log(std::log(z - hat_[i]), ref);
  run_arc(gamma2_, Singularity{0.5, false, kAnchorZStar}, Singularity{-0.5, false, kAnchorPlusOne});
  return total;
}

double TwoCutGeometry::s_property_residual(int npts, double h) const {
  auto G = [&](Complex z) { return -2.0 * g_direct(z, 1e-13).real() + V(z).real(); };
  return std::max(normal_derivative_jump(gamma1_, G, npts, h), normal_derivative_jump(gamma2_, G, npts, h));
}

}  // namespace kiss
