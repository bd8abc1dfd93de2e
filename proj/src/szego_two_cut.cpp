#include <algorithm>
#include <cmath>
#include <functional>

#include "kiss/szego/szego.hpp"

namespace kiss {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDetour = 0.05;

Complex left_normal(const PathPiece& p) {
  Complex d = p.b - p.a;
  return Complex(0, 1) * d / std::abs(d);
}

// Continuation of log h* along the start points of the pieces.
std::vector<Complex> piece_refs(const Path& path, const WeightSpec& w) {
  std::vector<Complex> refs(path.size());
  Complex ref = w.h_star.log(path.front().start());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const PathPiece& p = path[i];
    for (int k = 0; k <= 8; ++k) {
      ref = nearest_log(w.h_star.log(p.point(k / 8.0)), ref);
      if (k == 0) refs[i] = ref;
    }
  }
  return refs;
}

}  // namespace

SzegoTwoCut::SzegoTwoCut(const EllipticData& data, WeightSpec weight, double tol)
    : data_(&data), weight_(std::move(weight)), tol_(tol) {
  I0_ = data.log_h_moment(weight_, tol_);
  c_h_ = -2.0 * I0_ / (data.normalization() * Complex(0, 2 * kPi));
  M1_ = arc_moment([](Complex s) { return s; });
  H1_ = hat_moment([](Complex t) { return t; });
  double r = 0;
  const TwoCutGeometry& g = data.geometry();
  for (const PlanarArc* a : {&g.gamma1(), &g.gamma2(), &g.hat_gamma()})
    for (Complex s : a->points()) r = std::max(r, std::abs(s));
  far_ = 2.5 * r;
}

// int over gamma_1 u gamma_2 of log h(s) / (w2_+(s) (s - z)), deformed away from z.
Complex SzegoTwoCut::arc_cauchy(Complex z, Complex approach) const {
  const TwoCutGeometry& g = data_->geometry();
  std::vector<DeformedArc> arcs;
  for (int arc : {1, 2}) {
    const PlanarArc& a = arc == 1 ? g.gamma1() : g.gamma2();
    Singularity s0 = arc == 1 ? Singularity{-0.5, weight_.beta != 0, kAnchorMinusOne}
                              : Singularity{-0.5, false, kAnchorZStar};
    Singularity s1 = arc == 1 ? Singularity{-0.5, false, kAnchorZStarBar}
                              : Singularity{-0.5, weight_.alpha != 0, kAnchorPlusOne};
    arcs.push_back(deform_around(a, z, approach, kDetour, s0, s1));
  }
  auto run = [&](double tol) {
    QuadOptions opt;
    opt.tol = tol;
    Complex total = 0;
    for (const DeformedArc& d : arcs) {
      std::vector<Complex> refs = piece_refs(d.path, weight_);
      for (std::size_t i = 0; i < d.path.size(); ++i) {
        const PathPiece& piece = d.path[i];
        bool detour = d.has_detour && i == d.detour_piece;
        double sign = detour && d.detour_right ? -1.0 : 1.0;
        Complex side = detour ? Complex(0) : left_normal(piece);
        auto f = [this, &g, z, sign, side, ref = refs[i]](const Node& x) mutable {
          return log_h_at(weight_, x, ref) / (sign * g.w2(x, side) * (x.z - z));
        };
        total += integrate(Path{piece}, f, opt).value;
      }
    }
    return total;
  };
  // near an endpoint the integral grows like |z - e|^{-1/2}: relative tolerance
  return run(tol_ * std::max(1.0, std::abs(run(1e-6))));
}

// int over hat-gamma of dt / (w2(t) (t - z)).
Complex SzegoTwoCut::hat_cauchy(Complex z, Complex approach) const {
  const TwoCutGeometry& g = data_->geometry();
  DeformedArc d = deform_around(g.hat_gamma(), z, approach, kDetour,
                                Singularity{-0.5, false, kAnchorZStarBar},
                                Singularity{-0.5, false, kAnchorZStar});
  auto run = [&](double tol) {
    QuadOptions opt;
    opt.tol = tol;
    return integrate(d.path, [&g, z](const Node& t) { return 1.0 / (g.w2(t) * (t.z - z)); }, opt).value;
  };
  return run(tol_ * std::max(1.0, std::abs(run(1e-6))));
}

// int over gamma_1 u gamma_2 of log h(s) k(s) / w2_+(s) ds, undeformed.
Complex SzegoTwoCut::arc_moment(const std::function<Complex(Complex)>& k) const {
  const TwoCutGeometry& g = data_->geometry();
  QuadOptions opt;
  opt.tol = tol_;
  Complex total = 0;
  for (int arc : {1, 2}) {
    const PlanarArc& a = arc == 1 ? g.gamma1() : g.gamma2();
    Singularity s0 = arc == 1 ? Singularity{-0.5, weight_.beta != 0, kAnchorMinusOne}
                              : Singularity{-0.5, false, kAnchorZStar};
    Singularity s1 = arc == 1 ? Singularity{-0.5, false, kAnchorZStarBar}
                              : Singularity{-0.5, weight_.alpha != 0, kAnchorPlusOne};
    Path path = a.path(s0, s1);
    std::vector<Complex> refs = piece_refs(path, weight_);
    for (std::size_t i = 0; i < path.size(); ++i) {
      Complex side = left_normal(path[i]);
      auto f = [this, &g, &k, side, ref = refs[i]](const Node& x) mutable {
        return k(x.z) * log_h_at(weight_, x, ref) / g.w2(x, side);
      };
      total += integrate(Path{path[i]}, f, opt).value;
    }
  }
  return total;
}

// int over hat-gamma of k(t) / w2(t) dt, undeformed.
Complex SzegoTwoCut::hat_moment(const std::function<Complex(Complex)>& k) const {
  const TwoCutGeometry& g = data_->geometry();
  QuadOptions opt;
  opt.tol = tol_;
  Path hat = g.hat_gamma().path(Singularity{-0.5, false, kAnchorZStarBar},
                                Singularity{-0.5, false, kAnchorZStar});
  return integrate(hat, [&g, &k](const Node& t) { return k(t.z) / g.w2(t); }, opt).value;
}

Complex SzegoTwoCut::log_value(const SurfacePoint& p, Complex approach) const {
  const TwoCutGeometry& g = data_->geometry();
  Complex N = data_->normalization();
  Complex v;
  if (p.infinite) {
    // limit of the finite-z formula: (1/2 pi i)(M_1 + 2 I_0 H_1 / N)
    v = (M1_ + 2.0 * I0_ * H1_ / N) / Complex(0, 2 * kPi);
  } else if (std::abs(p.z) > far_) {
    // 1/(s - z) = -1/z - s/z^2 + s^2/(z^2 (s - z)); the 1/z terms cancel since H_0 = -N/2
    Complex z = p.z;
    Complex R1 = arc_moment([z](Complex s) { return s * s / (s - z); });
    Complex R2 = hat_moment([z](Complex t) { return t * t / (t - z); });
    Complex w = g.w2(z);
    v = -w / (z * z * Complex(0, 2 * kPi)) * (R1 - M1_ + 2.0 * I0_ / N * (R2 - H1_));
  } else {
    Complex K = hat_cauchy(p.z, approach);
    Complex I1 = arc_cauchy(p.z, approach);
    Complex w = g.w2(p.z, approach);
    v = -w / Complex(0, 2 * kPi) * (I1 + 2.0 * K * I0_ / N);
  }
  return p.sheet == 0 ? v : -v;
}

Complex SzegoTwoCut::log_value_direct(const SurfacePoint& p) const {
  const TwoCutGeometry& g = data_->geometry();
  SurfacePoint q = SurfacePoint::at(p.z, 1 - p.sheet);
  ThirdKind omega(*data_, p, q, tol_);
  QuadOptions opt;
  opt.tol = tol_;
  Complex total = 0;
  for (int arc : {1, 2}) {
    const PlanarArc& a = arc == 1 ? g.gamma1() : g.gamma2();
    Singularity s0 = arc == 1 ? Singularity{-0.5, weight_.beta != 0, kAnchorMinusOne}
                              : Singularity{-0.5, false, kAnchorZStar};
    Singularity s1 = arc == 1 ? Singularity{-0.5, false, kAnchorZStarBar}
                              : Singularity{-0.5, weight_.alpha != 0, kAnchorPlusOne};
    Path path = a.path(s0, s1);
    std::vector<Complex> refs = piece_refs(path, weight_);
    for (std::size_t i = 0; i < path.size(); ++i) {
      Complex side = left_normal(path[i]);
      // the lift runs backwards along the + side and forwards along the - side of sheet 0
      auto f = [this, &omega, side, ref = refs[i]](const Node& x) mutable {
        SurfacePoint t = SurfacePoint::at(x.z, 0);
        Complex jump = omega.at(t, -side, x) - omega.at(t, side, x);
        return log_h_at(weight_, x, ref) * jump;
      };
      total += integrate(Path{path[i]}, f, opt).value;
    }
  }
  return total / Complex(0, 4 * kPi);
}

ThirdKind::ThirdKind(const EllipticData& data, SurfacePoint p, SurfacePoint q, double tol)
    : data_(&data), p_(p), q_(q), tol_(tol) {
  if (p.infinite || q.infinite) fail(ErrorCode::InvalidArgument, "third-kind poles must be finite");
  if (surface_distance(p, q) < 1e-12) fail(ErrorCode::CoincidentPoles, "Omega_{p,q} needs p != q");
  wp_ = data.w(p);
  wq_ = data.w(q);
  c_ = -alpha_integral(false);
}

Complex ThirdKind::at(const SurfacePoint& t, Complex approach, const Node& node) const {
  Complex wt = t.sheet == 0 ? data_->geometry().w2(node, approach) : -data_->geometry().w2(node, approach);
  Complex r = (wt + wp_) / (2.0 * wt * (t.z - p_.z)) - (wt + wq_) / (2.0 * wt * (t.z - q_.z));
  return r + c_ / (data_->normalization() * wt);
}

Complex ThirdKind::raw(const SurfacePoint& t) const {
  Complex wt = data_->w(t);
  return (wt + wp_) / (2.0 * wt * (t.z - p_.z)) - (wt + wq_) / (2.0 * wt * (t.z - q_.z));
}

Complex ThirdKind::operator()(const SurfacePoint& t) const {
  return raw(t) + c_ / (data_->normalization() * data_->w(t));
}

Complex ThirdKind::alpha_integral(bool normalized) const {
  const TwoCutGeometry& g = data_->geometry();
  Path hat = g.hat_gamma().path(Singularity{-0.5, false, kAnchorZStarBar},
                                Singularity{-0.5, false, kAnchorZStar});
  QuadOptions opt;
  opt.tol = tol_;
  // alpha: sheet 0 from z* to -conj z*, then sheet 1 back along hat-gamma
  auto f = [this, normalized](const Node& t) {
    Complex w0 = data_->geometry().w2(t);
    auto val = [&](Complex wt) {
      Complex r = (wt + wp_) / (2.0 * wt * (t.z - p_.z)) - (wt + wq_) / (2.0 * wt * (t.z - q_.z));
      if (normalized) r += c_ / (data_->normalization() * wt);
      return r;
    };
    return val(-w0) - val(w0);
  };
  return integrate(hat, f, opt).value;
}

Complex ThirdKind::alpha_period() const { return alpha_integral(true); }

Complex ThirdKind::residue_at_p(double radius) const {
  QuadOptions opt;
  opt.tol = tol_;
  int sheet = p_.sheet;
  auto f = [this, sheet](Complex t) { return (*this)(SurfacePoint::at(t, sheet)); };
  Complex I = integrate(Path{PathPiece::circle(p_.z, radius, 0, 2 * kPi)}, f, opt).value;
  return I / Complex(0, 2 * kPi);
}

}  // namespace kiss
