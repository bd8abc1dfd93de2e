#include <algorithm>
#include <cmath>

#include "kiss/szego/szego.hpp"

namespace kiss {

namespace {
constexpr double kPi = 3.14159265358979323846;

double wrap_positive(double x) {
  while (x <= 0) x += 2 * kPi;
  while (x > 2 * kPi) x -= 2 * kPi;
  return x;
}

// First crossing of the circle |x - c| = r on the segment a -> b, a inside or outside.
Complex circle_hit(Complex a, Complex b, Complex c, double r) {
  double lo = 0, hi = 1;
  bool a_in = std::abs(a - c) < r;
  for (int it = 0; it < 80; ++it) {
    double m = 0.5 * (lo + hi);
    bool in = std::abs(a + m * (b - a) - c) < r;
    if (in == a_in) lo = m;
    else hi = m;
  }
  return a + 0.5 * (lo + hi) * (b - a);
}
}  // namespace

DeformedArc deform_around(const PlanarArc& arc, Complex z, Complex approach, double radius,
                          std::optional<Singularity> s0, std::optional<Singularity> s1) {
  DeformedArc out;
  std::size_t n = arc.size();
  // nearest point of the polyline
  double best = 1e300;
  std::size_t seg = 0;
  Complex near{};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Complex a = arc[i], b = arc[i + 1], d = b - a;
    double t = std::clamp(((z - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
    Complex p = a + t * d;
    if (std::abs(z - p) < best) {
      best = std::abs(z - p);
      seg = i;
      near = p;
    }
  }
  double r = std::min(radius, 0.4 * std::min(std::abs(near - arc.front()), std::abs(near - arc.back())));
  bool need = best < 0.5 * r && r > 1e-8;
  if (!need) {
    out.path = arc.path(s0, s1);
    return out;
  }
  Complex tan = arc[seg + 1] - arc[seg];
  double side = cross(tan, approach != Complex(0) && best < 1e-12 ? approach : z - near);
  bool z_left = side > 0;
  out.has_detour = true;
  out.detour_right = z_left;

  std::size_t i_in = seg, i_out = seg + 1;
  while (i_in > 0 && std::abs(arc[i_in] - near) < r) --i_in;
  while (i_out + 1 < n && std::abs(arc[i_out] - near) < r) ++i_out;
  Complex p_in = circle_hit(arc[i_in], arc[i_in + 1], near, r);
  Complex p_out = circle_hit(arc[i_out], arc[i_out - 1], near, r);

  std::vector<Complex> head(arc.points().begin(), arc.points().begin() + i_in + 1);
  head.push_back(p_in);
  std::vector<Complex> tail{p_out};
  tail.insert(tail.end(), arc.points().begin() + i_out, arc.points().end());

  Path path = polyline_path(head);
  path.front().at_start = s0;
  double t0 = std::arg(p_in - near), t1 = std::arg(p_out - near);
  double sweep = out.detour_right ? wrap_positive(t1 - t0) : -wrap_positive(t0 - t1);
  out.detour_piece = path.size();
  path.push_back(PathPiece::circle(near, r, t0, t0 + sweep));
  Path rest = polyline_path(tail);
  rest.back().at_end = s1;
  path.insert(path.end(), rest.begin(), rest.end());
  out.path = path;
  return out;
}

Complex SzegoOneCut::w_plus_continued(const Node& x) {
  Complex om = -x.minus(1.0, kAnchorPlusOne), op = x.minus(-1.0, kAnchorMinusOne);
  return Complex(0, 1) * std::sqrt(om) * std::sqrt(op);
}

Complex SzegoOneCut::log_boundary(const Node& x, Complex& ref) const {
  Complex om = -x.minus(1.0, kAnchorPlusOne), op = x.minus(-1.0, kAnchorMinusOne);
  Complex hs = weight_.h_star.log(x.z);
  ref = ref == Complex(0) ? hs : nearest_log(hs, ref);
  return Complex(0, kPi / 2) + (0.5 + weight_.alpha) * std::log(om) + (0.5 + weight_.beta) * std::log(op) +
         ref;
}

SzegoOneCut::SzegoOneCut(std::shared_ptr<const OneCutGeometry> geometry, WeightSpec weight, double tol)
    : geo_(std::move(geometry)), weight_(std::move(weight)), tol_(tol) {
  const PlanarArc& arc = geo_->arc();
  Path p = arc.path(Singularity{-0.5, true, kAnchorMinusOne}, Singularity{-0.5, true, kAnchorPlusOne});
  QuadOptions opt;
  opt.tol = tol_;
  Complex ref = 0;
  Complex I = integrate(p, [this, ref](const Node& x) mutable {
                return log_boundary(x, ref) / w_plus_continued(x);
              }, opt).value;
  log_inf_ = -I / Complex(0, 2 * kPi);
}

Complex SzegoOneCut::cauchy(Complex z, Complex approach) const {
  DeformedArc d = deform_around(geo_->arc(), z, approach, 0.05,
                                Singularity{-0.5, true, kAnchorMinusOne},
                                Singularity{-0.5, true, kAnchorPlusOne});
  // the integral grows like |z -+ 1|^{-1/2} near the endpoints; the tolerance is
  // taken relative to a coarse estimate of its size
  auto run = [&](double tol) {
    QuadOptions opt;
    opt.tol = tol;
    Complex ref = 0;
    return integrate(d.path, [this, z, ref](const Node& x) mutable {
             return log_boundary(x, ref) / (w_plus_continued(x) * (x.z - z));
           }, opt).value;
  };
  double scale = std::abs(run(1e-6));
  return run(tol_ * std::max(1.0, scale));
}

Complex SzegoOneCut::log_value(Complex z, Complex approach) const {
  Complex wz = geo_->w(z, approach);
  return wz / Complex(0, 2 * kPi) * cauchy(z, approach);
}

}  // namespace kiss
