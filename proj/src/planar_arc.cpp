#include "kiss/numerics/planar_arc.hpp"

#include <algorithm>
#include <cmath>

namespace kiss {

PlanarArc::PlanarArc(std::vector<Complex> pts, std::string start_label, std::string end_label)
    : pts_(std::move(pts)), start_label_(std::move(start_label)), end_label_(std::move(end_label)) {
  if (pts_.size() < 2) fail(ErrorCode::InvalidArgument, "PlanarArc needs at least two samples");
}

Complex PlanarArc::tangent(std::size_t i) const {
  std::size_t lo = i == 0 ? 0 : i - 1;
  std::size_t hi = std::min(i + 1, pts_.size() - 1);
  Complex d = pts_[hi] - pts_[lo];
  return d / std::abs(d);
}

double PlanarArc::length() const {
  double L = 0;
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) L += std::abs(pts_[i + 1] - pts_[i]);
  return L;
}

double PlanarArc::max_step() const {
  double m = 0;
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) m = std::max(m, std::abs(pts_[i + 1] - pts_[i]));
  return m;
}

double PlanarArc::distance_to(Complex z) const {
  double d = std::abs(z - pts_[0]);
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i)
    d = std::min(d, point_segment_distance(z, pts_[i], pts_[i + 1]));
  return d;
}

PlanarArc PlanarArc::reversed() const {
  PlanarArc r = *this;
  std::reverse(r.pts_.begin(), r.pts_.end());
  std::swap(r.start_label_, r.end_label_);
  r.flipped_ = !flipped_;
  return r;
}

PlanarArc PlanarArc::reflected() const {
  PlanarArc r = *this;
  for (auto& p : r.pts_) p = -std::conj(p);
  return r;
}

PlanarArc PlanarArc::subarc(std::size_t i, std::size_t j) const {
  PlanarArc r = *this;
  r.pts_.assign(pts_.begin() + i, pts_.begin() + j + 1);
  return r;
}

Path PlanarArc::path(std::optional<Singularity> at_start, std::optional<Singularity> at_end) const {
  Path p = polyline_path(pts_);
  p.front().at_start = at_start;
  p.back().at_end = at_end;
  return p;
}

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

bool segments_cross(Complex a, Complex b, Complex c, Complex d) {
  double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on = [](Complex p, Complex q, Complex r) {
    return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
           std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
  };
  if (d1 == 0 && on(a, b, c)) return true;
  if (d2 == 0 && on(a, b, d)) return true;
  if (d3 == 0 && on(c, d, a)) return true;
  if (d4 == 0 && on(c, d, b)) return true;
  return false;
}

double point_segment_distance(Complex z, Complex a, Complex b) {
  Complex d = b - a;
  double L2 = std::norm(d);
  if (L2 == 0) return std::abs(z - a);
  double t = std::clamp(((z - a) * std::conj(d)).real() / L2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

bool inside_polygon(const std::vector<Complex>& poly, Complex z) {
  bool in = false;
  std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    Complex p = poly[i], q = poly[j];
    if ((p.imag() > z.imag()) != (q.imag() > z.imag())) {
      double x = p.real() + (z.imag() - p.imag()) * (q.real() - p.real()) / (q.imag() - p.imag());
      if (z.real() < x) in = !in;
    }
  }
  return in;
}

ArcLog::ArcLog(Complex a, Complex b, const std::vector<Complex>& arc) : a_(a), b_(b) {
  polygon_ = arc;
  polygon_.front() = a;
  polygon_.back() = b;
  scale_ = std::abs(b - a);
  if (polygon_.size() >= 3) {
    auto left_probe = [&](Complex p, Complex q) {
      Complex d = q - p;
      return inside_polygon(polygon_, p + 0.5 * d + Complex(0, 1e-3) * d);
    };
    left_in_a_ = left_probe(polygon_[0], polygon_[1]);
    std::size_t n = polygon_.size();
    left_in_b_ = left_probe(polygon_[n - 2], polygon_[n - 1]);
  }
}

bool ArcLog::enclosed(Complex z) const {
  if (polygon_.size() < 3) return false;
  return inside_polygon(polygon_, z);
}

Complex ArcLog::eval(Complex z, Complex za, Complex zb, Complex approach) const {
  const double pi = 3.14159265358979323846;
  Complex r = za / zb;
  Complex dir = approach;
  bool on_chord = std::abs(r.imag()) <= 1e-14 * std::abs(r) && r.real() < 0;
  if (on_chord && dir == Complex(0)) dir = Complex(0, 1) * (b_ - a_);
  Complex L = std::log(r);
  if (on_chord) {
    Complex dr = (a_ - b_) / (zb * zb) * dir;
    L = Complex(std::log(std::abs(r)), dr.imag() >= 0 ? pi : -pi);
  }
  bool inside = false;
  bool decided = false;
  if (dir != Complex(0) && polygon_.size() >= 3) {
    // boundary values next to an endpoint follow from the side of the end segment
    std::size_t n = polygon_.size();
    auto near_end = [&](Complex e, Complex other, bool left_in, double dist) {
      double len = std::abs(other - e);
      if (decided || dist >= 0.5 * len || point_segment_distance(z, e, other) > 1e-3 * dist) return;
      double side = cross(other - e, dir);
      bool left = e == a_ ? side > 0 : side < 0;
      inside = left == left_in;
      decided = true;
    };
    near_end(a_, polygon_[1], left_in_a_, std::abs(za));
    near_end(b_, polygon_[n - 2], left_in_b_, std::abs(zb));
  }
  if (!decided) {
    Complex probe = z;
    if (dir != Complex(0)) {
      double eps = std::min(1e-9 * std::max(1.0, scale_), 0.01 * std::min(std::abs(za), std::abs(zb)));
      probe = z + dir / std::abs(dir) * eps;
    }
    inside = enclosed(probe);
  }
  if (inside) {
    // inside the enclosed region the continuation crosses the chord once
    double side = cross(b_ - a_, z - a_);
    double arg_sign = side > 0 ? -1.0 : 1.0;  // sign of Arg((z-a)/(z-b)) on that side
    L += Complex(0, arg_sign < 0 ? 2 * pi : -2 * pi);
  }
  return L;
}

}  // namespace kiss
