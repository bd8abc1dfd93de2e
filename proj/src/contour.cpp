#include "kiss/numerics/contour.hpp"

#include <algorithm>

#include "kiss/numerics/gauss.hpp"

namespace kiss {

Complex PathPiece::point(double s) const {
  if (kind == Kind::Line) return a + (b - a) * s;
  double t = t0 + (t1 - t0) * s;
  return center + radius * Complex(std::cos(t), std::sin(t));
}

Complex PathPiece::velocity(double s) const {
  if (kind == Kind::Line) return b - a;
  double t = t0 + (t1 - t0) * s;
  return (t1 - t0) * radius * Complex(-std::sin(t), std::cos(t));
}

PathPiece PathPiece::reversed() const {
  PathPiece p = *this;
  std::swap(p.a, p.b);
  std::swap(p.t0, p.t1);
  std::swap(p.at_start, p.at_end);
  return p;
}

Path polyline_path(const std::vector<Complex>& pts) {
  Path p;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) p.push_back(PathPiece::line(pts[i], pts[i + 1]));
  return p;
}

Path reversed(const Path& p) {
  Path r;
  r.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) r.push_back(it->reversed());
  return r;
}

Complex path_start(const Path& p) { return p.front().start(); }
Complex path_end(const Path& p) { return p.back().end(); }

namespace detail {

const GL16& gl16() {
  static const GL16 table = [] {
    GL16 g;
    GaussRule<double> r = gauss_legendre<double>(16);
    for (int i = 0; i < 16; ++i) {
      g.x[i] = 0.5 * (r.nodes[i] + 1.0);
      g.w[i] = 0.5 * r.weights[i];
    }
    return g;
  }();
  return table;
}

int substitution_power(const Singularity& s) {
  if (s.exponent >= 1.0 && !s.logarithmic) return 1;
  int p = static_cast<int>(std::ceil(1.0 / (1.0 + s.exponent) - 1e-12));
  p = std::max(p, 2);
  if (s.logarithmic) p += 1;
  return std::min(p, 12);
}

}  // namespace detail
}  // namespace kiss
