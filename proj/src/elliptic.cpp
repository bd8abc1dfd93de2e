#include "kiss/surface/elliptic.hpp"

#include <cmath>

namespace kiss {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kChartRadius = 4.0;

// Segment-by-segment integral along an arc with the + (left) boundary value.
template <class Make>
Complex along_arc(const PlanarArc& arc, std::optional<Singularity> s0, std::optional<Singularity> s1,
                  double tol, Make&& make) {
  Complex total = 0;
  QuadOptions opt;
  opt.tol = tol;
  for (std::size_t i = 0; i + 1 < arc.size(); ++i) {
    PathPiece p = PathPiece::line(arc[i], arc[i + 1]);
    if (i == 0) p.at_start = s0;
    if (i + 2 == arc.size()) p.at_end = s1;
    Complex d = arc[i + 1] - arc[i];
    Complex left = Complex(0, 1) * d / std::abs(d);
    total += integrate(Path{p}, make(i, left), opt).value;
  }
  return total;
}

Singularity edge(Branch e, bool logarithmic = false) {
  return Singularity{-0.5, logarithmic, anchor_of(e)};
}

std::optional<Branch> branch_at(const TwoCutGeometry& g, Complex z) {
  for (Branch e : {Branch::MinusOne, Branch::PlusOne, Branch::ZStar, Branch::ZStarBar})
    if (std::abs(z - g.branch_point(e)) < 1e-13) return e;
  return std::nullopt;
}

}  // namespace

double surface_distance(const SurfacePoint& a, const SurfacePoint& b) {
  if (a.sheet != b.sheet) return std::numeric_limits<double>::infinity();
  if (a.infinite || b.infinite) {
    Complex ua = a.infinite ? Complex(0) : 1.0 / a.z;
    Complex ub = b.infinite ? Complex(0) : 1.0 / b.z;
    return std::abs(ua - ub);
  }
  return std::abs(a.z - b.z);
}

Complex chart_root(const TwoCutGeometry& geo, Complex u) {
  Complex zs = geo.z_star();
  return std::sqrt((1.0 - u * u) * (1.0 - zs * u) * (1.0 + std::conj(zs) * u));
}

EllipticData EllipticData::build(std::shared_ptr<const TwoCutGeometry> geometry, double tol) {
  EllipticData d;
  d.geo_ = std::move(geometry);
  const TwoCutGeometry& g = *d.geo_;
  QuadOptions opt;
  opt.tol = tol;
  auto inv_w2 = [&g](const Node& s) { return 1.0 / g.w2(s); };

  Path hat = g.hat_gamma().path(edge(Branch::ZStarBar), edge(Branch::ZStar));
  d.N_ = -2.0 * integrate(hat, inv_w2, opt).value;
  if (std::abs(d.N_) < 1e-12) fail(ErrorCode::DegenerateCycle, "alpha period vanishes");

  Complex I1 = along_arc(g.gamma1(), edge(Branch::MinusOne), edge(Branch::ZStarBar), tol,
                         [&g](std::size_t, Complex left) {
                           return [&g, left](const Node& s) { return 1.0 / g.w2(s, left); };
                         });
  Complex Bp = 2.0 * I1 / d.N_;
  if (std::abs(Bp.imag()) < 1e-12) fail(ErrorCode::DegenerateCycle, "beta period is real");
  d.beta_sign_ = Bp.imag() > 0 ? 1 : -1;
  d.B_ = static_cast<double>(d.beta_sign_) * Bp;

  PathPiece right = PathPiece::line(1.0, kChartRadius);
  right.at_start = edge(Branch::PlusOne);
  Complex A4 = integrate(Path{right}, inv_w2, opt).value / d.N_;
  auto inv_sigma = [&g](Complex u) { return 1.0 / chart_root(g, u); };
  Complex tail = integrate(Path{PathPiece::line(0.0, 1.0 / kChartRadius)}, inv_sigma, opt).value;
  d.A_inf_ = A4 + tail / d.N_;
  return d;
}

Complex EllipticData::w(const SurfacePoint& p, Complex approach) const {
  if (p.infinite) fail(ErrorCode::InvalidArgument, "w is not finite at infinity");
  Complex v = geo_->w2(p.z, approach);
  return p.sheet == 0 ? v : -v;
}

Complex EllipticData::abel_derivative(const SurfacePoint& p, bool chart) const {
  double s = p.sheet == 0 ? 1.0 : -1.0;
  if (chart || p.infinite) {
    Complex u = p.infinite ? Complex(0) : 1.0 / p.z;
    return -s / (N_ * chart_root(*geo_, u));
  }
  return s / (N_ * geo_->w2(p.z));
}

Complex EllipticData::abel0_chart(Complex u) const {
  if (u == Complex(0)) return A_inf_;
  QuadOptions opt;
  opt.tol = 1e-14;
  auto inv_sigma = [this](Complex v) { return 1.0 / chart_root(*geo_, v); };
  return A_inf_ - integrate(Path{PathPiece::line(0.0, u)}, inv_sigma, opt).value / N_;
}

Complex EllipticData::abel0_along(const std::vector<Complex>& pts, double tol) const {
  if (pts.size() < 2) return 0;
  Path p = polyline_path(pts);
  p.front().at_start = edge(Branch::PlusOne);
  if (auto e = branch_at(*geo_, pts.back()); e && *e != Branch::PlusOne)
    p.back().at_end = edge(*e);
  QuadOptions opt;
  opt.tol = tol;
  return integrate(p, [this](const Node& s) { return 1.0 / geo_->w2(s); }, opt).value / N_;
}

Complex EllipticData::abel0(Complex z, Complex approach) const {
  if (std::abs(z - 1.0) < 1e-15) return 0;
  if (std::abs(z) > kChartRadius) return abel0_chart(1.0 / z);
  auto pts = geo_->route(RouteKind::Abel, 1.0, z, 1.0, -approach);
  return abel0_along(pts);
}

Complex EllipticData::abel(const SurfacePoint& p, Complex approach) const {
  Complex a = p.infinite ? A_inf_ : abel0(p.z, approach);
  return p.sheet == 0 ? a : -a;
}

Complex EllipticData::alpha_period(const std::vector<Complex>& hat, double tol) const {
  Path p = polyline_path(hat);
  p.front().at_start = edge(Branch::ZStarBar);
  p.back().at_end = edge(Branch::ZStar);
  QuadOptions opt;
  opt.tol = tol;
  Complex I = integrate(p, [this](const Node& s) { return 1.0 / geo_->w2(s); }, opt).value;
  return -2.0 * I / N_;
}

Complex EllipticData::beta_period_loop(double offset, double tol) const {
  const PlanarArc& a = geo_->gamma1();
  Complex e0 = a.front(), e1 = a.back();
  std::vector<Complex> left, right;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    if (std::abs(a[i] - e0) < 2 * offset || std::abs(a[i] - e1) < 2 * offset) continue;
    Complex t = a[i + 1] - a[i - 1];
    Complex n = Complex(0, 1) * t / std::abs(t);
    left.push_back(a[i] + offset * n);
    right.push_back(a[i] - offset * n);
  }
  if (left.empty()) fail(ErrorCode::DegenerateCycle, "loop offset too large for gamma_1");
  // Caps around an endpoint e, from the left offset to the right offset through the far side.
  auto cap = [&](Complex e, Complex from, Complex to) {
    double t0 = std::arg(from - e), t1 = std::arg(to - e);
    Complex mid_dir = e - (e == e0 ? a[1] : a[a.size() - 2]);
    double tm = std::arg(mid_dir);
    // choose the sweep t0 -> t1 passing through tm
    auto wrap = [](double x) {
      while (x < 0) x += 2 * kPi;
      while (x >= 2 * kPi) x -= 2 * kPi;
      return x;
    };
    double ccw = wrap(t1 - t0), to_mid = wrap(tm - t0);
    double sweep = to_mid <= ccw ? ccw : ccw - 2 * kPi;
    std::vector<Complex> out;
    int m = 24;
    for (int k = 1; k < m; ++k) out.push_back(e + 2 * offset * std::polar(1.0, t0 + sweep * k / m));
    return out;
  };
  std::vector<Complex> loop = left;
  auto c1 = cap(e1, left.back(), right.back());
  loop.insert(loop.end(), c1.begin(), c1.end());
  loop.insert(loop.end(), right.rbegin(), right.rend());
  auto c0 = cap(e0, right.front(), left.front());
  loop.insert(loop.end(), c0.begin(), c0.end());
  loop.push_back(loop.front());
  QuadOptions opt;
  opt.tol = tol;
  Complex I = integrate(polyline_path(loop), [this](Complex t) { return 1.0 / geo_->w2(t); }, opt).value;
  // the loop runs clockwise around gamma_1, so it equals 2 int_{gamma_1} dt / w2_+
  return static_cast<double>(beta_sign_) * I / N_;
}

Complex EllipticData::quartic_gamma(Complex z, Complex approach) const {
  Complex L = geo_->log_ratio(1, z, approach) + geo_->log_ratio(2, z, approach);
  return std::exp(-0.25 * L);
}

std::pair<Complex, Complex> EllipticData::ab_pair(Complex z, Complex approach) const {
  Complex g = quartic_gamma(z, approach);
  return {0.5 * (g + 1.0 / g), (g - 1.0 / g) / Complex(0, -2)};
}

Complex EllipticData::p_point() const {
  Complex zs = geo_->z_star();
  return Complex(0, zs.imag() / (1 - zs.real()));
}

Complex log_h_at(const WeightSpec& weight, const Node& s, Complex& hstar_ref) {
  Complex hs = weight.h_star.log(s.z);
  hstar_ref = hstar_ref == Complex(0) ? hs : nearest_log(hs, hstar_ref);
  Complex v = hstar_ref;
  if (weight.alpha != 0) v += weight.alpha * std::log(-s.minus(1.0, kAnchorPlusOne));
  if (weight.beta != 0) v += weight.beta * std::log(s.minus(-1.0, kAnchorMinusOne));
  return v;
}

Complex EllipticData::log_h_moment(const WeightSpec& weight, double tol) const {
  Complex total = 0;
  for (int arc : {1, 2}) {
    const PlanarArc& a = arc == 1 ? geo_->gamma1() : geo_->gamma2();
    std::vector<Complex> refs(a.size());
    refs[0] = weight.h_star.log(a[0]);
    for (std::size_t i = 1; i < a.size(); ++i) refs[i] = nearest_log(weight.h_star.log(a[i]), refs[i - 1]);
    Singularity s0 = arc == 1 ? edge(Branch::MinusOne, weight.beta != 0) : edge(Branch::ZStar);
    Singularity s1 = arc == 1 ? edge(Branch::ZStarBar) : edge(Branch::PlusOne, weight.alpha != 0);
    const TwoCutGeometry* g = geo_.get();
    total += along_arc(a, s0, s1, tol, [&](std::size_t i, Complex left) {
      return [g, &weight, left, ref = refs[i]](const Node& s) mutable {
        return log_h_at(weight, s, ref) / g->w2(s, left);
      };
    });
  }
  return total;
}

Complex EllipticData::c_h(const WeightSpec& weight, double tol) const {
  return -2.0 * log_h_moment(weight, tol) / (N_ * Complex(0, 2 * kPi));
}

}  // namespace kiss
