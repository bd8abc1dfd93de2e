#include "kiss/geometry/one_cut.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "kiss/numerics/roots.hpp"

namespace kiss {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct PhaseField {
  double lambda;
  double F(Complex z) const {
    Complex w0 = w_principal(z);
    return (2.0 * std::log(z + w0) + Complex(0, lambda) * w0).real();
  }
  Complex dPhi(Complex z) const { return (2.0 + Complex(0, lambda) * z) / w_principal(z); }
};

Complex newton_project(const PhaseField& fld, Complex z, double tol, bool& ok) {
  ok = false;
  for (int k = 0; k < 40; ++k) {
    double f = fld.F(z);
    if (std::abs(f) <= tol) {
      ok = true;
      return z;
    }
    z -= f / fld.dPhi(z);
  }
  ok = std::abs(fld.F(z)) <= 10 * tol;
  return z;
}

// Follows Re(phase) = 0 from `start` (heading roughly along `dir`) into -1.
std::vector<Complex> trace_to_minus_one(const PhaseField& fld, Complex start, Complex dir,
                                        const TraceOptions& opt) {
  std::vector<Complex> pts{start};
  Complex z = start, prev = dir / std::abs(dir);
  for (int step = 0; step < 200000; ++step) {
    double d = std::abs(z + 1.0);
    if (d < 1e-8) break;
    double h = std::min(opt.step_max, 0.3 * d);
    Complex grad = fld.dPhi(z);
    Complex t = Complex(0, 1) * std::conj(grad) / std::abs(grad);
    if ((t * std::conj(prev)).real() < 0) t = -t;
    Complex znew;
    bool accepted = false;
    for (int tries = 0; tries < 20 && !accepted; ++tries) {
      bool ok;
      znew = newton_project(fld, z + h * t, opt.tol, ok);
      double moved = std::abs(znew - z);
      if (ok && znew.imag() >= 0 && moved > 0.3 * h && moved < 2.0 * h &&
          ((znew - z) * std::conj(prev)).real() > 0) {
        accepted = true;
      } else {
        h *= 0.5;
      }
    }
    if (!accepted) fail(ErrorCode::TraceStalled, "one-cut trace: corrector failed");
    prev = (znew - z) / std::abs(znew - z);
    z = znew;
    if (std::abs(z + 1.0) < 1e-8) break;
    pts.push_back(z);
  }
  if (std::abs(z + 1.0) > 1e-6) fail(ErrorCode::TraceStalled, "one-cut trace did not reach -1");
  pts.push_back(Complex(-1.0, 0.0));
  return pts;
}

}  // namespace

Complex w_principal(const Node& n, Complex approach) {
  Complex zm = n.minus(1.0, kAnchorPlusOne), zp = n.minus(-1.0, kAnchorMinusOne);
  if (n.z.imag() == 0.0 && std::abs(n.z.real()) < 1.0) {
    double s = approach.imag() < 0 ? -0.0 : 0.0;
    zm = Complex(zm.real(), s);
    zp = Complex(zp.real(), s);
  }
  return std::sqrt(zm) * std::sqrt(zp);
}

OneCutGeometry OneCutGeometry::build(double lambda, const TraceOptions& opt) {
  if (!(lambda >= 0)) fail(ErrorCode::InvalidArgument, "lambda must be non-negative");
  OneCutGeometry g;
  g.lambda_ = lambda;
  Regime regime = lambda == 0 ? Regime::Subcritical : classify_regime(lambda);
  if (regime == Regime::Supercritical)
    fail(ErrorCode::WrongRegime, "one-cut geometry requires lambda <= lambda_cr");
  g.critical_ = regime == Regime::Critical;

  std::vector<Complex> pts;
  if (lambda == 0) {
    int m = static_cast<int>(std::ceil(2.0 / opt.step_max));
    for (int k = 0; k <= m; ++k) pts.push_back(Complex(-1.0 + 2.0 * k / m, 0.0));
    pts.front() = -1.0;
    pts.back() = 1.0;
    g.apex_ = 0;
  } else {
    PhaseField fld{lambda};
    std::vector<Complex> half;
    if (g.critical_) {
      Complex z0(0, 2.0 / lambda);
      g.apex_ = z0;
      Complex c = Complex(0, lambda) / w_principal(z0);
      Complex best = 0;
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
          Complex d = s2 * std::sqrt(Complex(0, s1) * std::conj(c) / std::abs(c));
          if (d.real() < 0 && d.imag() < 0) best = d;
        }
      bool ok;
      Complex z1 = newton_project(fld, z0 + 2e-3 * best, opt.tol, ok);
      if (!ok) fail(ErrorCode::TraceStalled, "critical trace: saddle departure failed");
      half = trace_to_minus_one(fld, z1, best, opt);
      half.insert(half.begin(), z0);
    } else {
      auto Fy = [&](double y) {
        return 2.0 * std::asinh(y) - lambda * std::sqrt(1.0 + y * y);
      };
      double y1 = find_root<double>(Fy, 1e-14, 2.0 / lambda, 1e-15);
      g.apex_ = Complex(0, y1);
      half = trace_to_minus_one(fld, g.apex_, Complex(-1, 0), opt);
    }
    pts.assign(half.rbegin(), half.rend());
    for (std::size_t k = 1; k < half.size(); ++k) pts.push_back(-std::conj(half[k]));
    pts.back() = 1.0;
  }
  g.arc_ = PlanarArc(pts, "-1", "1");
  g.log_ratio_ = ArcLog(Complex(-1, 0), Complex(1, 0), pts);
  return g;
}

Complex OneCutGeometry::w(const Node& z, Complex approach) const {
  if (lambda_ == 0) return w_principal(z, approach);
  Complex zp = z.minus(-1.0, kAnchorMinusOne), zm = z.minus(1.0, kAnchorPlusOne);
  return zm * std::exp(0.5 * log_ratio_.eval(z.z, zp, zm, approach));
}

Complex OneCutGeometry::joukowski(const Node& z, Complex approach) const { return z.z + w(z, approach); }

Complex OneCutGeometry::phase(const Node& z, Complex approach) const {
  Complex wz = w(z, approach);
  Complex j = z.z + wz;
  Complex lj = std::log(j);
  if (j.imag() == 0.0 && j.real() < 0) lj = Complex(std::log(-j.real()), approach.imag() < 0 ? -kPi : kPi);
  return 2.0 * lj + Complex(0, lambda_) * wz;
}

Complex OneCutGeometry::q_sqrt(const Node& z, Complex approach) const {
  return (2.0 + Complex(0, lambda_) * z.z) / (2.0 * w(z, approach));
}

Complex OneCutGeometry::w_plus(const Node& s) const { return w_principal(s, Complex(0, 1)); }

Complex OneCutGeometry::density(const Node& s) const {
  Complex wp = w_plus(s);
  if (wp == Complex(0)) fail(ErrorCode::Endpoint, "density is singular at the endpoints");
  return -(2.0 + Complex(0, lambda_) * s.z) / (Complex(0, 2 * kPi) * wp);
}

double OneCutGeometry::ell() const { return 2.0 * std::log(2.0); }

Complex OneCutGeometry::g(Complex z, Complex approach) const {
  Complex j = joukowski(z, approach);
  Complex lj = std::log(j);
  if (j.imag() == 0.0 && j.real() < 0) lj = Complex(std::log(-j.real()), approach.imag() < 0 ? -kPi : kPi);
  return lj - Complex(0, lambda_) / (2.0 * j) - std::log(2.0);
}

Complex OneCutGeometry::g_direct(Complex z, double tol) const {
  struct Integrand {
    const OneCutGeometry* geo;
    Complex z;
    Complex ref;
    Complex operator()(const Node& s) {
      ref = nearest_log(std::log(z - s.z), ref);
      return ref * geo->density(s);
    }
  };
  Integrand f{this, z, std::log(z + 1.0)};
  Singularity edge{-0.5, false, kAnchorMinusOne}, tail{-0.5, false, kAnchorPlusOne};
  QuadOptions opt;
  opt.tol = tol;
  return integrate(arc_.path(edge, tail), f, opt).value;
}

Complex OneCutGeometry::total_mass(double tol) const {
  Singularity edge{-0.5, false, kAnchorMinusOne}, tail{-0.5, false, kAnchorPlusOne};
  QuadOptions opt;
  opt.tol = tol;
  return integrate(arc_.path(edge, tail), [this](const Node& s) { return density(s); }, opt).value;
}

double normal_derivative_jump(const PlanarArc& arc, const std::function<double(Complex)>& G, int npts,
                              double h) {
  std::size_t N = arc.size();
  std::vector<double> cum(N, 0.0);
  for (std::size_t i = 1; i < N; ++i) cum[i] = cum[i - 1] + std::abs(arc[i] - arc[i - 1]);
  double worst = 0;
  for (int k = 1; k <= npts; ++k) {
    double target = cum.back() * k / (npts + 1);
    auto it = std::lower_bound(cum.begin(), cum.end(), target);
    std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - cum.begin()), 1, N - 2);
    Complex s = arc[i];
    Complex nrm = arc.left_normal(i);
    double jump = 4.0 * (G(s + h * nrm) - G(s - h * nrm)) - (G(s + 2 * h * nrm) - G(s - 2 * h * nrm));
    worst = std::max(worst, std::abs(jump) / (2 * h));
  }
  return worst;
}

double OneCutGeometry::s_property_residual(int npts, double h) const {
  auto G = [&](Complex z) { return -2.0 * g_direct(z, 1e-13).real() + V(z).real(); };
  return normal_derivative_jump(arc_, G, npts, h);
}

}  // namespace kiss
