#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <type_traits>
#include <vector>

#include "kiss/error.hpp"
#include "kiss/numerics/precision.hpp"

namespace kiss {

// Algebraic (optionally logarithmic) endpoint behaviour |z - e|^exponent.
struct Singularity {
  double exponent = 0.0;
  bool logarithmic = false;
  int anchor = -1;  // caller-defined id of the endpoint, reported in Node::anchor
};

// Quadrature node handed to integrands. When the node lies on a piece with
// a declared endpoint singularity, `offset` is z minus that endpoint computed
// without cancellation and `anchor` is the descriptor's id.
struct Node {
  Complex z{};
  Complex offset{};
  int anchor = -1;
  Node() = default;
  Node(Complex zz) : z(zz) {}
  Node(Complex zz, Complex off, int a) : z(zz), offset(off), anchor(a) {}
  // z - e, exact when e is the anchored endpoint with the given id.
  Complex minus(Complex e, int id) const { return anchor == id && id >= 0 ? offset : z - e; }
};

// A straight segment a -> b or a circular arc c + r e^{it}, t0 -> t1.
struct PathPiece {
  enum class Kind { Line, Circle } kind = Kind::Line;
  Complex a{}, b{};
  Complex center{};
  double radius = 0, t0 = 0, t1 = 0;
  std::optional<Singularity> at_start, at_end;

  static PathPiece line(Complex from, Complex to) {
    PathPiece p;
    p.a = from;
    p.b = to;
    return p;
  }
  static PathPiece circle(Complex c, double r, double from, double to) {
    PathPiece p;
    p.kind = Kind::Circle;
    p.center = c;
    p.radius = r;
    p.t0 = from;
    p.t1 = to;
    return p;
  }
  Complex start() const { return point(0.0); }
  Complex end() const { return point(1.0); }
  Complex point(double s) const;
  Complex velocity(double s) const;
  PathPiece reversed() const;
};

using Path = std::vector<PathPiece>;

Path polyline_path(const std::vector<Complex>& pts);
Path reversed(const Path& p);
Complex path_start(const Path& p);
Complex path_end(const Path& p);

struct QuadOptions {
  double tol = 1e-13;
  int max_depth = 40;
};

struct QuadResult {
  Complex value{};
  double error = 0;
};

namespace detail {

struct GL16 {
  std::array<double, 16> x, w;  // on [0,1]
};
const GL16& gl16();

int substitution_power(const Singularity& s);

template <class F>
Complex call(F& f, const Node& n) {
  if constexpr (std::is_invocable_v<F&, const Node&>) {
    return f(n);
  } else {
    return f(n.z);
  }
}

template <class F>
Complex panel(F& f, const PathPiece& piece, double u0, double u1, int p_start, int p_end,
              double* mag = nullptr) {
  const GL16& g = gl16();
  Complex sum = 0;
  double h = u1 - u0;
  for (int i = 0; i < 16; ++i) {
    double u = u0 + h * g.x[i];
    double s, ds;
    Node node;
    if (p_start > 1) {
      s = std::pow(u, p_start);
      ds = p_start * std::pow(u, p_start - 1);
      node.z = piece.point(s);
      if (piece.kind == PathPiece::Kind::Line) node.offset = (piece.b - piece.a) * s;
      else node.offset = node.z - piece.start();
      node.anchor = piece.at_start->anchor;
    } else if (p_end > 1) {
      double v = 1 - u;
      double vp = std::pow(v, p_end);
      s = 1 - vp;
      ds = p_end * std::pow(v, p_end - 1);
      node.z = piece.point(s);
      if (piece.kind == PathPiece::Kind::Line) node.offset = -(piece.b - piece.a) * vp;
      else node.offset = node.z - piece.end();
      node.anchor = piece.at_end->anchor;
    } else {
      s = u;
      ds = 1;
      node.z = piece.point(s);
      if (piece.at_start) {
        node.offset = node.z - piece.start();
        node.anchor = piece.at_start->anchor;
      } else if (piece.at_end) {
        node.offset = node.z - piece.end();
        node.anchor = piece.at_end->anchor;
      }
    }
    Complex term = call(f, node) * piece.velocity(s) * (ds * g.w[i] * h);
    sum += term;
    if (mag) *mag += std::abs(term);
  }
  return sum;
}

template <class F>
Complex adapt(F& f, const PathPiece& piece, double u0, double u1, int ps, int pe, double tol,
              int depth, const QuadOptions& opt, double& err, bool declared_start,
              bool declared_end) {
  F fw = f;
  Complex whole = panel(fw, piece, u0, u1, ps, pe);
  double um = 0.5 * (u0 + u1);
  F fl = f;
  double mag = 0;
  Complex left = panel(fl, piece, u0, um, ps, pe, &mag);
  F fr = fl;
  Complex right = panel(fr, piece, um, u1, ps, pe, &mag);
  Complex both = left + right;
  double diff = std::abs(whole - both);
  // rounding-noise floor of the integrand values; near-singular kernels lose
  // digits, so the floor is relaxed on deep (small) panels
  bool noise = diff <= 1e-14 * mag * std::ldexp(1.0, 2 * std::max(0, depth - 12));
  if (diff <= tol || diff <= 1e-15 * std::abs(both) || noise || depth >= opt.max_depth) {
    if (depth >= opt.max_depth && diff > tol && diff > 1e-12 * std::abs(both) + 1e-12) {
      bool at_start = u0 == 0.0, at_end = u1 == 1.0;
      if ((at_start && !declared_start) || (at_end && !declared_end))
        fail(ErrorCode::SingularityUndeclared, "integrate: endpoint divergence without descriptor");
      fail(ErrorCode::NonConverged, "integrate: refinement depth limit reached");
    }
    f = fr;
    err += diff;
    return both;
  }
  double child = tol / std::sqrt(2.0);
  Complex a = adapt(f, piece, u0, um, ps, pe, child, depth + 1, opt, err, declared_start,
                    declared_end);
  Complex b = adapt(f, piece, um, u1, ps, pe, child, depth + 1, opt, err, declared_start,
                    declared_end);
  return a + b;
}

// Copy-assignable holder so that closures can serve as stateful integrands.
template <class F>
struct Stateful {
  std::optional<F> fn;
  explicit Stateful(const F& f) : fn(f) {}
  Stateful(const Stateful& o) : fn(*o.fn) {}
  Stateful& operator=(const Stateful& o) {
    fn.reset();
    fn.emplace(*o.fn);
    return *this;
  }
  Complex operator()(const Node& n) { return call(*fn, n); }
};

}  // namespace detail

// Integrates f(z) dz along the path. f is invoked in path order, so stateful
// callables (branch trackers) see a continuous sequence of points; the state
// is copied when tentative panel evaluations are discarded.
template <class F>
QuadResult integrate(const Path& path, const F& f0, const QuadOptions& opt = {}) {
  detail::Stateful<F> f(f0);
  QuadResult r;
  for (const PathPiece& piece0 : path) {
    std::vector<PathPiece> parts;
    if (piece0.at_start && piece0.at_end) {
      PathPiece first = piece0, second = piece0;
      if (piece0.kind == PathPiece::Kind::Line) {
        Complex m = 0.5 * (piece0.a + piece0.b);
        first.b = m;
        second.a = m;
      } else {
        double tm = 0.5 * (piece0.t0 + piece0.t1);
        first.t1 = tm;
        second.t0 = tm;
      }
      first.at_end.reset();
      second.at_start.reset();
      parts = {first, second};
    } else {
      parts = {piece0};
    }
    for (const PathPiece& piece : parts) {
      int ps = piece.at_start ? detail::substitution_power(*piece.at_start) : 1;
      int pe = piece.at_end ? detail::substitution_power(*piece.at_end) : 1;
      double err = 0;
      r.value += detail::adapt(f, piece, 0.0, 1.0, ps, pe, opt.tol, 0, opt, err,
                               piece.at_start.has_value(), piece.at_end.has_value());
      r.error += err;
    }
  }
  return r;
}

// Picks the sign of `candidate` closest to `reference` (square-root branches).
inline Complex nearest_sign(Complex candidate, Complex reference) {
  return std::abs(candidate - reference) <= std::abs(candidate + reference) ? candidate
                                                                             : -candidate;
}

// Picks candidate + 2 pi i k closest to `reference` (logarithm branches).
inline Complex nearest_log(Complex candidate, Complex reference) {
  const double two_pi = 6.283185307179586476925286766559;
  double k = std::round((reference.imag() - candidate.imag()) / two_pi);
  return candidate + Complex(0, two_pi * k);
}

}  // namespace kiss
