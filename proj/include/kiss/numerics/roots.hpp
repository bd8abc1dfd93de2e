#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "kiss/error.hpp"

namespace kiss {

// Bracketed root of a continuous real function: Illinois-modified regula falsi
// with a bisection safeguard. Returns x with |F(x)| <= tol.
template <class Real, class F>
Real find_root(F&& f, Real a, Real b, const Real& tol, int max_iter = 2000) {
  using std::abs;
  Real fa = f(a), fb = f(b);
  if (abs(fa) <= tol) return a;
  if (abs(fb) <= tol) return b;
  if ((fa > 0) == (fb > 0)) fail(ErrorCode::NoSignChange, "find_root: F(a) and F(b) have equal sign");
  int side = 0;
  for (int it = 0; it < max_iter; ++it) {
    Real width = b - a;
    Real x = (a * fb - b * fa) / (fb - fa);
    bool bisect = !(x > a && x < b) || (it % 4 == 3);
    if (bisect) x = a + width / 2;
    Real fx = f(x);
    if (abs(fx) <= tol) return x;
    if ((fx > 0) == (fb > 0)) {
      b = x;
      fb = fx;
      if (side == -1 && !bisect) fa /= 2;
      side = -1;
    } else {
      a = x;
      fa = fx;
      if (side == 1 && !bisect) fb /= 2;
      side = 1;
    }
    if (b - a <= std::numeric_limits<Real>::epsilon() * 4 * (abs(a) + abs(b))) {
      Real m = a + (b - a) / 2;
      if (abs(f(m)) <= tol) return m;
      fail(ErrorCode::NonConverged, "find_root: bracket collapsed before |F| <= tol");
    }
  }
  fail(ErrorCode::NonConverged, "find_root: iteration limit");
}

}  // namespace kiss
