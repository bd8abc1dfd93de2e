#pragma once

#include <chrono>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "kiss/numerics/planar_arc.hpp"

namespace kiss::testing {

// Point at fraction f of the arc length and the unit left normal there.
inline std::pair<Complex, Complex> at_fraction(const PlanarArc& a, double f) {
  double t = f * a.length(), acc = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    double d = std::abs(a[i + 1] - a[i]);
    if (acc + d >= t) {
      Complex dir = (a[i + 1] - a[i]) / d;
      return {a[i] + (t - acc) * dir, Complex(0, 1) * dir};
    }
    acc += d;
  }
  return {a.back(), Complex(0, 1) * a.tangent(a.size() - 1)};
}

// Random points in the box [-r, r]^2 at distance >= clearance from every arc.
inline std::vector<Complex> random_points(int count, double r, const std::vector<const PlanarArc*>& arcs,
                                          double clearance, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-r, r);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    Complex z(u(gen), u(gen));
    bool ok = true;
    for (const PlanarArc* a : arcs) ok = ok && a->distance_to(z) >= clearance;
    if (ok) out.push_back(z);
  }
  return out;
}

// Remainder of the imaginary part modulo 2 pi.
inline Complex reduce_log(Complex l) { return {l.real(), std::remainder(l.imag(), 2 * M_PI)}; }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

}  // namespace kiss::testing
