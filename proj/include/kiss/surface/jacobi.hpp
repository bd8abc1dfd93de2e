#pragma once

#include <vector>

#include "kiss/surface/elliptic.hpp"

namespace kiss {

struct InversionResult {
  SurfacePoint point;
  long j = 0, m = 0;
  Complex abel_value{};  // A~(z_{n,k})
  Complex target{};      // A~(p^{(k)}) + c_h + n (1/2 + B tau)
  double residual = 0;   // |abel_value - target - j - m B|
  int iterations = 0;
  int seed = -1;
};

struct InversionOptions {
  double tol = 1e-12;
  int max_iter = 80;
  int max_seeds = 8;
};

// Reduction of u into the period cell: u = j + m B + r with m = round(Im u / Im B),
// j = round(Re(u - m B)).
void reduce_lattice(Complex u, Complex B, long& j, long& m, Complex& r);

// Solves A(P) = T modulo Z + B Z by Newton iteration on the surface, restarted
// from a fixed table of seed points on both sheets.
class JacobiSolver {
 public:
  explicit JacobiSolver(const EllipticData& data);

  const EllipticData& data() const { return *data_; }
  // The points over p = i Im z* / (1 - Re z*), p^{(0)} being the zero of B/A on sheet 0.
  SurfacePoint p_lift(int k) const;
  Complex target(int n, int k, Complex c_h) const;
  InversionResult solve(int n, int k, Complex c_h, const InversionOptions& opt = {}) const;
  // Solution from the given seed only (for multistart agreement checks).
  InversionResult solve_target(Complex T, int seed, const InversionOptions& opt = {}) const;
  int seed_count() const { return static_cast<int>(seeds_.size()); }

 private:
  const EllipticData* data_;
  int p_sheet0_ = 0;
  std::vector<SurfacePoint> seeds_;
  std::vector<Complex> seed_values_;
  bool newton(Complex T, SurfacePoint& P, const InversionOptions& opt, int& iters) const;
};

// Theta_{n,k}(P) = exp(-2 pi i (m + tau n) A(P))
//   theta(A(P) - A~(z_{n,k}) - (B+1)/2) / theta(A(P) - A~(p^{(k)}) - (B+1)/2).
class ThetaRatio {
 public:
  ThetaRatio(const EllipticData& data, const InversionResult& inv, Complex abel_p, int n);
  Complex at_abel(Complex a) const;
  Complex operator()(const SurfacePoint& P, Complex approach = 0) const;

 private:
  const EllipticData* data_;
  Complex zero_shift_{}, pole_shift_{};
  Complex slope_{};
};

// n belongs to N(lambda, eps) iff z_{n,1} is not on sheet 0 with |z| >= 1/eps.
bool in_subsequence(const InversionResult& inv_n1, double eps);

}  // namespace kiss
