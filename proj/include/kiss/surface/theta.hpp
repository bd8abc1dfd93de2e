#pragma once

#include <cmath>
#include <complex>

#include "kiss/error.hpp"
#include "kiss/numerics/precision.hpp"

namespace kiss {

namespace detail {

inline double theta_imag(const Complex& z) { return z.imag(); }
inline double theta_imag(const BigComplex& z) { return imag(z).convert_to<double>(); }
inline Complex theta_exp(const Complex& z) { return std::exp(z); }
inline BigComplex theta_exp(const BigComplex& z) { return exp(z); }
template <class C>
C theta_pi_i() {
  if constexpr (std::is_same_v<C, Complex>) {
    return Complex(0, 3.14159265358979323846);
  } else {
    return make_big(BigReal(0), big_pi());
  }
}

}  // namespace detail

// Number of terms K such that exp(-pi Im(B) k^2 + 2 pi |Im u| k) < 10^-digits for |k| > K.
inline int theta_terms(double im_u, double im_B, int digits) {
  const double pi = 3.14159265358979323846;
  double target = digits * std::log(10.0);
  int k = 1;
  while (pi * im_B * k * k - 2 * pi * std::abs(im_u) * k < target + 2.0 && k < 100000) ++k;
  return k;
}

// theta(u) = sum_k exp(pi i B k^2 + 2 pi i u k), truncated at the tail bound.
template <class C>
C theta(const C& u, const C& B, int digits) {
  double imB = detail::theta_imag(B);
  if (!(imB > 0)) fail(ErrorCode::BadPeriod, "theta: Im B must be positive");
  int K = theta_terms(detail::theta_imag(u), imB, digits);
  const C pii = detail::theta_pi_i<C>();
  C sum = C(1);
  for (int k = 1; k <= K; ++k) {
    C kk = C(k);
    C quad = pii * B * kk * kk;
    C lin = C(2) * pii * u * kk;
    sum += detail::theta_exp(quad + lin) + detail::theta_exp(quad - lin);
  }
  return sum;
}

}  // namespace kiss
