#include "kiss/numerics/precision.hpp"

#include <cmath>
#include <cstdio>
#include <ios>

namespace kiss {

unsigned digits_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

unsigned bits_for_digits(unsigned digits) {
  return static_cast<unsigned>(std::ceil(digits / 0.30102999566398120));
}

unsigned working_bits() { return bits_for_digits(BigReal::default_precision()); }

ScopedPrecision::ScopedPrecision(unsigned bits) : saved_digits_(BigReal::default_precision()) {
  unsigned d = digits_for_bits(bits);
  BigReal::default_precision(d);
}

ScopedPrecision::~ScopedPrecision() {
  BigReal::default_precision(saved_digits_);
}

BigReal big_pi() { return boost::multiprecision::acos(BigReal(-1)); }

BigComplex big_i() { return BigComplex(BigReal(0), BigReal(1)); }

Complex to_complex(const BigComplex& z) {
  return {real(z).convert_to<double>(), imag(z).convert_to<double>()};
}

BigComplex to_big(Complex z) { return BigComplex(BigReal(z.real()), BigReal(z.imag())); }

BigComplex make_big(const BigReal& re, const BigReal& im) { return BigComplex(re, im); }

std::string to_decimal(const BigReal& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

std::string to_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17e", x);
  return buf;
}

BigReal parse_big(const std::string& s) { return BigReal(s); }

}  // namespace kiss
