#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace kiss {

using Complex = std::complex<double>;

using BigReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;
using BigComplex = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<boost::multiprecision::mpfr_float_backend<0>>,
    boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultBits = 256;

unsigned digits_for_bits(unsigned bits);
unsigned bits_for_digits(unsigned digits);

// Current default precision of newly constructed BigReal/BigComplex values.
unsigned working_bits();

// Sets the default precision for the lifetime of the guard and restores it afterwards.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_digits_;
};

BigReal big_pi();
BigComplex big_i();

inline double to_double(const BigReal& x) { return x.convert_to<double>(); }
Complex to_complex(const BigComplex& z);
BigComplex to_big(Complex z);
BigComplex make_big(const BigReal& re, const BigReal& im);

// Scientific decimal string with the given number of significant digits.
std::string to_decimal(const BigReal& x, unsigned digits);
std::string to_decimal(double x);
BigReal parse_big(const std::string& s);

}  // namespace kiss
