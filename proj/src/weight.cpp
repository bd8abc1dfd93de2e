#include "kiss/geometry/weight.hpp"

#include <cmath>

#include "kiss/error.hpp"

namespace kiss {

AnalyticFactor AnalyticFactor::constant(Complex c) {
  if (c == Complex(0)) fail(ErrorCode::InvalidArgument, "h* must not vanish");
  AnalyticFactor f;
  f.family_ = Family::Constant;
  f.param_ = c;
  f.name_ = "constant";
  return f;
}

AnalyticFactor AnalyticFactor::exponential(Complex a) {
  AnalyticFactor f;
  f.family_ = Family::Exponential;
  f.param_ = a;
  f.name_ = "exp";
  return f;
}

AnalyticFactor AnalyticFactor::pole(Complex b) {
  if (std::abs(b.imag()) < 1e-300 && std::abs(b.real()) <= 1.0)
    fail(ErrorCode::InvalidArgument, "pole of h* must lie off [-1,1]");
  AnalyticFactor f;
  f.family_ = Family::Pole;
  f.param_ = b;
  f.name_ = "pole";
  return f;
}

AnalyticFactor AnalyticFactor::custom(std::string name, std::function<Complex(Complex)> fn,
                                      std::function<BigComplex(const BigComplex&)> fn_big) {
  AnalyticFactor f;
  f.family_ = Family::Custom;
  f.name_ = std::move(name);
  f.f_ = std::move(fn);
  f.f_big_ = std::move(fn_big);
  return f;
}

Complex AnalyticFactor::operator()(Complex z) const {
  switch (family_) {
    case Family::Constant: return param_;
    case Family::Exponential: return std::exp(param_ * z);
    case Family::Pole: return 1.0 / (z - param_);
    case Family::Custom: return f_(z);
  }
  return 0;
}

BigComplex AnalyticFactor::operator()(const BigComplex& z) const {
  switch (family_) {
    case Family::Constant: return to_big(param_);
    case Family::Exponential: return exp(to_big(param_) * z);
    case Family::Pole: return BigComplex(1) / (z - to_big(param_));
    case Family::Custom:
      if (!f_big_) fail(ErrorCode::InvalidArgument, "custom h* lacks an extended-precision evaluator");
      return f_big_(z);
  }
  return BigComplex(0);
}

Complex AnalyticFactor::log(Complex z) const {
  switch (family_) {
    case Family::Constant: return std::log(param_);
    case Family::Exponential: return param_ * z;
    case Family::Pole: return -std::log(z - param_);
    case Family::Custom: return std::log(f_(z));
  }
  return 0;
}

Complex WeightSpec::h(Complex z) const {
  return h_star(z) * std::pow(1.0 - z, alpha) * std::pow(1.0 + z, beta);
}

Complex WeightSpec::log_h(Complex z) const {
  Complex v = h_star.log(z);
  if (alpha != 0) v += alpha * std::log(1.0 - z);
  if (beta != 0) v += beta * std::log(1.0 + z);
  return v;
}

void WeightSpec::validate() const {
  if (!(alpha > -1) || !(beta > -1)) fail(ErrorCode::InvalidArgument, "alpha and beta must exceed -1");
  if (!(lambda >= 0)) fail(ErrorCode::InvalidArgument, "lambda must be non-negative");
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be positive");
}

}  // namespace kiss
