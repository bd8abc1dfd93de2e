#pragma once

#include <functional>
#include <string>

#include "kiss/numerics/precision.hpp"

namespace kiss {

// Analytic, non-vanishing factor h* of the weight. The built-in families
// (constant c, exp(a z), 1/(z - b)) serialize by name and parameter; custom
// handles carry both a binary64 and an extended-precision evaluator.
class AnalyticFactor {
 public:
  enum class Family { Constant, Exponential, Pole, Custom };

  static AnalyticFactor constant(Complex c);
  static AnalyticFactor exponential(Complex a);
  static AnalyticFactor pole(Complex b);
  static AnalyticFactor custom(std::string name, std::function<Complex(Complex)> f,
                               std::function<BigComplex(const BigComplex&)> f_big);

  Family family() const { return family_; }
  Complex parameter() const { return param_; }
  const std::string& name() const { return name_; }

  Complex operator()(Complex z) const;
  BigComplex operator()(const BigComplex& z) const;
  // A logarithm of h*(z); for the exponential family this is exactly a z.
  Complex log(Complex z) const;

 private:
  Family family_ = Family::Constant;
  Complex param_{1, 0};
  std::string name_ = "constant";
  std::function<Complex(Complex)> f_;
  std::function<BigComplex(const BigComplex&)> f_big_;
};

struct WeightSpec {
  double alpha = 0;
  double beta = 0;
  AnalyticFactor h_star = AnalyticFactor::constant(1.0);
  double lambda = 0;
  int n = 1;

  double omega() const { return lambda * n; }
  // h(z) = h*(z) (1-z)^alpha (1+z)^beta, principal powers.
  Complex h(Complex z) const;
  // log h*(z) + alpha Log(1-z) + beta Log(1+z), principal logarithms.
  Complex log_h(Complex z) const;
  void validate() const;
};

}  // namespace kiss
