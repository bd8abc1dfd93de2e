#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kiss/asymptotics/asymptotics.hpp"
#include "kiss/exact/oracle.hpp"
#include "kiss/quadrature/rule.hpp"

namespace kiss {

inline constexpr const char* kLibraryVersion = "0.1.0";

using Json = nlohmann::json;

// Named h* family as it crosses the process boundary: const c, exp a, pole b.
struct FactorSpec {
  std::string family = "const";
  Complex param{1, 0};

  AnalyticFactor make() const;
  bool operator==(const FactorSpec&) const = default;
};
FactorSpec parse_factor(const std::string& text);  // "const", "exp:0.3", "pole:3,0.5"
std::string format_factor(const FactorSpec& f);

struct RunConfig {
  std::string command;
  double lambda = 0, alpha = 0, beta = 0;
  FactorSpec h_star;
  int n = 0, n_min = 0, n_max = 0;
  std::vector<Complex> z;
  unsigned bits = 0;      // 0: per-command default
  std::string tol;        // decimal string, kept exact for extended-precision use
  double eps = 0.05;
  std::string function;
  std::string out;
  std::string format = "json";

  WeightSpec weight(int degree) const;
  bool operator==(const RunConfig&) const = default;
};

Json to_json(const RunConfig& c);
RunConfig run_config_from_json(const Json& j);
// Rejects combinations that cannot run; throws Error(InvalidArgument or WrongRegime).
void check_config(const RunConfig& c);

// "2", "0,2", "-1.5,0.5" separated by ';'.
std::vector<Complex> parse_points(const std::string& text);
std::string format_points(const std::vector<Complex>& z);

Json number_json(double x);
Json complex_json(Complex z);
Json big_json(const BigReal& x, unsigned bits);
Json big_complex_json(const BigComplex& z, unsigned bits);
double json_double(const Json& j);
Complex json_complex(const Json& j);

// 25 significant digits.
std::string csv_number(double x);

Json to_json(const AsymptoticPrediction& p);
Json polynomial_archive(const ExactPolynomial& p, const std::vector<BigComplex>& zeros, double zeros_residual);
Json rule_json(const QuadratureRule& r);
// {B, c_h, tau, normalization, z_nk: [{n, k, sheet, z, j, m, residual, in_subsequence}]}.
Json surface_archive(const TwoCutAsymptotics& a, int n_min, int n_max, double eps);

// index, Re z, Im z, Re density, Im density.
template <class Density>
std::string arc_csv(const PlanarArc& arc, Density&& density) {
  std::string s = "index,re,im,density_re,density_im\n";
  for (std::size_t i = 0; i < arc.size(); ++i) {
    Complex d = density(i);
    s += std::to_string(i) + "," + csv_number(arc[i].real()) + "," + csv_number(arc[i].imag()) + "," +
         csv_number(d.real()) + "," + csv_number(d.imag()) + "\n";
  }
  return s;
}

// {"config": ..., "result": ..., "version": ...} pretty-printed with sorted keys.
std::string envelope(const RunConfig& c, const Json& result);

}  // namespace kiss
