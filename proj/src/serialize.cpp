#include "kiss/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "kiss/error.hpp"
#include "kiss/geometry/critical.hpp"

namespace kiss {

namespace {

double parse_double(const std::string& s, const char* what) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    fail(ErrorCode::InvalidArgument, std::string("malformed number for ") + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

Complex parse_pair(const std::string& text, const char* what) {
  std::vector<std::string> parts = split(text, ',');
  if (parts.empty() || parts.size() > 2) fail(ErrorCode::InvalidArgument, std::string("malformed ") + what);
  double re = parse_double(trim(parts[0]), what);
  double im = parts.size() == 2 ? parse_double(trim(parts[1]), what) : 0.0;
  return {re, im};
}

std::string format_pair(Complex z) { return to_decimal(z.real()) + "," + to_decimal(z.imag()); }

}  // namespace

AnalyticFactor FactorSpec::make() const {
  if (family == "const") return AnalyticFactor::constant(param);
  if (family == "exp") return AnalyticFactor::exponential(param);
  if (family == "pole") return AnalyticFactor::pole(param);
  fail(ErrorCode::InvalidArgument, "unknown h* family '" + family + "' (const, exp, pole)");
}

FactorSpec parse_factor(const std::string& text) {
  FactorSpec f;
  std::size_t colon = text.find(':');
  f.family = trim(text.substr(0, colon));
  if (f.family == "const") f.param = 1.0;
  else if (f.family == "exp") f.param = 0.0;
  else if (f.family != "pole") fail(ErrorCode::InvalidArgument, "unknown h* family '" + f.family + "'");
  if (colon != std::string::npos) f.param = parse_pair(text.substr(colon + 1), "h* parameter");
  else if (f.family == "pole") fail(ErrorCode::InvalidArgument, "pole family needs a location, e.g. pole:3");
  f.make();  // validates the parameter
  return f;
}

std::string format_factor(const FactorSpec& f) { return f.family + ":" + format_pair(f.param); }

WeightSpec RunConfig::weight(int degree) const {
  WeightSpec w;
  w.alpha = alpha;
  w.beta = beta;
  w.h_star = h_star.make();
  w.lambda = lambda;
  w.n = degree;
  return w;
}

Json number_json(double x) { return to_decimal(x); }
Json complex_json(Complex z) { return Json{{"re", to_decimal(z.real())}, {"im", to_decimal(z.imag())}}; }
Json big_json(const BigReal& x, unsigned bits) { return to_decimal(x, digits_for_bits(bits)); }
Json big_complex_json(const BigComplex& z, unsigned bits) {
  return Json{{"re", big_json(real(z), bits)}, {"im", big_json(imag(z), bits)}};
}

double json_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  return parse_double(j.get<std::string>(), "json field");
}

Complex json_complex(const Json& j) { return {json_double(j.at("re")), json_double(j.at("im"))}; }

std::string csv_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.24e", x);
  return buf;
}

Json to_json(const RunConfig& c) {
  Json z = Json::array();
  for (Complex p : c.z) z.push_back(complex_json(p));
  return Json{{"command", c.command},
              {"lambda", number_json(c.lambda)},
              {"alpha", number_json(c.alpha)},
              {"beta", number_json(c.beta)},
              {"h_star", Json{{"family", c.h_star.family}, {"param", complex_json(c.h_star.param)}}},
              {"n", c.n},
              {"n_min", c.n_min},
              {"n_max", c.n_max},
              {"z", z},
              {"bits", c.bits},
              {"tol", c.tol},
              {"eps", number_json(c.eps)},
              {"function", c.function},
              {"out", c.out},
              {"format", c.format}};
}

RunConfig run_config_from_json(const Json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.lambda = json_double(j.at("lambda"));
  c.alpha = json_double(j.at("alpha"));
  c.beta = json_double(j.at("beta"));
  c.h_star.family = j.at("h_star").at("family").get<std::string>();
  c.h_star.param = json_complex(j.at("h_star").at("param"));
  c.n = j.at("n").get<int>();
  c.n_min = j.at("n_min").get<int>();
  c.n_max = j.at("n_max").get<int>();
  for (const Json& p : j.at("z")) c.z.push_back(json_complex(p));
  c.bits = j.at("bits").get<unsigned>();
  c.tol = j.at("tol").get<std::string>();
  c.eps = json_double(j.at("eps"));
  c.function = j.at("function").get<std::string>();
  c.out = j.at("out").get<std::string>();
  c.format = j.at("format").get<std::string>();
  return c;
}

void check_config(const RunConfig& c) {
  auto bad = [](const std::string& m) { fail(ErrorCode::InvalidArgument, m); };
  static const char* commands[] = {"critical-lambda", "geometry", "exact", "validate", "quad", "theta-debug"};
  bool known = false;
  for (const char* k : commands) known = known || c.command == k;
  if (!known) bad("unknown command '" + c.command + "'");
  if (c.format != "json" && c.format != "csv") bad("format must be json or csv");
  if (c.bits != 0 && (c.bits < 64 || c.bits > 1u << 16)) bad("bits must lie in [64, 65536]");
  if (!c.tol.empty()) {
    double t = parse_double(c.tol, "tol");
    if (!(t > 0 && t < 1)) bad("tol must lie in (0, 1)");
  }
  if (c.command == "critical-lambda") return;
  if (!(c.lambda >= 0)) bad("lambda must be non-negative");
  if (!(c.alpha > -1) || !(c.beta > -1)) bad("alpha and beta must exceed -1");
  c.h_star.make();
  if (!(c.eps > 0 && c.eps < 1)) bad("eps must lie in (0, 1)");
  if (c.command == "exact" || c.command == "quad")
    if (c.n < 1) bad("n must be positive");
  if (c.command == "quad") builtin_function(c.function);
  if (c.command == "validate" || c.command == "theta-debug") {
    if (c.n_min < 1 || c.n_max < c.n_min) bad("need 1 <= n-min <= n-max");
  }
  if (c.command == "validate" && c.z.empty()) bad("validate needs at least one z");
  if (c.command == "theta-debug" && classify_regime(c.lambda) != Regime::Supercritical)
    fail(ErrorCode::WrongRegime, "theta-debug needs lambda > lambda_cr (supercritical)");
}

std::vector<Complex> parse_points(const std::string& text) {
  std::vector<Complex> out;
  for (const std::string& item : split(text, ';')) {
    std::string t = trim(item);
    if (t.empty()) fail(ErrorCode::InvalidArgument, "empty point in z list");
    out.push_back(parse_pair(t, "z point"));
  }
  return out;
}

std::string format_points(const std::vector<Complex>& z) {
  std::string s;
  for (std::size_t i = 0; i < z.size(); ++i) s += (i ? ";" : "") + format_pair(z[i]);
  return s;
}

Json to_json(const AsymptoticPrediction& p) {
  Json j{{"n", p.n},
         {"z", complex_json(p.z)},
         {"regime", to_string(p.regime)},
         {"log_pred_re", number_json(p.log_value.real())},
         {"log_pred_im", number_json(p.log_value.imag())},
         {"in_subsequence", p.in_subsequence},
         {"order", number_json(p.order)}};
  if (!p.warning.empty()) j["warning"] = p.warning;
  return j;
}

Json polynomial_archive(const ExactPolynomial& p, const std::vector<BigComplex>& zeros, double zres) {
  Json c = Json::array(), z = Json::array();
  for (const BigComplex& x : p.coeffs) c.push_back(big_complex_json(x, p.bits));
  c.push_back(Json{{"re", "1"}, {"im", "0"}});
  for (const BigComplex& x : zeros) z.push_back(big_complex_json(x, p.bits));
  return Json{{"n", p.n},
              {"lambda", number_json(p.lambda)},
              {"alpha", number_json(p.alpha)},
              {"beta", number_json(p.beta)},
              {"precision_bits", p.bits},
              {"coefficients", c},
              {"zeros", z},
              {"residual", number_json(p.residual)},
              {"zeros_residual", number_json(zres)},
              {"moment_error", number_json(p.moment_error)},
              {"pivot_ratio", number_json(p.pivot_ratio)}};
}

Json rule_json(const QuadratureRule& r) {
  Json x = Json::array(), w = Json::array();
  for (const BigComplex& v : r.nodes) x.push_back(big_complex_json(v, r.bits));
  for (const BigComplex& v : r.weights) w.push_back(big_complex_json(v, r.bits));
  return Json{{"n", r.n},
              {"omega", number_json(r.omega)},
              {"lambda", number_json(r.lambda)},
              {"precision_bits", r.bits},
              {"nodes", x},
              {"weights", w},
              {"exactness", number_json(r.exactness)},
              {"hull_radius", number_json(r.hull_radius)}};
}

Json surface_archive(const TwoCutAsymptotics& a, int n_min, int n_max, double eps) {
  Json rows = Json::array();
  for (int n = n_min; n <= n_max; ++n) {
    TwoCutDegree d = a.degree(n, eps);
    for (int k : {0, 1}) {
      const InversionResult& r = d.inv[k];
      Json row{{"n", n},
               {"k", k},
               {"sheet", r.point.sheet},
               {"infinite", r.point.infinite},
               {"z", complex_json(r.point.z)},
               {"j", r.j},
               {"m", r.m},
               {"residual", number_json(r.residual)}};
      if (k == 1) row["in_subsequence"] = d.in_subsequence;
      rows.push_back(row);
    }
  }
  const EllipticData& s = a.surface();
  return Json{{"B", complex_json(s.B())},
              {"normalization", complex_json(s.normalization())},
              {"c_h", complex_json(-a.szego().alpha_jump_exponent())},
              {"tau", number_json(a.geometry().tau())},
              {"z_nk", rows}};
}

std::string envelope(const RunConfig& c, const Json& result) {
  Json j{{"config", to_json(c)}, {"version", kLibraryVersion}, {"result", result}};
  return j.dump(2) + "\n";
}

}  // namespace kiss
