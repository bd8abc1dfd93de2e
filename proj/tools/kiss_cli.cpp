// Batch front end: critical-lambda, geometry, exact, validate, quad, theta-debug.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "kiss/asymptotics/asymptotics.hpp"
#include "kiss/error.hpp"
#include "kiss/exact/oracle.hpp"
#include "kiss/geometry/critical.hpp"
#include "kiss/geometry/one_cut.hpp"
#include "kiss/geometry/two_cut.hpp"
#include "kiss/quadrature/rule.hpp"
#include "kiss/serialize.hpp"

namespace {

using namespace kiss;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned env_bits() {
  const char* env = std::getenv("KISS_PRECISION_BITS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 64 || v > 65536) throw UsageError("KISS_PRECISION_BITS must be an integer in [64, 65536]");
  return static_cast<unsigned>(v);
}

void emit(const RunConfig& c, const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
  (void)c;
}

std::string csv_header(const RunConfig& c) {
  return "# config: " + to_json(c).dump() + "\n# version: " + std::string(kLibraryVersion) + "\n";
}

std::string big_csv(const BigReal& x) { return to_decimal(x, 25); }

Json opt_number(const std::optional<double>& v) { return v ? number_json(*v) : Json(nullptr); }

// ---------------------------------------------------------------- commands

void run_critical(RunConfig& c) {
  if (c.tol.empty()) c.tol = "1e-12";
  if (c.bits == 0) c.bits = kDefaultBits;
  ScopedPrecision sp(c.bits);
  BigReal tol = parse_big(c.tol);
  BigReal lam = solve_lambda_critical<BigReal>(tol);
  BigReal res = abs(lambda_critical_residual<BigReal>(lam));
  // digits beyond the tolerance are not stable
  double want = std::ceil(-std::log10(std::stod(c.tol))) + 2;
  unsigned digits = std::min<unsigned>(digits_for_bits(c.bits), static_cast<unsigned>(std::max(want, 3.0)));
  if (c.format == "csv") {
    emit(c, c.out, csv_header(c) + "key,value\nlambda_cr," + to_decimal(lam, digits) + "\nresidual," +
                       to_decimal(res, 6) + "\n");
    return;
  }
  Json r{{"lambda_cr", to_decimal(lam, digits)},
         {"residual", to_decimal(res, 6)},
         {"precision_bits", c.bits},
         {"digits", digits}};
  emit(c, c.out, envelope(c, r));
}

void run_geometry(RunConfig& c) {
  namespace fs = std::filesystem;
  if (c.out.empty()) throw UsageError("geometry writes several files; pass --out DIR");
  fs::create_directories(c.out);
  if (c.tol.empty()) c.tol = "1e-13";
  double tol = std::stod(c.tol);
  Regime regime = classify_regime(c.lambda);
  Json summary{{"lambda", number_json(c.lambda)}, {"regime", to_string(regime)}};
  Json files = Json::array();
  auto write_arc = [&](const std::string& name, const PlanarArc& arc, auto&& density) {
    auto safe = [&](std::size_t i) {
      try {
        return density(i);
      } catch (const Error&) {
        return Complex(NAN, NAN);
      }
    };
    emit(c, (fs::path(c.out) / name).string(), csv_header(c) + arc_csv(arc, safe));
    files.push_back(Json{{"file", name}, {"samples", arc.size()}, {"length", number_json(arc.length())}});
  };
  if (regime != Regime::Supercritical) {
    double lam = regime == Regime::Critical ? lambda_critical() : c.lambda;
    OneCutGeometry g = OneCutGeometry::build(lam);
    write_arc("gamma.csv", g.arc(), [&](std::size_t i) { return g.density(g.arc()[i]); });
    summary["x_star"] = nullptr;
    summary["z_star"] = nullptr;
    summary["tau"] = nullptr;
    summary["ell_star"] = complex_json(g.ell());
    summary["apex"] = complex_json(g.apex());
    summary["total_mass"] = complex_json(g.total_mass(tol));
  } else {
    TwoCutGeometry g = TwoCutGeometry::build(c.lambda);
    auto arc_density = [&](const PlanarArc& a) {
      return [&g, &a](std::size_t i) { return g.density(a[i], a.left_normal(i)); };
    };
    write_arc("gamma1.csv", g.gamma1(), arc_density(g.gamma1()));
    write_arc("gamma2.csv", g.gamma2(), arc_density(g.gamma2()));
    write_arc("hat_gamma.csv", g.hat_gamma(), [](std::size_t) { return Complex(0); });
    Complex m1 = g.arc_mass(1, tol), m2 = g.arc_mass(2, tol);
    summary["x_star"] = number_json(g.x_star());
    summary["z_star"] = complex_json(g.z_star());
    summary["tau"] = number_json(g.tau());
    summary["tau_imag_residual"] = number_json(g.tau_raw(tol).imag());
    summary["ell_star"] = complex_json(g.ell_star());
    summary["arc_mass"] = Json::array({complex_json(m1), complex_json(m2)});
    summary["total_mass"] = complex_json(m1 + m2);
  }
  summary["arcs"] = files;
  emit(c, (fs::path(c.out) / "summary.json").string(), envelope(c, summary));
}

void run_exact(RunConfig& c, bool escalate) {
  if (c.bits == 0) c.bits = oracle_bits(c.n);
  WeightSpec w = c.weight(c.n);
  OracleOptions opt;
  opt.bits = c.bits;
  opt.escalate = escalate;
  ExactPolynomial p = solve_orthogonality(w, opt);
  std::vector<BigComplex> z = polynomial_zeros(p);
  double zres = zeros_residual(p, z);
  if (c.format == "csv") {
    std::string s = csv_header(c) + "kind,index,re,im\n";
    ScopedPrecision sp(p.bits);
    for (int j = 0; j < p.n; ++j)
      s += "coefficient," + std::to_string(j) + "," + big_csv(real(p.coeffs[j])) + "," + big_csv(imag(p.coeffs[j])) + "\n";
    for (int j = 0; j < p.n; ++j)
      s += "zero," + std::to_string(j) + "," + big_csv(real(z[j])) + "," + big_csv(imag(z[j])) + "\n";
    emit(c, c.out, s);
    return;
  }
  ScopedPrecision sp(p.bits);
  emit(c, c.out, envelope(c, polynomial_archive(p, z, zres)));
}

void run_validate(RunConfig& c) {
  if (c.bits == 0) c.bits = oracle_bits(c.n_max);
  PredictOptions popt;
  popt.eps = c.eps;
  popt.allow_outside_subsequence = true;
  if (!c.tol.empty()) popt.tol = std::max(std::stod(c.tol), 1e-15);
  Predictor pred(c.weight(1), popt);
  Json rows = Json::array();
  std::vector<std::vector<std::pair<int, double>>> bracket(c.z.size()), rel(c.z.size());
  std::vector<std::optional<double>> last_rel(c.z.size());
  for (int n = c.n_min; n <= c.n_max; ++n) {
    std::optional<ExactPolynomial> p;
    std::string skip;
    try {
      p = solve_orthogonality(c.weight(n), OracleOptions{c.bits, false, 0});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularSystem) throw;
      skip = e.what();
    }
    for (std::size_t i = 0; i < c.z.size(); ++i) {
      Json row{{"n", n}, {"z", complex_json(c.z[i])}, {"regime", to_string(pred.regime())}};
      if (!p) {
        row["status"] = "SKIPPED";
        row["reason"] = skip;
        rows.push_back(row);
        continue;
      }
      AsymptoticPrediction a = pred.predict(c.z[i], n);
      Complex lo = p->log_abs_arg(c.z[i]);
      Complex ratio = std::exp(lo - a.log_value);
      double r = std::abs(ratio - 1.0);
      double b = r * std::exp(a.log_factor.real());
      row["status"] = "OK";
      row["in_subsequence"] = a.in_subsequence;
      row["log_oracle_re"] = number_json(lo.real());
      row["log_oracle_im"] = number_json(lo.imag());
      row["log_pred_re"] = number_json(a.log_value.real());
      row["log_pred_im"] = number_json(std::remainder(a.log_value.imag(), 2 * M_PI));
      row["rel_error"] = number_json(r);
      row["bracket_error"] = number_json(b);
      if (!a.warning.empty()) row["warning"] = a.warning;
      rows.push_back(row);
      if (a.in_subsequence) {
        bracket[i].push_back({n, b});
        rel[i].push_back({n, r});
        last_rel[i] = r;
      }
    }
  }
  Json fits = Json::array();
  for (std::size_t i = 0; i < c.z.size(); ++i)
    fits.push_back(Json{{"z", complex_json(c.z[i])},
                        {"points", bracket[i].size()},
                        {"slope_bracket", opt_number(loglog_slope(bracket[i]))},
                        {"slope_relative", opt_number(loglog_slope(rel[i]))},
                        {"last_rel_error", opt_number(last_rel[i])}});
  if (c.format == "csv") {
    std::string s = csv_header(c) +
                    "n,z_re,z_im,status,in_subsequence,rel_error,bracket_error,log_oracle_re,log_oracle_im,"
                    "log_pred_re,log_pred_im\n";
    for (const Json& r : rows) {
      Complex z = json_complex(r["z"]);
      s += std::to_string(r["n"].get<int>()) + "," + csv_number(z.real()) + "," + csv_number(z.imag()) + "," +
           r["status"].get<std::string>();
      if (r["status"] == "OK") {
        s += std::string(",") + (r["in_subsequence"].get<bool>() ? "1" : "0");
        for (const char* k : {"rel_error", "bracket_error", "log_oracle_re", "log_oracle_im", "log_pred_re", "log_pred_im"})
          s += "," + csv_number(json_double(r[k]));
      } else {
        s += ",,,,,,,";
      }
      s += "\n";
    }
    for (const Json& f : fits)
      s += "# slope z=" + f["z"]["re"].get<std::string>() + "," + f["z"]["im"].get<std::string>() + " bracket=" +
           (f["slope_bracket"].is_null() ? "null" : f["slope_bracket"].get<std::string>()) + "\n";
    emit(c, c.out, s);
    return;
  }
  emit(c, c.out, envelope(c, Json{{"rows", rows}, {"fits", fits}}));
}

void run_quad(RunConfig& c) {
  if (c.bits == 0) c.bits = oracle_bits(c.n);
  WeightSpec w = c.weight(c.n);
  RuleOptions ro;
  ro.bits = c.bits;
  QuadratureRule rule = build_rule(w, ro);
  BigFunction f = builtin_function(c.function);
  ScopedPrecision sp(c.bits);
  BigComplex q = integrate_oscillatory(f, rule);
  BigComplex ref = reference_integral(f, w, c.bits);
  BigReal err = abs(q - ref);
  BigReal rel = abs(ref) > 0 ? BigReal(err / abs(ref)) : err;
  if (c.format == "csv") {
    std::string s = csv_header(c) + "# abs_error " + to_decimal(err, 6) + " rel_error " + to_decimal(rel, 6) +
                    "\nindex,node_re,node_im,weight_re,weight_im\n";
    for (int j = 0; j < rule.n; ++j)
      s += std::to_string(j) + "," + big_csv(real(rule.nodes[j])) + "," + big_csv(imag(rule.nodes[j])) + "," +
           big_csv(real(rule.weights[j])) + "," + big_csv(imag(rule.weights[j])) + "\n";
    emit(c, c.out, s);
    return;
  }
  Json r{{"function", c.function},
         {"value", big_complex_json(q, c.bits)},
         {"reference", big_complex_json(ref, c.bits)},
         {"abs_error", to_decimal(err, 6)},
         {"rel_error", to_decimal(rel, 6)},
         {"rule", rule_json(rule)}};
  emit(c, c.out, envelope(c, r));
}

void run_theta_debug(RunConfig& c) {
  PredictOptions popt;
  popt.eps = c.eps;
  Predictor pred(c.weight(1), popt);
  Json r = surface_archive(*pred.two_cut(), c.n_min, c.n_max, c.eps);
  r["lambda"] = number_json(c.lambda);
  r["log_szego_infinity"] = complex_json(pred.two_cut()->log_szego_infinity());
  if (c.format == "csv") {
    std::string s = csv_header(c) + "n,k,sheet,infinite,z_re,z_im,j,m,residual\n";
    for (const Json& row : r["z_nk"]) {
      Complex z = json_complex(row["z"]);
      s += std::to_string(row["n"].get<int>()) + "," + std::to_string(row["k"].get<int>()) + "," +
           std::to_string(row["sheet"].get<int>()) + "," + (row["infinite"].get<bool>() ? "1" : "0") + "," +
           csv_number(z.real()) + "," + csv_number(z.imag()) + "," + std::to_string(row["j"].get<long>()) + "," +
           std::to_string(row["m"].get<long>()) + "," + csv_number(json_double(row["residual"])) + "\n";
    }
    emit(c, c.out, s);
    return;
  }
  emit(c, c.out, envelope(c, r));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kissing polynomials: geometry, oracle solves, asymptotic validation and quadrature"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  std::optional<unsigned> bits;
  std::string tol, hstar = "const", zlist;
  bool escalate = false;
  std::optional<int> n, n_min, n_max;
  app.add_option("--bits", bits, "working precision in bits (default: KISS_PRECISION_BITS or per command)");
  app.add_option("--tol", tol, "tolerance, decimal string");
  app.add_option("--out", c.out, "output file (directory for geometry); stdout when omitted");
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto weight_opts = [&](CLI::App* s) {
    s->add_option("--lambda", c.lambda, "lambda = omega / n")->required();
    s->add_option("--alpha", c.alpha, "exponent at x = 1");
    s->add_option("--beta", c.beta, "exponent at x = -1");
    s->add_option("--hstar", hstar, "analytic factor: const[:c], exp:a or pole:b (complex as re,im)");
  };

  CLI::App* crit = app.add_subcommand("critical-lambda", "solve for lambda_cr");
  CLI::App* geo = app.add_subcommand("geometry", "trace the support and write arcs, densities and a summary");
  geo->add_option("--lambda", c.lambda, "lambda = omega / n")->required();
  CLI::App* ex = app.add_subcommand("exact", "oracle polynomial from the moment system");
  weight_opts(ex);
  ex->add_option("-n,--n", n, "degree")->required();
  ex->add_flag("--escalate", escalate, "re-solve at twice the precision and keep the better result");
  CLI::App* val = app.add_subcommand("validate", "compare oracle and asymptotic prediction over a degree range");
  weight_opts(val);
  val->add_option("--n-min", n_min, "first degree")->required();
  val->add_option("--n-max", n_max, "last degree")->required();
  val->add_option("--z", zlist, "evaluation points 're,im;re,im;...'")->required();
  val->add_option("--eps", c.eps, "subsequence parameter");
  CLI::App* quad = app.add_subcommand("quad", "complex Gaussian rule applied to a built-in function");
  weight_opts(quad);
  quad->add_option("-n,--n", n, "number of nodes")->required();
  quad->add_option("--function", c.function, "1, x2, exp, cos or pole3")->required();
  CLI::App* theta = app.add_subcommand("theta-debug", "surface data and divisor points z_{n,k}");
  weight_opts(theta);
  theta->add_option("--n-min", n_min, "first degree")->required();
  theta->add_option("--n-max", n_max, "last degree")->required();
  theta->add_option("--eps", c.eps, "subsequence parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    c.tol = tol;
    c.bits = bits ? *bits : env_bits();
    c.h_star = parse_factor(hstar);
    if (n) c.n = *n;
    if (n_min) c.n_min = *n_min;
    if (n_max) c.n_max = *n_max;
    if (!zlist.empty()) c.z = parse_points(zlist);
    check_config(c);
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\nrun with --help for the options of each command\n";
    return 1;
  }

  try {
    if (c.command == "critical-lambda") run_critical(c);
    else if (c.command == "geometry") run_geometry(c);
    else if (c.command == "exact") run_exact(c, escalate);
    else if (c.command == "validate") run_validate(c);
    else if (c.command == "quad") run_quad(c);
    else run_theta_debug(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  (void)crit;
  return 0;
}
