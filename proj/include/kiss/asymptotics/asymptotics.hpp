#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kiss/geometry/critical.hpp"
#include "kiss/geometry/one_cut.hpp"
#include "kiss/geometry/two_cut.hpp"
#include "kiss/surface/jacobi.hpp"
#include "kiss/szego/szego.hpp"

namespace kiss {

struct Parametrix2x2 {
  Complex a11{}, a12{}, a21{}, a22{};
  Complex z{};
  Complex det() const { return a11 * a22 - a12 * a21; }
};

Parametrix2x2 operator*(const Parametrix2x2& x, const Parametrix2x2& y);
double max_abs_diff(const Parametrix2x2& x, const Parametrix2x2& y);

struct AsymptoticPrediction {
  Regime regime = Regime::Subcritical;
  int n = 0;
  Complex z{};
  Complex log_value{};             // log of the predicted p_n(z), imaginary part mod 2 pi
  Complex log_factor{};            // log_value - n g(z): the O(1) factor multiplying e^{n g}
  std::optional<Complex> value;    // empty when exp(log_value) leaves the binary64 range
  double order = 1.0;              // claimed error O(n^{-order})
  bool in_subsequence = true;
  std::string warning;
};

// One-cut leading term (phi/2)^n exp(-i n lambda / (2 phi)) S_h(inf) / S_h(z) and the
// parametrix N = S(inf)^{s3} [[1, 1/w], [1/(2 phi), phi/(2 w)]] S(z)^{-s3}.
class OneCutAsymptotics {
 public:
  OneCutAsymptotics(std::shared_ptr<const OneCutGeometry> geometry, WeightSpec weight, double tol = 1e-13);

  const OneCutGeometry& geometry() const { return *geo_; }
  const SzegoOneCut& szego() const { return szego_; }

  Complex log_leading(Complex z, int n) const;
  Parametrix2x2 parametrix(Complex z, Complex approach = 0) const;

 private:
  std::shared_ptr<const OneCutGeometry> geo_;
  SzegoOneCut szego_;
};

// Data attached to one degree n in the two-cut regime: the divisor points
// z_{n,0}, z_{n,1} and the theta quotients Theta_{n,0}, Theta_{n,1}.
struct TwoCutDegree {
  int n = 0;
  InversionResult inv[2];
  std::optional<ThetaRatio> theta[2];
  bool in_subsequence = true;
  Complex m11_inf{}, m22_inf{};  // diagonal of M(infinity)
};

class TwoCutAsymptotics {
 public:
  TwoCutAsymptotics(std::shared_ptr<const TwoCutGeometry> geometry, WeightSpec weight, double tol = 1e-13);

  const TwoCutGeometry& geometry() const { return *geo_; }
  const EllipticData& surface() const { return *data_; }
  const SzegoTwoCut& szego() const { return *szego_; }
  const JacobiSolver& jacobi() const { return *jacobi_; }
  Complex log_szego_infinity() const { return log_s_inf_; }

  // Jacobi inversion for k = 0, 1 and M(infinity). With `m_shift`, z_{n,k} is
  // represented by the lattice translate A + m_shift B (for invariance checks).
  TwoCutDegree degree(int n, double eps = 0.05, long m_shift = 0, long j_shift = 0) const;

  // M_{n,k}(z^{(sheet)}) without the Szego factor.
  Complex m_entry(const TwoCutDegree& d, int k, int sheet, Complex z, Complex approach = 0) const;
  // M(z) of the global parametrix, including S~^{s3}(z^{(0)}).
  Parametrix2x2 m_matrix(const TwoCutDegree& d, Complex z, Complex approach = 0) const;
  // N = M(inf)^{-1} M(z).
  Parametrix2x2 parametrix(const TwoCutDegree& d, Complex z, Complex approach = 0) const;
  // log of e^{n g(z)} A(z) Theta_{n,1}(z^{(0)}) S~(z^{(0)}) / (Theta_{n,1}(inf^{(0)}) S~(inf^{(0)})).
  Complex log_leading(const TwoCutDegree& d, Complex z, Complex approach = 0) const;

 private:
  std::shared_ptr<const TwoCutGeometry> geo_;
  WeightSpec weight_;
  double tol_;
  std::unique_ptr<EllipticData> data_;
  std::unique_ptr<SzegoTwoCut> szego_;
  std::unique_ptr<JacobiSolver> jacobi_;
  Complex log_s_inf_{};
  Complex abel_p_[2];
};

struct PredictOptions {
  double eps = 0.05;               // subsequence parameter
  bool allow_outside_subsequence = false;
  double tol = 1e-13;
};

// Regime dispatch over the three leading forms with cached geometry, Szego and
// per-degree surface data. Thread-safe.
class Predictor {
 public:
  explicit Predictor(WeightSpec weight, PredictOptions opt = {});

  Regime regime() const { return regime_; }
  const WeightSpec& weight() const { return weight_; }
  const OneCutAsymptotics* one_cut() const { return one_.get(); }
  const TwoCutAsymptotics* two_cut() const { return two_.get(); }
  const TwoCutDegree& degree(int n) const;

  AsymptoticPrediction predict(Complex z, int n) const;

 private:
  WeightSpec weight_;
  PredictOptions opt_;
  Regime regime_;
  std::unique_ptr<OneCutAsymptotics> one_;
  std::unique_ptr<TwoCutAsymptotics> two_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<TwoCutDegree>> degrees_;
};

AsymptoticPrediction predict(Complex z, int n, const WeightSpec& weight, const PredictOptions& opt = {});

// Least-squares slope of log y against log n; non-positive or non-finite y are dropped.
std::optional<double> loglog_slope(const std::vector<std::pair<int, double>>& pts);

}  // namespace kiss
