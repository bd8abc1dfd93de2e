#include "kiss/asymptotics/asymptotics.hpp"

#include <cmath>
#include <limits>

namespace kiss {

namespace {

constexpr double kOnCut = 1e-12;

void require_off(const PlanarArc& arc, Complex z, Complex approach) {
  if (approach == Complex(0) && arc.distance_to(z) < kOnCut)
    fail(ErrorCode::OnCut, "evaluation point lies on the contour; pass an approach direction");
}

std::optional<Complex> safe_exp(Complex l) {
  if (!(std::abs(l.real()) < 700)) return std::nullopt;
  return std::exp(l);
}

}  // namespace

Parametrix2x2 operator*(const Parametrix2x2& x, const Parametrix2x2& y) {
  return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
          x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22, x.z};
}

double max_abs_diff(const Parametrix2x2& x, const Parametrix2x2& y) {
  return std::max({std::abs(x.a11 - y.a11), std::abs(x.a12 - y.a12), std::abs(x.a21 - y.a21),
                   std::abs(x.a22 - y.a22)});
}

// ---------------------------------------------------------------- one cut

OneCutAsymptotics::OneCutAsymptotics(std::shared_ptr<const OneCutGeometry> geometry, WeightSpec weight,
                                     double tol)
    : geo_(geometry), szego_(geometry, std::move(weight), tol) {}

Complex OneCutAsymptotics::log_leading(Complex z, int n) const {
  require_off(geo_->arc(), z, 0);
  return double(n) * geo_->g(z) + szego_.log_at_infinity() - szego_.log_value(z);
}

Parametrix2x2 OneCutAsymptotics::parametrix(Complex z, Complex approach) const {
  require_off(geo_->arc(), z, approach);
  Complex w = geo_->w(z, approach);
  Complex phi = geo_->joukowski(z, approach);
  Complex si = szego_.at_infinity();
  Complex s = szego_(z, approach);
  return {si / s, si * s / w, 1.0 / (2.0 * phi * si * s), phi * s / (2.0 * w * si), z};
}

// ---------------------------------------------------------------- two cut

TwoCutAsymptotics::TwoCutAsymptotics(std::shared_ptr<const TwoCutGeometry> geometry, WeightSpec weight,
                                     double tol)
    : geo_(std::move(geometry)), weight_(std::move(weight)), tol_(tol) {
  data_ = std::make_unique<EllipticData>(EllipticData::build(geo_));
  szego_ = std::make_unique<SzegoTwoCut>(*data_, weight_, tol_);
  jacobi_ = std::make_unique<JacobiSolver>(*data_);
  log_s_inf_ = szego_->log_value(SurfacePoint::infinity(0));
  for (int k : {0, 1}) abel_p_[k] = data_->abel(jacobi_->p_lift(k));
}

TwoCutDegree TwoCutAsymptotics::degree(int n, double eps, long m_shift, long j_shift) const {
  TwoCutDegree d;
  d.n = n;
  for (int k : {0, 1}) {
    d.inv[k] = jacobi_->solve(n, k, szego_->alpha_jump_exponent());
    d.inv[k].abel_value += double(j_shift) + double(m_shift) * data_->B();
    d.inv[k].j += j_shift;
    d.inv[k].m += m_shift;
    d.theta[k].emplace(*data_, d.inv[k], abel_p_[k], n);
  }
  d.in_subsequence = in_subsequence(d.inv[1], eps);
  Complex s_inf = std::exp(log_s_inf_);
  d.m11_inf = (*d.theta[1])(SurfacePoint::infinity(0)) * s_inf;
  d.m22_inf = (*d.theta[0])(SurfacePoint::infinity(1)) / s_inf;
  return d;
}

Complex TwoCutAsymptotics::m_entry(const TwoCutDegree& d, int k, int sheet, Complex z, Complex approach) const {
  auto [A, B] = data_->ab_pair(z, approach);
  Complex th = (*d.theta[k])(SurfacePoint::at(z, sheet), approach);
  if (k == 1) return th * (sheet == 0 ? A : -B);
  return th * (sheet == 0 ? B : A);
}

Parametrix2x2 TwoCutAsymptotics::m_matrix(const TwoCutDegree& d, Complex z, Complex approach) const {
  for (const PlanarArc* a : {&geo_->gamma1(), &geo_->gamma2(), &geo_->hat_gamma()}) require_off(*a, z, approach);
  Complex s = (*szego_)(SurfacePoint::at(z, 0), approach);
  return {m_entry(d, 1, 0, z, approach) * s, m_entry(d, 1, 1, z, approach) / s,
          m_entry(d, 0, 0, z, approach) * s, m_entry(d, 0, 1, z, approach) / s, z};
}

Parametrix2x2 TwoCutAsymptotics::parametrix(const TwoCutDegree& d, Complex z, Complex approach) const {
  if (!d.in_subsequence && (std::abs(d.m11_inf) < 1e-300 || std::abs(d.m22_inf) < 1e-300))
    fail(ErrorCode::SubsequenceViolation, "M(infinity) is singular for this n");
  Parametrix2x2 m = m_matrix(d, z, approach);
  return {m.a11 / d.m11_inf, m.a12 / d.m11_inf, m.a21 / d.m22_inf, m.a22 / d.m22_inf, z};
}

Complex TwoCutAsymptotics::log_leading(const TwoCutDegree& d, Complex z, Complex approach) const {
  for (const PlanarArc* a : {&geo_->gamma1(), &geo_->gamma2(), &geo_->hat_gamma()}) require_off(*a, z, approach);
  auto [A, B] = data_->ab_pair(z, approach);
  (void)B;
  Complex th = (*d.theta[1])(SurfacePoint::at(z, 0), approach);
  Complex th_inf = (*d.theta[1])(SurfacePoint::infinity(0));
  Complex ls = szego_->log_value(SurfacePoint::at(z, 0), approach);
  return double(d.n) * geo_->g(z, approach) + std::log(A * th / th_inf) + ls - log_s_inf_;
}

// ---------------------------------------------------------------- dispatch

Predictor::Predictor(WeightSpec weight, PredictOptions opt)
    : weight_(std::move(weight)), opt_(opt), regime_(classify_regime(weight_.lambda)) {
  weight_.validate();
  if (regime_ == Regime::Supercritical) {
    auto geo = std::make_shared<TwoCutGeometry>(TwoCutGeometry::build(weight_.lambda));
    two_ = std::make_unique<TwoCutAsymptotics>(geo, weight_, opt_.tol);
  } else {
    double lam = regime_ == Regime::Critical ? lambda_critical() : weight_.lambda;
    auto geo = std::make_shared<OneCutGeometry>(OneCutGeometry::build(lam));
    one_ = std::make_unique<OneCutAsymptotics>(geo, weight_, opt_.tol);
  }
}

const TwoCutDegree& Predictor::degree(int n) const {
  if (!two_) fail(ErrorCode::WrongRegime, "degree data exists only in the supercritical regime");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = degrees_.find(n);
  if (it == degrees_.end())
    it = degrees_.emplace(n, std::make_unique<TwoCutDegree>(two_->degree(n, opt_.eps))).first;
  return *it->second;
}

AsymptoticPrediction Predictor::predict(Complex z, int n) const {
  if (n < 1) fail(ErrorCode::InvalidArgument, "degree must be positive");
  AsymptoticPrediction out;
  out.regime = regime_;
  out.n = n;
  out.z = z;
  if (regime_ != Regime::Supercritical) {
    out.order = regime_ == Regime::Critical ? 0.5 : 1.0;
    out.log_value = one_->log_leading(z, n);
    out.log_factor = out.log_value - double(n) * one_->geometry().g(z);
  } else {
    out.order = 1.0;
    const TwoCutDegree& d = degree(n);
    out.in_subsequence = d.in_subsequence;
    if (!d.in_subsequence) {
      if (!opt_.allow_outside_subsequence)
        fail(ErrorCode::SubsequenceViolation, "n is outside N(lambda, eps): z_{n,1} is near infinity on sheet 0");
      out.warning = "n outside N(lambda, eps)";
    }
    out.log_value = two_->log_leading(d, z);
    out.log_factor = out.log_value - double(n) * two_->geometry().g(z);
  }
  out.log_value = Complex(out.log_value.real(), std::remainder(out.log_value.imag(), 2 * M_PI));
  out.value = safe_exp(out.log_value);
  if (!out.value) out.warning += out.warning.empty() ? "value outside binary64 range" : "; value outside binary64 range";
  return out;
}

AsymptoticPrediction predict(Complex z, int n, const WeightSpec& weight, const PredictOptions& opt) {
  return Predictor(weight, opt).predict(z, n);
}

std::optional<double> loglog_slope(const std::vector<std::pair<int, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (auto [n, y] : pts) {
    if (!(y > 0) || !std::isfinite(y)) continue;
    double x = std::log(double(n)), l = std::log(y);
    sx += x, sy += l, sxx += x * x, sxy += x * l;
    ++k;
  }
  if (k < 2) return std::nullopt;
  double den = k * sxx - sx * sx;
  if (den == 0) return std::nullopt;
  return (k * sxy - sx * sy) / den;
}

}  // namespace kiss
