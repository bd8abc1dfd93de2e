#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "kiss/exact/oracle.hpp"

namespace kiss {

namespace {

constexpr int kBlock = 64;
constexpr int kMaxNodes = 4096;

int round_block(double x) { return kBlock * static_cast<int>(std::ceil(std::max(x, 1.0) / kBlock)); }

int initial_nodes(const WeightSpec& w, int count, unsigned bits) {
  double omega = std::abs(w.lambda * w.n);
  double digits = digits_for_bits(bits);
  return round_block(std::max(10 * omega / M_PI, 0.5 * count + 0.7 * digits + 32));
}

// w_i h*(x_i) e^{i omega x_i} for the cached rule with the given node count.
struct WeightedNodes {
  std::shared_ptr<const GaussRule<BigReal>> rule;
  std::vector<BigComplex> g;
};

WeightedNodes weighted_nodes(const WeightSpec& w, int nodes, unsigned bits) {
  WeightedNodes out;
  out.rule = cached_gauss_jacobi(nodes, w.alpha, w.beta, bits);
  BigReal omega = BigReal(w.lambda) * w.n;
  out.g.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    const BigReal& x = out.rule->nodes[i];
    BigReal t = omega * x;
    BigComplex e(cos(t), sin(t));
    out.g[i] = e * w.h_star(BigComplex(x)) * out.rule->weights[i];
  }
  return out;
}

std::vector<BigComplex> power_moments(const WeightedNodes& wn, int count) {
  std::vector<BigComplex> m(count, BigComplex(0));
  for (std::size_t i = 0; i < wn.g.size(); ++i) {
    BigComplex p = wn.g[i];
    const BigReal& x = wn.rule->nodes[i];
    for (int k = 0; k < count; ++k) {
      m[k] += p;
      p *= x;
    }
  }
  return m;
}

}  // namespace

double MomentTable::max_error() const {
  double e = 0;
  for (double x : error) e = std::max(e, x);
  return e;
}

unsigned oracle_bits(int n) {
  return std::max(256u, static_cast<unsigned>(12 * std::max(n, 0)));
}

std::shared_ptr<const GaussRule<BigReal>> cached_gauss_jacobi(int nodes, double a, double b, unsigned bits) {
  using Key = std::tuple<int, double, double, unsigned>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const GaussRule<BigReal>>> cache;
  Key key{nodes, a, b, bits};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  ScopedPrecision sp(bits);
  auto rule = std::make_shared<const GaussRule<BigReal>>(gauss_jacobi<BigReal>(nodes, BigReal(a), BigReal(b)));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, rule).first->second;
}

MomentTable compute_moments(const WeightSpec& weight, unsigned bits, int extra) {
  weight.validate();
  ScopedPrecision sp(bits);
  int count = 2 * weight.n + extra;
  double digits = digits_for_bits(bits);
  BigReal target = pow(BigReal(10), -(BigReal(digits) - 5));
  int nodes = initial_nodes(weight, count, bits);
  std::vector<BigComplex> coarse = power_moments(weighted_nodes(weight, nodes, bits), count);
  while (nodes + kBlock <= kMaxNodes) {
    std::vector<BigComplex> fine = power_moments(weighted_nodes(weight, nodes + kBlock, bits), count);
    BigReal scale = 1, worst = 0;
    for (int k = 0; k < count; ++k) {
      scale = std::max(scale, BigReal(abs(fine[k])));
      worst = std::max(worst, BigReal(abs(fine[k] - coarse[k])));
    }
    if (worst <= target * scale) {
      MomentTable t;
      t.n = weight.n;
      t.omega = weight.omega();
      t.bits = bits;
      t.nodes = nodes + kBlock;
      t.error.resize(count);
      for (int k = 0; k < count; ++k) t.error[k] = to_double(BigReal(abs(fine[k] - coarse[k])));
      t.m = std::move(fine);
      return t;
    }
    nodes += kBlock;
    coarse = std::move(fine);
  }
  fail(ErrorCode::NonConverged, "moment quadrature did not reach the requested precision");
}

BigComplex weighted_integral(const WeightSpec& weight, unsigned bits,
                             const std::function<BigComplex(const BigComplex&)>& f, double* error,
                             int min_nodes) {
  ScopedPrecision sp(bits);
  double digits = digits_for_bits(bits);
  BigReal target = pow(BigReal(10), -(BigReal(digits) - 5));
  int nodes = std::max(initial_nodes(weight, 0, bits), round_block(min_nodes));
  auto sum = [&](int nn) {
    WeightedNodes wn = weighted_nodes(weight, nn, bits);
    BigComplex s(0);
    for (int i = 0; i < nn; ++i) s += wn.g[i] * f(BigComplex(wn.rule->nodes[i]));
    return s;
  };
  BigComplex coarse = sum(nodes);
  while (nodes + kBlock <= kMaxNodes) {
    BigComplex fine = sum(nodes + kBlock);
    BigReal d = abs(fine - coarse);
    if (d <= target * std::max(BigReal(1), BigReal(abs(fine)))) {
      if (error) *error = to_double(d);
      return fine;
    }
    nodes += kBlock;
    coarse = fine;
  }
  fail(ErrorCode::NonConverged, "weighted integral did not reach the requested precision");
}

}  // namespace kiss
