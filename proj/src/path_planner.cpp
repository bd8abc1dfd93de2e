#include "kiss/numerics/path_planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace kiss {

namespace {
constexpr double kPointClearance = 0.02;
constexpr double kWaypointClearance = 0.03;
}  // namespace

PathPlanner::PathPlanner(std::vector<std::vector<Complex>> obstacles, std::vector<Complex> marked)
    : obstacles_(std::move(obstacles)), marked_(std::move(marked)) {
  for (std::size_t o = 0; o < obstacles_.size(); ++o) {
    const auto& ob = obstacles_[o];
    for (std::size_t i = 0; i + 1 < ob.size(); i += 16) {
      std::size_t last = std::min(i + 16, ob.size() - 1);
      Box b{1e300, -1e300, 1e300, -1e300, o, i, last};
      for (std::size_t k = i; k <= last; ++k) {
        b.x0 = std::min(b.x0, ob[k].real());
        b.x1 = std::max(b.x1, ob[k].real());
        b.y0 = std::min(b.y0, ob[k].imag());
        b.y1 = std::max(b.y1, ob[k].imag());
      }
      boxes_.push_back(b);
    }
  }
  const double pi = 3.14159265358979323846;
  std::vector<Complex> cand;
  for (double r : {0.15, 0.3, 0.45, 0.6, 0.8, 1.0, 1.25, 1.5, 1.8, 2.2, 2.7, 3.4, 4.5, 6.0}) {
    int m = 48;
    for (int k = 0; k < m; ++k) cand.push_back(std::polar(r, 2 * pi * (k + 0.5) / m));
  }
  for (const auto& ob : obstacles_) {
    std::size_t stride = std::max<std::size_t>(1, ob.size() / 24);
    for (std::size_t i = 0; i + 1 < ob.size(); i += stride) {
      Complex t = ob[i + 1] - ob[i];
      Complex nrm = Complex(0, 1) * t / std::abs(t);
      for (double d : {0.06, 0.15}) {
        cand.push_back(ob[i] + d * nrm);
        cand.push_back(ob[i] - d * nrm);
      }
    }
  }
  for (Complex c : cand)
    if (clearance(c) >= kWaypointClearance) waypoints_.push_back(c);
  graph_.assign(waypoints_.size(), {});
  for (std::size_t i = 0; i < waypoints_.size(); ++i)
    for (std::size_t j = i + 1; j < waypoints_.size(); ++j) {
      double d = std::abs(waypoints_[i] - waypoints_[j]);
      if (d > 2.5) continue;
      if (segment_clear(waypoints_[i], waypoints_[j])) {
        graph_[i].push_back({static_cast<int>(j), d});
        graph_[j].push_back({static_cast<int>(i), d});
      }
    }
}

double PathPlanner::clearance(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& ob : obstacles_)
    for (std::size_t i = 0; i + 1 < ob.size(); ++i)
      d = std::min(d, point_segment_distance(z, ob[i], ob[i + 1]));
  for (Complex m : marked_) d = std::min(d, std::abs(z - m));
  return d;
}

bool PathPlanner::segment_clear(Complex a, Complex b, double slack) const {
  double x0 = std::min(a.real(), b.real()), x1 = std::max(a.real(), b.real());
  double y0 = std::min(a.imag(), b.imag()), y1 = std::max(a.imag(), b.imag());
  Complex ua = a, ub = b;
  if (slack > 0) {
    Complex d = b - a;
    double L = std::abs(d);
    if (L <= 2 * slack) return true;
    ua = a + d * (slack / L);
    ub = b - d * (slack / L);
  }
  for (const Box& bx : boxes_) {
    if (bx.x1 < x0 || bx.x0 > x1 || bx.y1 < y0 || bx.y0 > y1) continue;
    const auto& ob = obstacles_[bx.obstacle];
    for (std::size_t k = bx.first; k < bx.last; ++k)
      if (segments_cross(ua, ub, ob[k], ob[k + 1])) return false;
  }
  for (Complex m : marked_) {
    double da = std::abs(m - a), db = std::abs(m - b);
    if (da < 1e-12 || db < 1e-12) continue;
    double dist = point_segment_distance(m, ua, ub);
    double near = std::min(da, db);
    // segments starting next to a marked point only need to keep clear of it
    if (near < kPointClearance) {
      if (dist < 0.3 * near) return false;
      continue;
    }
    if (dist < kPointClearance) return false;
  }
  return true;
}

std::vector<Complex> PathPlanner::route(Complex from, Complex to, Complex leave_dir,
                                        Complex arrive_dir) const {
  std::vector<Complex> head{from}, tail{to};
  Complex s = from, e = to;
  if (leave_dir != Complex(0)) {
    Complex d = leave_dir / std::abs(leave_dir);
    double step = std::min(1e-3, 0.3 * std::max(clearance(from + 1e-3 * d), 1e-6));
    step = std::max(step, 1e-7);
    s = from + step * d;
    head.push_back(s);
  }
  if (arrive_dir != Complex(0)) {
    Complex d = arrive_dir / std::abs(arrive_dir);
    double step = std::min(1e-3, 0.3 * std::max(clearance(to - 1e-3 * d), 1e-6));
    step = std::max(step, 1e-7);
    e = to - step * d;
    tail.insert(tail.begin(), e);
  }
  auto assemble = [&](const std::vector<Complex>& mid) {
    std::vector<Complex> out = head;
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), tail.begin(), tail.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  if (segment_clear(s, e)) return assemble({});

  int n = static_cast<int>(waypoints_.size());
  int src = n, dst = n + 1;
  std::vector<double> dist(n + 2, std::numeric_limits<double>::infinity());
  std::vector<int> prev(n + 2, -1);
  std::vector<std::vector<std::pair<int, double>>> extra(n + 2);
  for (int i = 0; i < n; ++i) {
    if (segment_clear(s, waypoints_[i])) extra[src].push_back({i, std::abs(s - waypoints_[i])});
    if (segment_clear(waypoints_[i], e)) extra[i].push_back({dst, std::abs(e - waypoints_[i])});
  }
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == dst) break;
    auto relax = [&](int v, double w) {
      if (dist[u] + w < dist[v]) {
        dist[v] = dist[u] + w;
        prev[v] = u;
        pq.push({dist[v], v});
      }
    };
    if (u < n)
      for (auto [v, w] : graph_[u]) relax(v, w);
    for (auto [v, w] : extra[u]) relax(v, w);
  }
  if (prev[dst] < 0) fail(ErrorCode::PathFailure, "no admissible route between the given points");
  std::vector<Complex> mid;
  for (int v = prev[dst]; v != src; v = prev[v]) mid.push_back(waypoints_[v]);
  std::reverse(mid.begin(), mid.end());
  return assemble(mid);
}

}  // namespace kiss
