#pragma once

#include <vector>

#include "kiss/numerics/planar_arc.hpp"

namespace kiss {

// Polyline routes in the plane avoiding a fixed set of polyline obstacles
// (cuts) and keeping a clearance from marked points (branch points).
// Routes are shortest paths in a visibility graph over a ring of waypoints.
class PathPlanner {
 public:
  PathPlanner() = default;
  PathPlanner(std::vector<std::vector<Complex>> obstacles, std::vector<Complex> marked_points);

  // Route from `from` to `to`. Endpoints may lie on obstacles; then
  // `leave_dir` / `arrive_dir` (unit vectors, nonzero) give the side from
  // which the route leaves or arrives.
  std::vector<Complex> route(Complex from, Complex to, Complex leave_dir = 0,
                             Complex arrive_dir = 0) const;

  bool segment_clear(Complex a, Complex b, double endpoint_slack = 0) const;
  double clearance(Complex z) const;

 private:
  std::vector<std::vector<Complex>> obstacles_;
  std::vector<Complex> marked_;
  std::vector<Complex> waypoints_;
  std::vector<std::vector<std::pair<int, double>>> graph_;
  struct Box {
    double x0, x1, y0, y1;
    std::size_t obstacle, first, last;
  };
  std::vector<Box> boxes_;
};

}  // namespace kiss
