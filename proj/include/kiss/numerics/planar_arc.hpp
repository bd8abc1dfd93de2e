#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kiss/numerics/contour.hpp"

namespace kiss {

// Ordered polyline samples of a curve in the plane with an orientation flag
// (true when the samples run against the curve's nominal orientation).
class PlanarArc {
 public:
  PlanarArc() = default;
  PlanarArc(std::vector<Complex> pts, std::string start_label = {}, std::string end_label = {});

  const std::vector<Complex>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  Complex operator[](std::size_t i) const { return pts_[i]; }
  Complex front() const { return pts_.front(); }
  Complex back() const { return pts_.back(); }
  const std::string& start_label() const { return start_label_; }
  const std::string& end_label() const { return end_label_; }
  bool orientation_flag() const { return flipped_; }

  // Unit tangent estimate at sample i (central difference inside, one-sided at the ends).
  Complex tangent(std::size_t i) const;
  Complex left_normal(std::size_t i) const { return Complex(0, 1) * tangent(i); }
  double length() const;
  double max_step() const;
  double distance_to(Complex z) const;

  PlanarArc reversed() const;
  PlanarArc reflected() const;  // s -> -conj(s), sample order preserved
  PlanarArc subarc(std::size_t i, std::size_t j) const;

  Path path(std::optional<Singularity> at_start = std::nullopt,
            std::optional<Singularity> at_end = std::nullopt) const;

 private:
  std::vector<Complex> pts_;
  std::string start_label_, end_label_;
  bool flipped_ = false;
};

double cross(Complex u, Complex v);
bool segments_cross(Complex a, Complex b, Complex c, Complex d);
double point_segment_distance(Complex z, Complex a, Complex b);
// Even-odd rule for a closed polygon given by its vertices.
bool inside_polygon(const std::vector<Complex>& poly, Complex z);

// log((z-a)/(z-b)) with its cut moved from the chord [a,b] to a polyline
// from a to b; equal to the principal value outside the region enclosed by
// the chord and the polyline.
class ArcLog {
 public:
  ArcLog() = default;
  ArcLog(Complex a, Complex b, const std::vector<Complex>& arc_from_a_to_b);

  // `approach` (optional, nonzero) selects the limit z + t approach, t -> 0+.
  Complex operator()(Complex z, Complex approach = 0) const { return eval(z, z - a_, z - b_, approach); }
  // Same, with the differences z - a and z - b supplied by the caller.
  Complex eval(Complex z, Complex za, Complex zb, Complex approach = 0) const;
  bool enclosed(Complex z) const;
  Complex a() const { return a_; }
  Complex b() const { return b_; }

 private:
  Complex a_{}, b_{};
  std::vector<Complex> polygon_;
  double scale_ = 1;
  // whether the left side of the arc is enclosed next to a and next to b
  bool left_in_a_ = false, left_in_b_ = false;
};

}  // namespace kiss
