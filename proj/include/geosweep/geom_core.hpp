#pragma once

// Geometric primitives and the 1-D interval machinery shared by the sweeps.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "geosweep/error.hpp"

namespace geosweep {

/// Absolute slack for interval coverage at shared endpoints.
inline constexpr double kEpsCov = 1e-9;
/// Tolerance for geometric coincidence (identical circles, tangency, dedup).
inline constexpr double kEpsGeom = 1e-9;

using OwnerId = std::size_t;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// d-dimensional point.
struct Point {
  std::vector<double> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
};

struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
};

/// Closed axis-aligned box [lo, hi].
struct HyperRect {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dim() const noexcept { return lo.size(); }
  double extent(std::size_t p) const { return hi[p] - lo[p]; }
  double volume() const;
  bool contains(std::span<const double> point) const;
  /// Closed inclusion of `other` in this box.
  bool contains(const HyperRect& other) const;
};

/// Throws DimensionMismatch / InvalidArgument on malformed boxes.
void validate_box(const HyperRect& box, std::size_t d);

/// Closed interval on a sweep line; `owner` identifies the generating object.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<OwnerId> owner;

  double length() const noexcept { return hi - lo; }
};

/// A maximal piece of an interval union, tagged with the owners of its ends.
struct UnionInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<OwnerId> low_owner;
  std::optional<OwnerId> high_owner;
};

struct CoverageResult {
  bool covered = true;
  std::vector<Interval> gaps;
};

struct Polygon {
  std::vector<Point2> vertices;
};

struct Triangle {
  Point2 a, b, c;

  double area() const;
};

/// Signed shoelace area (positive for counter-clockwise vertex order).
double signed_area(std::span<const Point2> vertices);

/// x-coordinates of the boundary intersection points of two circles.
/// Tangency gives one value, two crossing points give two (possibly equal).
std::vector<double> circle_circle_intersection_xs(const Circle& c1, const Circle& c2);

/// Vertical chord of `c` on the line at `x`, or nothing if the line misses it.
std::optional<Interval> circle_chord_at_x(const Circle& c, double x,
                                          std::optional<OwnerId> owner = std::nullopt);

/// Counter sweep over sorted piece endpoints; gaps shorter than `slack` are
/// not reported.
CoverageResult cover_interval(const Interval& target, std::span<const Interval> pieces,
                              double slack = kEpsCov);

std::vector<UnionInterval> union_of_intervals(std::span<const Interval> pieces);

/// Ear clipping. Throws NotSimple on self-intersecting or degenerate input.
std::vector<Triangle> triangulate_polygon(const Polygon& poly);

}  // namespace geosweep
