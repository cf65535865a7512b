#pragma once

// Planar vertical-slab algorithms: largest empty circle inside a container
// circle, and union areas of circles and of polygons.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "geosweep/geom_core.hpp"

namespace geosweep {

/// Sorted, deduplicated slab boundaries. Within one slab no two curves cross,
/// so the midline cross-section stands for the whole strip.
struct SlabDecomposition {
  std::vector<double> xs;

  /// Sorts, merges values closer than kEpsGeom and keeps those in [lo, hi].
  static SlabDecomposition from(std::vector<double> xs, double lo = -1e300, double hi = 1e300);

  std::size_t slab_count() const noexcept { return xs.size() < 2 ? 0 : xs.size() - 1; }
  double midline(std::size_t i) const { return 0.5 * (xs[i] + xs[i + 1]); }
  double width(std::size_t i) const { return xs[i + 1] - xs[i]; }
};

struct CoverageDecision {
  bool covered = false;
  /// A point of the shrunken container outside every disk, when not covered.
  std::optional<Point2> witness;
};

/// Do the radius-`radius` disks around `points` cover C'(cx, cy, r - radius)?
CoverageDecision circle_coverage_decision(std::span<const Point2> points, double radius,
                                          const Circle& container);

struct EmptyCircleResult {
  double radius = 0.0;
  Point2 center;
  std::size_t iterations = 0;
};

/// Binary search on the radius. `tol` defaults to 1e-7 * container.r.
EmptyCircleResult largest_empty_circle(std::span<const Point2> points, const Circle& container,
                                       std::optional<double> tol = std::nullopt);

double union_area_circles(std::span<const Circle> circles);

/// Polygons are triangulated first; throws NotSimple on bad input.
double union_area_polygons(std::span<const Polygon> polys);

}  // namespace geosweep
