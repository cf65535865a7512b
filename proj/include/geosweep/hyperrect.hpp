#pragma once

// d-dimensional box algorithms: union volume (recursive primitive-interval
// sweep, plus the 2-D counting-tree sweep) and the largest empty box with a
// fixed aspect ratio.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "geosweep/geom_core.hpp"

namespace geosweep {

/// Side-length factors l_j = l1 * f[j]; f[0] must be 1 and every factor > 0.
struct AspectRatio {
  std::vector<double> f;

  static AspectRatio uniform(std::size_t d) { return {std::vector<double>(d, 1.0)}; }
};

void validate_ratio(const AspectRatio& ratio, std::size_t d);

double union_volume(std::span<const HyperRect> boxes, std::size_t d);

/// Area of a union of 2-D boxes via an x-sweep over compressed y coordinates.
double union_area_2d(std::span<const HyperRect> boxes);

struct EmptyRectProbe {
  bool feasible = false;
  /// Lower corner of an empty placement, when feasible.
  std::optional<std::vector<double>> witness;
};

/// Is there an empty box of side l1 * f inside `container`? Throws DoesNotFit
/// when l1 * f[j] exceeds the container extent in some dimension.
EmptyRectProbe empty_rect_feasible(std::span<const Point> points, const HyperRect& container,
                                   const AspectRatio& ratio, double l1);

struct EmptyRectResult {
  double l1 = 0.0;
  std::vector<double> lengths;
  std::vector<double> anchor;
  std::size_t iterations = 0;
};

/// Binary search on l1 over [0, min_j extent_j / f_j]; `tol` defaults to
/// 1e-7 times the upper bound.
EmptyRectResult largest_empty_hyperrect(std::span<const Point> points, const HyperRect& container,
                                        const AspectRatio& ratio, std::optional<double> tol = std::nullopt);

}  // namespace geosweep
