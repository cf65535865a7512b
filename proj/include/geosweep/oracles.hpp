#pragma once

// Brute-force reference implementations. They are slow on purpose and share no
// algorithmic code with the fast paths, so agreement between the two is real
// evidence. Size caps guard against accidental quadratic blow-ups.

#include <cstddef>
#include <span>
#include <vector>

#include "geosweep/containment.hpp"
#include "geosweep/geom_core.hpp"
#include "geosweep/hyperrect.hpp"
#include "geosweep/nfa_subseq.hpp"

namespace geosweep::oracle {

struct Limits {
  std::size_t union_volume_2d = 200;
  std::size_t union_volume_3d = 40;
  std::size_t containment = 2000;
  std::size_t nfa = 300;
  std::size_t min_grid = 64;
};

inline constexpr Limits kLimits{};

/// Coordinate-compressed grid: every cell is tested against every box.
double union_volume(std::span<const HyperRect> boxes, std::size_t d);

/// All closed containment pairs (inner, outer), self excluded, sorted.
std::vector<ContainmentFact> containment_pairs(std::span<const Circle> circles);
std::vector<ContainmentFact> containment_pairs(std::span<const HyperRect> boxes);

/// Direct O(n^2 |E|) evaluation of the subsequence recurrence.
SubsequenceResult nfa_dp(const SequenceInput& input, const Nfa& nfa);

struct EmptyCircleEstimate {
  double radius = 0.0;
  Point2 center;
  double pitch = 0.0;
};

/// Best grid center over a grid_res x grid_res lattice spanning the container.
EmptyCircleEstimate empty_circle(std::span<const Point2> points, const Circle& container,
                                 std::size_t grid_res);

/// Exact feasibility by enumerating anchors whose coordinates come from the
/// container's lower corner or the points' own coordinates.
bool empty_rect_feasible(std::span<const Point> points, const HyperRect& container, const AspectRatio& ratio,
                         double l1);

struct EmptyRectEstimate {
  double l1 = 0.0;
  double pitch = 0.0;
};

/// Bisection over `empty_rect_feasible` down to `pitch`.
EmptyRectEstimate empty_rect(std::span<const Point> points, const HyperRect& container, const AspectRatio& ratio,
                             double pitch);

/// Midpoint-rule area estimates on a grid_res x grid_res lattice over the
/// bounding box of the input.
double union_area_circles(std::span<const Circle> circles, std::size_t grid_res);
double union_area_polygons(std::span<const Polygon> polys, std::size_t grid_res);

}  // namespace geosweep::oracle
