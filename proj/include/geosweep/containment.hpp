#pragma once

// Containment analyses: circle inclusion by half-circle sweeps, box inclusion
// by a range-tree sweep, and per-box containment counts by range counting.
// Containment is closed: touching boundaries count, equal objects contain each
// other, and an object never contains itself.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "geosweep/geom_core.hpp"

namespace geosweep {

struct ContainmentFact {
  std::size_t inner = 0;
  std::size_t outer = 0;

  friend auto operator<=>(const ContainmentFact&, const ContainmentFact&) = default;
};

/// Disjoint closed intervals on the sweep line, ordered by left endpoint.
class SweepIntervalTree {
 public:
  using Map = std::map<std::pair<double, std::size_t>, double>;  // (lo, owner) -> hi

  void insert(const Interval& iv);
  void erase(std::size_t owner);
  std::optional<Interval> find(std::size_t owner) const;

  /// Owners of stored intervals that may meet [lo, hi]: the predecessor of
  /// `lo` when it reaches `lo`, then every successor starting at or before `hi`.
  std::vector<std::size_t> overlapping(double lo, double hi) const;

  std::size_t size() const noexcept { return by_lo_.size(); }
  const Map& items() const noexcept { return by_lo_; }
  /// True when no two stored intervals overlap by more than `slack`.
  bool disjoint(double slack = kEpsGeom) const;

 private:
  Map by_lo_;
  std::map<std::size_t, double> lo_of_;
};

enum class SweepDirection { LeftToRight, RightToLeft };

/// One sweep over the right half-circles (LeftToRight) or the left
/// half-circles (RightToLeft). The input must be laminar: any two circles are
/// disjoint or nested. `after_event`, when set, sees the tree after every event.
std::vector<ContainmentFact> sweep_half_circles(
    std::span<const Circle> circles, SweepDirection direction,
    const std::function<void(const SweepIntervalTree&)>& after_event = {});

struct ContainmentEntry {
  std::optional<std::size_t> container;
  bool is_contained = false;
  bool contains_another = false;
};

struct ContainmentReport {
  std::vector<ContainmentEntry> entries;

  std::vector<std::size_t> contained_ids() const;
};

ContainmentReport circle_containment(std::span<const Circle> circles);

/// Witness container per box (max-weight argmax, smaller id on ties).
ContainmentReport rect_containment(std::span<const HyperRect> boxes, std::size_t d);

struct ContainmentCounts {
  std::vector<std::size_t> num_containers;
  std::vector<std::size_t> num_contained;
};

ContainmentCounts rect_containment_counts(std::span<const HyperRect> boxes, std::size_t d);

}  // namespace geosweep
