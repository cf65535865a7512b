#pragma once

// Max-weight segment tree and the nested k-dimensional range tree built on it.
//
// Both structures are static after construction. Points are switched on and
// off by changing their weight; the -inf sentinel means "inactive". Queries
// take closed ranges whose endpoints may be +/-inf.

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "geosweep/error.hpp"

namespace geosweep {

using PointId = std::size_t;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// Result of a max query. `id` is empty iff nothing active was in range.
/// Equal weights resolve to the smaller id.
struct MaxResult {
  double weight = kNegInf;
  std::optional<PointId> id;

  friend bool operator==(const MaxResult&, const MaxResult&) = default;
};

/// Closed range [lo, hi]; infinite endpoints are allowed.
struct Range {
  double lo = kNegInf;
  double hi = kPosInf;
};

using QueryBox = std::vector<Range>;

/// Work counters filled by queries when the caller asks for them.
struct QueryStats {
  std::size_t levels = 0;          // number of (sub)tree traversals
  std::size_t nodes = 0;           // nodes touched across all traversals
  std::size_t max_level_nodes = 0; // worst single traversal
};

class SegmentTree {
 public:
  struct LeafKey {
    double coord;
    PointId tie;
  };

  /// Leaves at strictly increasing `coords`. Throws EmptyDomain on empty input.
  static SegmentTree build(std::span<const double> coords);
  /// Leaves sorted by (coord, tie); equal coords are allowed.
  static SegmentTree build_keyed(std::vector<LeafKey> keys);

  /// Replaces the weight at the leaf keyed by `coord` (and by `id` when several
  /// leaves share that coordinate). A -inf weight clears the leaf.
  void update(double coord, double weight, PointId id);
  void update_leaf(std::size_t leaf, double weight, PointId id);

  MaxResult query_max(Range range, QueryStats* stats = nullptr) const;
  MaxResult query_leaves(std::size_t first, std::size_t last, QueryStats* stats = nullptr) const;
  /// Number of leaves with key inside `range`, regardless of weight.
  std::size_t count(Range range) const;

  std::size_t size() const noexcept { return keys_.size(); }
  std::span<const LeafKey> keys() const noexcept { return keys_; }
  MaxResult leaf(std::size_t i) const;

  /// Checks every internal node against its children.
  bool audit() const;

 private:
  struct Slot {
    double weight = kNegInf;
    PointId id = kNoId;
  };
  static constexpr PointId kNoId = std::numeric_limits<PointId>::max();

  explicit SegmentTree(std::vector<LeafKey> keys);
  static Slot better(const Slot& a, const Slot& b);
  std::pair<std::size_t, std::size_t> leaf_span(Range range) const;

  std::vector<LeafKey> keys_;
  std::vector<Slot> nodes_;  // iterative layout: leaves at [size, 2*size)
};

struct WeightedPoint {
  std::vector<double> coords;
  double weight = kNegInf;
  PointId id = 0;
};

/// k-dimensional range tree (k >= 2). The outer tree is balanced over the last
/// coordinate; every node carries a (k-1)-dimensional tree over its points,
/// and at k = 2 that inner structure is a SegmentTree over the first
/// coordinate. Ties in a coordinate are ordered by point id.
class RangeTree {
 public:
  RangeTree(std::span<const WeightedPoint> points, std::size_t k);
  ~RangeTree();
  RangeTree(RangeTree&&) noexcept;
  RangeTree& operator=(RangeTree&&) noexcept;

  void set_weight(PointId id, double weight);
  double weight(PointId id) const;

  MaxResult max_query(std::span<const Range> box, QueryStats* stats = nullptr) const;
  std::size_t count(std::span<const Range> box, QueryStats* stats = nullptr) const;

  std::size_t dimension() const noexcept { return k_; }
  std::size_t size() const noexcept { return points_.size(); }
  /// Total leaf slots across all innermost segment trees.
  std::size_t leaf_slots() const;
  bool audit() const;

  class Level;

 private:
  void check_box(std::span<const Range> box) const;

  std::size_t k_;
  std::vector<WeightedPoint> points_;
  std::unordered_map<PointId, std::size_t> index_;
  std::unique_ptr<Level> root_;
};

}  // namespace geosweep
