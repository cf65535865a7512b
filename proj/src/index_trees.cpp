#include "geosweep/index_trees.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace geosweep {

namespace {

bool key_less(const SegmentTree::LeafKey& a, const SegmentTree::LeafKey& b) {
  return std::tie(a.coord, a.tie) < std::tie(b.coord, b.tie);
}

void check_weight(double w) {
  if (std::isnan(w) || w == kPosInf) {
    throw Error(ErrorCode::InvalidArgument, "weight must be finite or -inf");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SegmentTree

SegmentTree::SegmentTree(std::vector<LeafKey> keys) : keys_(std::move(keys)) {
  if (keys_.empty()) throw Error(ErrorCode::EmptyDomain, "segment tree needs at least one leaf");
  nodes_.assign(2 * keys_.size(), Slot{});
}

SegmentTree SegmentTree::build(std::span<const double> coords) {
  std::vector<LeafKey> keys;
  keys.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) throw Error(ErrorCode::InvalidArgument, "non-finite leaf key");
    if (i > 0 && !(coords[i - 1] < coords[i])) {
      throw Error(ErrorCode::InvalidArgument, "leaf keys must be strictly increasing");
    }
    keys.push_back({coords[i], i});
  }
  return SegmentTree(std::move(keys));
}

SegmentTree SegmentTree::build_keyed(std::vector<LeafKey> keys) {
  if (!std::is_sorted(keys.begin(), keys.end(), key_less)) {
    throw Error(ErrorCode::InvalidArgument, "leaf keys must be sorted by (coord, tie)");
  }
  return SegmentTree(std::move(keys));
}

SegmentTree::Slot SegmentTree::better(const Slot& a, const Slot& b) {
  if (a.weight != b.weight) return a.weight > b.weight ? a : b;
  return a.id <= b.id ? a : b;
}

void SegmentTree::update(double coord, double weight, PointId id) {
  auto first = std::lower_bound(keys_.begin(), keys_.end(), coord,
                                [](const LeafKey& k, double c) { return k.coord < c; });
  auto last = std::upper_bound(first, keys_.end(), coord,
                               [](double c, const LeafKey& k) { return c < k.coord; });
  if (first == last) {
    throw Error(ErrorCode::UnknownCoordinate, "no leaf at coordinate " + std::to_string(coord));
  }
  if (last - first > 1) {
    first = std::lower_bound(first, last, LeafKey{coord, id}, key_less);
    if (first == last || first->tie != id) {
      throw Error(ErrorCode::UnknownCoordinate, "no leaf keyed by this coordinate and id");
    }
  }
  update_leaf(static_cast<std::size_t>(first - keys_.begin()), weight, id);
}

void SegmentTree::update_leaf(std::size_t leaf, double weight, PointId id) {
  check_weight(weight);
  const std::size_t n = keys_.size();
  std::size_t pos = leaf + n;
  nodes_[pos] = weight == kNegInf ? Slot{} : Slot{weight, id};
  for (pos >>= 1; pos >= 1; pos >>= 1) nodes_[pos] = better(nodes_[2 * pos], nodes_[2 * pos + 1]);
}

std::pair<std::size_t, std::size_t> SegmentTree::leaf_span(Range range) const {
  auto first = std::lower_bound(keys_.begin(), keys_.end(), range.lo,
                                [](const LeafKey& k, double c) { return k.coord < c; });
  auto last = std::upper_bound(keys_.begin(), keys_.end(), range.hi,
                               [](double c, const LeafKey& k) { return c < k.coord; });
  return {static_cast<std::size_t>(first - keys_.begin()),
          static_cast<std::size_t>(std::max(first, last) - keys_.begin())};
}

MaxResult SegmentTree::query_max(Range range, QueryStats* stats) const {
  const auto [first, last] = leaf_span(range);
  return query_leaves(first, last, stats);
}

MaxResult SegmentTree::query_leaves(std::size_t first, std::size_t last, QueryStats* stats) const {
  Slot best;
  std::size_t touched = 0;
  const std::size_t n = keys_.size();
  for (std::size_t l = first + n, r = last + n; l < r; l >>= 1, r >>= 1) {
    if (l & 1) {
      best = better(best, nodes_[l++]);
      ++touched;
    }
    if (r & 1) {
      best = better(best, nodes_[--r]);
      ++touched;
    }
  }
  if (stats) {
    ++stats->levels;
    stats->nodes += touched;
    stats->max_level_nodes = std::max(stats->max_level_nodes, touched);
  }
  if (best.id == kNoId) return {};
  return {best.weight, best.id};
}

std::size_t SegmentTree::count(Range range) const {
  const auto [first, last] = leaf_span(range);
  return last - first;
}

MaxResult SegmentTree::leaf(std::size_t i) const {
  const Slot& s = nodes_[i + keys_.size()];
  if (s.id == kNoId) return {};
  return {s.weight, s.id};
}

bool SegmentTree::audit() const {
  for (std::size_t i = 1; i < keys_.size(); ++i) {
    const Slot expect = better(nodes_[2 * i], nodes_[2 * i + 1]);
    if (nodes_[i].weight != expect.weight || nodes_[i].id != expect.id) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// RangeTree

class RangeTree::Level {
 public:
  Level(std::vector<const WeightedPoint*> pts, std::size_t k) : k_(k) {
    std::sort(pts.begin(), pts.end(), [k](const WeightedPoint* a, const WeightedPoint* b) {
      return std::tie(a->coords[k - 1], a->id) < std::tie(b->coords[k - 1], b->id);
    });
    keys_.reserve(pts.size());
    for (const WeightedPoint* p : pts) keys_.push_back({p->coords[k - 1], p->id});
    nodes_.reserve(2 * pts.size());
    build(pts, 0, pts.size());
  }

  void set_weight(const WeightedPoint& p, double weight) {
    const auto it = std::lower_bound(keys_.begin(), keys_.end(),
                                     SegmentTree::LeafKey{p.coords[k_ - 1], p.id}, key_less);
    const auto pos = static_cast<std::size_t>(it - keys_.begin());
    std::size_t node = 0;
    while (true) {
      Node& nd = nodes_[node];
      if (k_ == 2) {
        nd.seg->update(p.coords[0], weight, p.id);
      } else {
        nd.sub->set_weight(p, weight);
      }
      if (nd.left < 0) break;
      node = pos < nodes_[static_cast<std::size_t>(nd.left)].end ? static_cast<std::size_t>(nd.left)
                                                                 : static_cast<std::size_t>(nd.right);
    }
  }

  MaxResult max_query(std::span<const Range> box, QueryStats* stats) const {
    MaxResult best;
    visit(box, stats, [&](const Node& nd) {
      const MaxResult r =
          k_ == 2 ? nd.seg->query_max(box[0], stats) : nd.sub->max_query(box.first(k_ - 1), stats);
      if (!r.id) return;
      if (!best.id || r.weight > best.weight || (r.weight == best.weight && *r.id < *best.id)) {
        best = r;
      }
    });
    return best;
  }

  std::size_t count(std::span<const Range> box, QueryStats* stats) const {
    std::size_t total = 0;
    visit(box, stats, [&](const Node& nd) {
      total += k_ == 2 ? nd.seg->count(box[0]) : nd.sub->count(box.first(k_ - 1), stats);
    });
    return total;
  }

  std::size_t leaf_slots() const {
    std::size_t total = 0;
    for (const Node& nd : nodes_) total += k_ == 2 ? nd.seg->size() : nd.sub->leaf_slots();
    return total;
  }

  bool audit() const {
    for (const Node& nd : nodes_) {
      const std::size_t sz = nd.end - nd.begin;
      if (k_ == 2) {
        if (nd.seg->size() != sz || !nd.seg->audit()) return false;
      } else if (!nd.sub->audit()) {
        return false;
      }
      if (nd.left >= 0) {
        const Node& l = nodes_[static_cast<std::size_t>(nd.left)];
        const Node& r = nodes_[static_cast<std::size_t>(nd.right)];
        if (l.begin != nd.begin || l.end != r.begin || r.end != nd.end) return false;
      }
    }
    return true;
  }

 private:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    int left = -1;
    int right = -1;
    std::unique_ptr<SegmentTree> seg;
    std::unique_ptr<Level> sub;
  };

  std::size_t build(const std::vector<const WeightedPoint*>& pts, std::size_t begin, std::size_t end) {
    const std::size_t self = nodes_.size();
    nodes_.emplace_back();
    nodes_[self].begin = begin;
    nodes_[self].end = end;
    std::vector<const WeightedPoint*> mine(pts.begin() + static_cast<std::ptrdiff_t>(begin),
                                           pts.begin() + static_cast<std::ptrdiff_t>(end));
    if (k_ == 2) {
      std::vector<SegmentTree::LeafKey> keys;
      keys.reserve(mine.size());
      for (const WeightedPoint* p : mine) keys.push_back({p->coords[0], p->id});
      std::sort(keys.begin(), keys.end(), key_less);
      nodes_[self].seg = std::make_unique<SegmentTree>(SegmentTree::build_keyed(std::move(keys)));
    } else {
      nodes_[self].sub = std::make_unique<Level>(std::move(mine), k_ - 1);
    }
    if (end - begin > 1) {
      const std::size_t mid = begin + (end - begin) / 2;
      const std::size_t l = build(pts, begin, mid);
      const std::size_t r = build(pts, mid, end);
      nodes_[self].left = static_cast<int>(l);
      nodes_[self].right = static_cast<int>(r);
    }
    return self;
  }

  // Calls `on_canonical` for the canonical cover of the last-coordinate range.
  template <class F>
  void visit(std::span<const Range> box, QueryStats* stats, F&& on_canonical) const {
    const Range& range = box[k_ - 1];
    auto first = std::lower_bound(keys_.begin(), keys_.end(), range.lo,
                                  [](const SegmentTree::LeafKey& k, double c) { return k.coord < c; });
    auto last = std::upper_bound(keys_.begin(), keys_.end(), range.hi,
                                 [](double c, const SegmentTree::LeafKey& k) { return c < k.coord; });
    const auto a = static_cast<std::size_t>(first - keys_.begin());
    const auto b = static_cast<std::size_t>(last - keys_.begin());
    std::size_t touched = 0;
    if (a < b) descend(0, a, b, touched, on_canonical);
    if (stats) {
      ++stats->levels;
      stats->nodes += touched;
      stats->max_level_nodes = std::max(stats->max_level_nodes, touched);
    }
  }

  template <class F>
  void descend(std::size_t node, std::size_t a, std::size_t b, std::size_t& touched, F& on_canonical) const {
    const Node& nd = nodes_[node];
    ++touched;
    if (nd.end <= a || b <= nd.begin) return;
    if (a <= nd.begin && nd.end <= b) {
      on_canonical(nd);
      return;
    }
    descend(static_cast<std::size_t>(nd.left), a, b, touched, on_canonical);
    descend(static_cast<std::size_t>(nd.right), a, b, touched, on_canonical);
  }

  std::size_t k_;
  std::vector<SegmentTree::LeafKey> keys_;
  std::vector<Node> nodes_;
};

RangeTree::RangeTree(std::span<const WeightedPoint> points, std::size_t k) : k_(k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "range tree needs k >= 2; use SegmentTree for k = 1");
  if (points.empty()) throw Error(ErrorCode::EmptyDomain, "range tree needs at least one point");
  points_.assign(points.begin(), points.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const WeightedPoint& p = points_[i];
    if (p.coords.size() != k) {
      throw Error(ErrorCode::DimensionMismatch, "point " + std::to_string(p.id) + " has " +
                                                    std::to_string(p.coords.size()) + " coordinates, expected " +
                                                    std::to_string(k));
    }
    for (double c : p.coords) {
      if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite point coordinate");
    }
    check_weight(p.weight);
    if (!index_.emplace(p.id, i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate point id " + std::to_string(p.id));
    }
  }
  std::vector<const WeightedPoint*> ptrs;
  ptrs.reserve(points_.size());
  for (const WeightedPoint& p : points_) ptrs.push_back(&p);
  root_ = std::make_unique<Level>(std::move(ptrs), k);
  for (const WeightedPoint& p : points_) {
    if (p.weight != kNegInf) root_->set_weight(p, p.weight);
  }
}

RangeTree::~RangeTree() = default;
RangeTree::RangeTree(RangeTree&&) noexcept = default;
RangeTree& RangeTree::operator=(RangeTree&&) noexcept = default;

void RangeTree::set_weight(PointId id, double weight) {
  const auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::UnknownPoint, "unknown point id " + std::to_string(id));
  check_weight(weight);
  WeightedPoint& p = points_[it->second];
  p.weight = weight;
  root_->set_weight(p, weight);
}

double RangeTree::weight(PointId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::UnknownPoint, "unknown point id " + std::to_string(id));
  return points_[it->second].weight;
}

void RangeTree::check_box(std::span<const Range> box) const {
  if (box.size() != k_) {
    throw Error(ErrorCode::DimensionMismatch,
                "query box has " + std::to_string(box.size()) + " ranges, expected " + std::to_string(k_));
  }
}

MaxResult RangeTree::max_query(std::span<const Range> box, QueryStats* stats) const {
  check_box(box);
  return root_->max_query(box, stats);
}

std::size_t RangeTree::count(std::span<const Range> box, QueryStats* stats) const {
  check_box(box);
  return root_->count(box, stats);
}

std::size_t RangeTree::leaf_slots() const { return root_->leaf_slots(); }

bool RangeTree::audit() const { return root_->audit(); }

}  // namespace geosweep
