#include "geosweep/containment.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "geosweep/index_trees.hpp"

namespace geosweep {

// ---------------------------------------------------------------------------
// SweepIntervalTree

void SweepIntervalTree::insert(const Interval& iv) {
  const std::size_t owner = iv.owner.value();
  erase(owner);
  by_lo_.emplace(std::make_pair(iv.lo, owner), iv.hi);
  lo_of_[owner] = iv.lo;
}

void SweepIntervalTree::erase(std::size_t owner) {
  const auto it = lo_of_.find(owner);
  if (it == lo_of_.end()) return;
  by_lo_.erase({it->second, owner});
  lo_of_.erase(it);
}

std::optional<Interval> SweepIntervalTree::find(std::size_t owner) const {
  const auto it = lo_of_.find(owner);
  if (it == lo_of_.end()) return std::nullopt;
  return Interval{it->second, by_lo_.at({it->second, owner}), owner};
}

std::vector<std::size_t> SweepIntervalTree::overlapping(double lo, double hi) const {
  std::vector<std::size_t> out;
  auto it = by_lo_.upper_bound({lo, static_cast<std::size_t>(-1)});
  if (it != by_lo_.begin()) {
    const auto prev = std::prev(it);
    if (prev->second >= lo) out.push_back(prev->first.second);
  }
  for (; it != by_lo_.end() && it->first.first <= hi; ++it) out.push_back(it->first.second);
  return out;
}

bool SweepIntervalTree::disjoint(double slack) const {
  const std::pair<const std::pair<double, std::size_t>, double>* prev = nullptr;
  for (const auto& item : by_lo_) {
    if (prev && item.first.first < prev->second - slack) return false;
    prev = &item;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Circles

std::vector<ContainmentFact> sweep_half_circles(std::span<const Circle> circles, SweepDirection direction,
                                                const std::function<void(const SweepIntervalTree&)>& after_event) {
  // The right-to-left sweep over left halves is the left-to-right sweep of
  // the mirror image.
  std::vector<Circle> c(circles.begin(), circles.end());
  if (direction == SweepDirection::RightToLeft) {
    for (Circle& k : c) k.cx = -k.cx;
  }

  struct Event {
    double x;
    int kind;  // 0 = half-circle ends, 1 = begins
    double r;
    std::size_t id;
  };
  std::vector<Event> events;
  events.reserve(2 * c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    events.push_back({c[i].cx, 1, c[i].r, i});
    events.push_back({c[i].cx + c[i].r, 0, c[i].r, i});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.x, a.kind, a.r, a.id) < std::tie(b.x, b.kind, b.r, b.id);
  });

  auto inside = [](const Interval& in, const Interval& out) {
    return out.lo - kEpsGeom <= in.lo && in.hi <= out.hi + kEpsGeom;
  };

  SweepIntervalTree tree;
  std::vector<ContainmentFact> facts;
  for (const Event& e : events) {
    if (e.kind == 0) {
      tree.erase(e.id);
    } else {
      const std::size_t i = e.id;
      const Interval mine{c[i].cy - c[i].r, c[i].cy + c[i].r, i};
      bool swallowed = false;
      for (std::size_t j : tree.overlapping(mine.lo, mine.hi)) {
        tree.erase(j);
        const auto fresh = circle_chord_at_x(c[j], e.x, j);
        if (!fresh) continue;
        const bool j_in_i = inside(*fresh, mine);
        const bool i_in_j = inside(mine, *fresh);
        if (j_in_i) facts.push_back({j, i});
        if (i_in_j) {
          facts.push_back({i, j});
          swallowed = true;
        }
        if (!j_in_i || i_in_j) tree.insert(*fresh);
      }
      if (!swallowed) tree.insert(mine);
    }
    if (after_event) after_event(tree);
  }
  return facts;
}

std::vector<std::size_t> ContainmentReport::contained_ids() const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].is_contained) ids.push_back(i);
  }
  return ids;
}

ContainmentReport circle_containment(std::span<const Circle> circles) {
  ContainmentReport report;
  report.entries.resize(circles.size());
  for (SweepDirection dir : {SweepDirection::LeftToRight, SweepDirection::RightToLeft}) {
    for (const ContainmentFact& f : sweep_half_circles(circles, dir)) {
      if (f.inner == f.outer) continue;
      ContainmentEntry& entry = report.entries[f.inner];
      entry.is_contained = true;
      if (!entry.container || f.outer < *entry.container) entry.container = f.outer;
      report.entries[f.outer].contains_another = true;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Boxes

namespace {

void check_boxes(std::span<const HyperRect> boxes, std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  for (const HyperRect& b : boxes) validate_box(b, d);
}

// Intervals: the best container of i is the box with the largest right end
// among those starting at or before i (self excluded).
ContainmentReport interval_containment(std::span<const HyperRect> boxes) {
  struct Best {
    double hi;
    std::size_t id;
  };
  auto better = [](const Best& a, const Best& b) { return a.hi > b.hi || (a.hi == b.hi && a.id < b.id); };

  std::vector<std::size_t> order(boxes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(boxes[a].lo[0], a) < std::tie(boxes[b].lo[0], b);
  });

  ContainmentReport report;
  report.entries.resize(boxes.size());
  std::optional<Best> first, second;
  auto offer = [&](Best cand) {
    if (!first || better(cand, *first)) {
      second = first;
      first = cand;
    } else if (!second || better(cand, *second)) {
      second = cand;
    }
  };
  for (std::size_t g = 0; g < order.size();) {
    std::size_t end = g;
    while (end < order.size() && boxes[order[end]].lo[0] == boxes[order[g]].lo[0]) {
      offer({boxes[order[end]].hi[0], order[end]});
      ++end;
    }
    for (std::size_t k = g; k < end; ++k) {
      const std::size_t i = order[k];
      const std::optional<Best>& cand = first->id != i ? first : second;
      if (cand && cand->hi >= boxes[i].hi[0]) {
        report.entries[i].container = cand->id;
        report.entries[i].is_contained = true;
        report.entries[cand->id].contains_another = true;
      }
    }
    g = end;
  }
  return report;
}

}  // namespace

ContainmentReport rect_containment(std::span<const HyperRect> boxes, std::size_t d) {
  check_boxes(boxes, d);
  if (d == 1) return interval_containment(boxes);

  ContainmentReport report;
  report.entries.resize(boxes.size());
  if (boxes.empty()) return report;

  // Sweep along the last dimension. Box i becomes the point
  // (lo_0..lo_{d-1}, hi_0..hi_{d-3}) weighted by hi_{d-2}.
  const std::size_t k = 2 * d - 2;
  const std::size_t sweep = d - 1;
  const std::size_t weight_dim = d - 2;
  std::vector<WeightedPoint> pts;
  pts.reserve(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    WeightedPoint p;
    p.id = i;
    p.coords.assign(boxes[i].lo.begin(), boxes[i].lo.end());
    p.coords.insert(p.coords.end(), boxes[i].hi.begin(), boxes[i].hi.begin() + static_cast<std::ptrdiff_t>(d - 2));
    pts.push_back(std::move(p));
  }
  RangeTree tree(pts, k);

  struct Event {
    double x;
    int kind;  // 0 = activate at lower end, 1 = query/deactivate at upper end
    std::size_t id;
  };
  std::vector<Event> events;
  events.reserve(2 * boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    events.push_back({boxes[i].lo[sweep], 0, i});
    events.push_back({boxes[i].hi[sweep], 1, i});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.x, a.kind, a.id) < std::tie(b.x, b.kind, b.id);
  });

  QueryBox query(k);
  for (std::size_t e = 0; e < events.size();) {
    std::size_t end = e;
    while (end < events.size() && events[end].x == events[e].x && events[end].kind == events[e].kind) ++end;
    if (events[e].kind == 0) {
      for (std::size_t q = e; q < end; ++q) {
        const std::size_t i = events[q].id;
        tree.set_weight(i, boxes[i].hi[weight_dim]);
      }
    } else {
      for (std::size_t q = e; q < end; ++q) {
        const std::size_t i = events[q].id;
        const HyperRect& b = boxes[i];
        for (std::size_t p = 0; p < d; ++p) query[p] = {kNegInf, b.lo[p]};
        for (std::size_t p = 0; p + 2 < d; ++p) query[d + p] = {b.hi[p], kPosInf};
        tree.set_weight(i, kNegInf);
        const MaxResult best = tree.max_query(query);
        tree.set_weight(i, b.hi[weight_dim]);
        if (best.id && best.weight >= b.hi[weight_dim]) {
          report.entries[i].container = *best.id;
          report.entries[i].is_contained = true;
          report.entries[*best.id].contains_another = true;
        }
      }
      for (std::size_t q = e; q < end; ++q) tree.set_weight(events[q].id, kNegInf);
    }
    e = end;
  }
  return report;
}

ContainmentCounts rect_containment_counts(std::span<const HyperRect> boxes, std::size_t d) {
  check_boxes(boxes, d);
  ContainmentCounts counts;
  counts.num_containers.assign(boxes.size(), 0);
  counts.num_contained.assign(boxes.size(), 0);
  if (boxes.empty()) return counts;

  std::vector<WeightedPoint> pts;
  pts.reserve(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    WeightedPoint p;
    p.id = i;
    p.coords.assign(boxes[i].lo.begin(), boxes[i].lo.end());
    p.coords.insert(p.coords.end(), boxes[i].hi.begin(), boxes[i].hi.end());
    pts.push_back(std::move(p));
  }
  const RangeTree tree(pts, 2 * d);

  QueryBox outer(2 * d), inner(2 * d);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t p = 0; p < d; ++p) {
      outer[p] = {kNegInf, boxes[i].lo[p]};
      outer[d + p] = {boxes[i].hi[p], kPosInf};
      inner[p] = {boxes[i].lo[p], kPosInf};
      inner[d + p] = {kNegInf, boxes[i].hi[p]};
    }
    // Each box lies in both of its own ranges.
    counts.num_containers[i] = tree.count(outer) - 1;
    counts.num_contained[i] = tree.count(inner) - 1;
  }
  return counts;
}

}  // namespace geosweep
