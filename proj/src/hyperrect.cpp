#include "geosweep/hyperrect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace geosweep {

namespace {

constexpr int kMaxProbes = 64;

using BoxRefs = std::vector<const HyperRect*>;

std::vector<double> endpoints(const BoxRefs& boxes, std::size_t dim) {
  std::vector<double> e;
  e.reserve(2 * boxes.size());
  for (const HyperRect* b : boxes) {
    e.push_back(b->lo[dim]);
    e.push_back(b->hi[dim]);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

// Measure of the union restricted to the first `dims` coordinates.
double measure(const BoxRefs& boxes, std::size_t dims) {
  if (boxes.empty()) return 0.0;
  const std::size_t dim = dims - 1;
  if (dims == 1) {
    std::vector<std::pair<double, double>> spans;
    spans.reserve(boxes.size());
    for (const HyperRect* b : boxes) spans.emplace_back(b->lo[0], b->hi[0]);
    std::sort(spans.begin(), spans.end());
    double total = 0.0;
    double lo = spans.front().first;
    double hi = spans.front().second;
    for (const auto& [a, b] : spans) {
      if (a > hi) {
        total += hi - lo;
        lo = a;
        hi = b;
      } else {
        hi = std::max(hi, b);
      }
    }
    return total + (hi - lo);
  }

  const std::vector<double> cuts = endpoints(boxes, dim);
  double total = 0.0;
  BoxRefs active;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double len = cuts[j + 1] - cuts[j];
    active.clear();
    for (const HyperRect* b : boxes) {
      if (b->lo[dim] <= cuts[j] && b->hi[dim] >= cuts[j + 1]) active.push_back(b);
    }
    if (!active.empty()) total += len * measure(active, dims - 1);
  }
  return total;
}

// Center of some primitive cell (inside `region`) that no box touches, using
// the first `dims` coordinates. Boxes must already lie inside the region.
std::optional<std::vector<double>> uncovered_cell(const BoxRefs& boxes, const HyperRect& region,
                                                  std::size_t dims) {
  const std::size_t dim = dims - 1;
  std::vector<double> cuts{region.lo[dim], region.hi[dim]};
  for (const HyperRect* b : boxes) {
    cuts.push_back(b->lo[dim]);
    cuts.push_back(b->hi[dim]);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  BoxRefs active;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    if (!(cuts[j + 1] > cuts[j])) continue;
    active.clear();
    for (const HyperRect* b : boxes) {
      if (b->lo[dim] <= cuts[j] && b->hi[dim] >= cuts[j + 1]) active.push_back(b);
    }
    const double mid = 0.5 * (cuts[j] + cuts[j + 1]);
    if (dims == 1) {
      if (active.empty()) return std::vector<double>{mid};
      continue;
    }
    if (auto inner = uncovered_cell(active, region, dims - 1)) {
      inner->push_back(mid);
      return inner;
    }
  }
  return std::nullopt;
}

}  // namespace

void validate_ratio(const AspectRatio& ratio, std::size_t d) {
  if (ratio.f.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "aspect ratio has " + std::to_string(ratio.f.size()) +
                                                  " factors, expected " + std::to_string(d));
  }
  if (d == 0 || ratio.f[0] != 1.0) throw Error(ErrorCode::InvalidArgument, "aspect ratio needs f[0] = 1");
  for (double f : ratio.f) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw Error(ErrorCode::InvalidArgument, "aspect ratio factors must be positive and finite");
    }
  }
}

double union_volume(std::span<const HyperRect> boxes, std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  BoxRefs refs;
  refs.reserve(boxes.size());
  for (const HyperRect& b : boxes) {
    validate_box(b, d);
    refs.push_back(&b);
  }
  return measure(refs, d);
}

double union_area_2d(std::span<const HyperRect> boxes) {
  std::vector<double> ys;
  struct Event {
    double x;
    int delta;
    double y1, y2;
  };
  std::vector<Event> events;
  for (const HyperRect& b : boxes) {
    validate_box(b, 2);
    if (b.lo[0] == b.hi[0] || b.lo[1] == b.hi[1]) continue;
    ys.push_back(b.lo[1]);
    ys.push_back(b.hi[1]);
    events.push_back({b.lo[0], +1, b.lo[1], b.hi[1]});
    events.push_back({b.hi[0], -1, b.lo[1], b.hi[1]});
  }
  if (events.empty()) return 0.0;
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });

  // Node i covers elementary y-gaps [lo, hi): cover count and covered length.
  const std::size_t gaps = ys.size() - 1;
  std::vector<int> cover(4 * gaps, 0);
  std::vector<double> covered(4 * gaps, 0.0);
  auto update = [&](auto&& self, std::size_t node, std::size_t lo, std::size_t hi, std::size_t a,
                    std::size_t b, int delta) -> void {
    if (b <= lo || hi <= a) return;
    if (a <= lo && hi <= b) {
      cover[node] += delta;
    } else {
      const std::size_t mid = (lo + hi) / 2;
      self(self, 2 * node, lo, mid, a, b, delta);
      self(self, 2 * node + 1, mid, hi, a, b, delta);
    }
    if (cover[node] > 0) {
      covered[node] = ys[hi] - ys[lo];
    } else if (hi - lo == 1) {
      covered[node] = 0.0;
    } else {
      covered[node] = covered[2 * node] + covered[2 * node + 1];
    }
  };

  double area = 0.0;
  double last_x = events.front().x;
  for (const Event& e : events) {
    area += covered[1] * (e.x - last_x);
    last_x = e.x;
    const auto a = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), e.y1) - ys.begin());
    const auto b = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), e.y2) - ys.begin());
    update(update, 1, 0, gaps, a, b, e.delta);
  }
  return area;
}

EmptyRectProbe empty_rect_feasible(std::span<const Point> points, const HyperRect& container,
                                   const AspectRatio& ratio, double l1) {
  const std::size_t d = container.dim();
  validate_box(container, d);
  validate_ratio(ratio, d);
  for (const Point& p : points) {
    if (p.dim() != d) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from container");
  }
  if (!(l1 >= 0.0)) throw Error(ErrorCode::InvalidArgument, "l1 must be non-negative");

  // Shrunken anchor region R' = [xa, xb - l1 f].
  std::vector<double> len(d);
  HyperRect region{container.lo, container.lo};
  std::vector<std::size_t> free_dims;
  for (std::size_t j = 0; j < d; ++j) {
    len[j] = l1 * ratio.f[j];
    const double extent = container.extent(j);
    if (len[j] > extent * (1.0 + 1e-12)) {
      throw Error(ErrorCode::DoesNotFit, "side " + std::to_string(len[j]) + " exceeds container extent " +
                                             std::to_string(extent) + " in dimension " + std::to_string(j));
    }
    region.hi[j] = std::max(container.lo[j], container.hi[j] - len[j]);
    if (region.hi[j] > region.lo[j]) free_dims.push_back(j);
  }

  // Blocked anchors for point p form the open box (p - len, p). Zero-extent
  // dimensions of R' are pinned at xa and test that open box directly.
  std::vector<HyperRect> blockers;
  for (const Point& p : points) {
    bool pinned_hit = true;
    HyperRect b;
    for (std::size_t j = 0; j < d && pinned_hit; ++j) {
      const bool is_free = std::find(free_dims.begin(), free_dims.end(), j) != free_dims.end();
      if (!is_free) {
        pinned_hit = p[j] - len[j] < region.lo[j] && region.lo[j] < p[j];
        continue;
      }
      const double lo = std::max(p[j] - len[j], region.lo[j]);
      const double hi = std::min(p[j], region.hi[j]);
      if (lo > hi) pinned_hit = false;
      b.lo.push_back(lo);
      b.hi.push_back(hi);
    }
    if (pinned_hit) blockers.push_back(std::move(b));
  }

  EmptyRectProbe probe;
  if (free_dims.empty()) {
    probe.feasible = blockers.empty();
    if (probe.feasible) probe.witness = region.lo;
    return probe;
  }

  if (blockers.empty()) {
    probe.feasible = true;
    probe.witness = region.lo;
    return probe;
  }

  HyperRect sub;
  for (std::size_t j : free_dims) {
    sub.lo.push_back(region.lo[j]);
    sub.hi.push_back(region.hi[j]);
  }
  BoxRefs refs;
  for (const HyperRect& b : blockers) refs.push_back(&b);
  // Decided on the arrangement cells rather than by comparing volumes: near
  // the optimum the gap is thin enough to vanish under a relative tolerance.
  const auto cell = uncovered_cell(refs, sub, free_dims.size());
  if (!cell) return probe;
  std::vector<double> anchor = region.lo;
  for (std::size_t i = 0; i < free_dims.size(); ++i) anchor[free_dims[i]] = (*cell)[i];
  probe.feasible = true;
  probe.witness = std::move(anchor);
  return probe;
}

EmptyRectResult largest_empty_hyperrect(std::span<const Point> points, const HyperRect& container,
                                        const AspectRatio& ratio, std::optional<double> tol) {
  const std::size_t d = container.dim();
  validate_box(container, d);
  validate_ratio(ratio, d);

  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d; ++j) hi = std::min(hi, container.extent(j) / ratio.f[j]);
  const double step = tol.value_or(1e-7 * hi);
  if (hi > 0.0 && !(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  EmptyRectResult result;
  result.anchor = container.lo;
  auto finish = [&](double l1) {
    result.l1 = l1;
    result.lengths.resize(d);
    for (std::size_t j = 0; j < d; ++j) result.lengths[j] = l1 * ratio.f[j];
    return result;
  };

  if (hi == 0.0) return finish(0.0);
  const EmptyRectProbe top = empty_rect_feasible(points, container, ratio, hi);
  result.iterations = 1;
  if (top.feasible) {
    result.anchor = *top.witness;
    return finish(hi);
  }

  double lo = 0.0;
  while (hi - lo > step && result.iterations < kMaxProbes) {
    const double mid = 0.5 * (lo + hi);
    const EmptyRectProbe probe = empty_rect_feasible(points, container, ratio, mid);
    ++result.iterations;
    if (probe.feasible) {
      lo = mid;
      result.anchor = *probe.witness;
    } else {
      hi = mid;
    }
  }
  return finish(lo);
}

}  // namespace geosweep
