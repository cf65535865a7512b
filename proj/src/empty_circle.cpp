#include "geosweep/empty_circle.hpp"

#include <algorithm>
#include <cmath>

namespace geosweep {

namespace {

constexpr int kMaxProbes = 64;

bool same_circle(const Circle& a, const Circle& b) {
  return std::hypot(a.cx - b.cx, a.cy - b.cy) <= kEpsGeom && std::abs(a.r - b.r) <= kEpsGeom;
}

void append_crossings(std::vector<double>& xs, const Circle& a, const Circle& b) {
  if (same_circle(a, b)) return;
  for (double x : circle_circle_intersection_xs(a, b)) xs.push_back(x);
}

// Integral of sqrt(r^2 - (x - cx)^2) over [x1, x2]: the circular sector
// between the two arc points, corrected by the two triangles they form with
// the center.
double cap_area(const Circle& c, double x1, double x2) {
  if (c.r <= 0.0) return 0.0;
  const double u1 = std::clamp(x1 - c.cx, -c.r, c.r);
  const double u2 = std::clamp(x2 - c.cx, -c.r, c.r);
  const double phi1 = std::acos(u1 / c.r);
  const double phi2 = std::acos(u2 / c.r);
  const double h1 = std::sqrt(std::max(0.0, c.r * c.r - u1 * u1));
  const double h2 = std::sqrt(std::max(0.0, c.r * c.r - u2 * u2));
  const double sector = 0.5 * c.r * c.r * (phi1 - phi2);
  return sector + 0.5 * (u2 * h2 - u1 * h1);
}

}  // namespace

SlabDecomposition SlabDecomposition::from(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  SlabDecomposition slabs;
  for (double x : xs) {
    if (x < lo - kEpsGeom || x > hi + kEpsGeom) continue;
    x = std::clamp(x, lo, hi);
    if (slabs.xs.empty() || x - slabs.xs.back() > kEpsGeom) slabs.xs.push_back(x);
  }
  return slabs;
}

CoverageDecision circle_coverage_decision(std::span<const Point2> points, double radius,
                                          const Circle& container) {
  if (!(radius >= 0.0) || radius > container.r + kEpsGeom) {
    throw Error(ErrorCode::InvalidArgument, "probe radius must lie in [0, container radius]");
  }
  const Point2 center{container.cx, container.cy};
  const Circle shrunk{container.cx, container.cy, std::max(0.0, container.r - radius)};
  if (points.empty()) return {false, center};

  if (shrunk.r <= kEpsGeom) {
    for (const Point2& p : points) {
      if (std::hypot(p.x - center.x, p.y - center.y) <= radius + kEpsCov) return {true, std::nullopt};
    }
    return {false, center};
  }

  std::vector<Circle> disks;
  disks.reserve(points.size());
  for (const Point2& p : points) disks.push_back({p.x, p.y, radius});

  std::vector<double> xs{shrunk.cx - shrunk.r, shrunk.cx + shrunk.r};
  for (std::size_t i = 0; i < disks.size(); ++i) {
    xs.push_back(disks[i].cx - radius);
    xs.push_back(disks[i].cx);
    xs.push_back(disks[i].cx + radius);
    append_crossings(xs, disks[i], shrunk);
    for (std::size_t j = i + 1; j < disks.size(); ++j) append_crossings(xs, disks[i], disks[j]);
  }
  const SlabDecomposition slabs =
      SlabDecomposition::from(std::move(xs), shrunk.cx - shrunk.r, shrunk.cx + shrunk.r);

  std::vector<Interval> chords;
  chords.reserve(disks.size());
  for (std::size_t s = 0; s < slabs.slab_count(); ++s) {
    const double xm = slabs.midline(s);
    const auto target = circle_chord_at_x(shrunk, xm);
    if (!target) continue;
    chords.clear();
    for (std::size_t i = 0; i < disks.size(); ++i) {
      if (auto chord = circle_chord_at_x(disks[i], xm, i)) chords.push_back(*chord);
    }
    const CoverageResult cov = cover_interval(*target, chords);
    if (!cov.covered) {
      const Interval& gap = cov.gaps.front();
      const double y = std::clamp(0.5 * (gap.lo + gap.hi), target->lo, target->hi);
      return {false, Point2{xm, y}};
    }
  }
  return {true, std::nullopt};
}

EmptyCircleResult largest_empty_circle(std::span<const Point2> points, const Circle& container,
                                       std::optional<double> tol) {
  if (!(container.r > 0.0)) throw Error(ErrorCode::InvalidArgument, "container radius must be positive");
  const double step = tol.value_or(1e-7 * container.r);
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  EmptyCircleResult result;
  result.center = {container.cx, container.cy};

  const CoverageDecision top = circle_coverage_decision(points, container.r, container);
  result.iterations = 1;
  if (!top.covered) {
    result.radius = container.r;
    result.center = *top.witness;
    return result;
  }

  // A zero-radius circle at the container center is trivially empty.
  double lo = 0.0;
  double hi = container.r;
  while (hi - lo > step && result.iterations < kMaxProbes) {
    const double mid = 0.5 * (lo + hi);
    const CoverageDecision probe = circle_coverage_decision(points, mid, container);
    ++result.iterations;
    if (probe.covered) {
      hi = mid;
    } else {
      lo = mid;
      result.center = *probe.witness;
    }
  }
  result.radius = lo;
  return result;
}

double union_area_circles(std::span<const Circle> circles) {
  std::vector<Circle> live;
  for (const Circle& c : circles) {
    if (!(c.r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative radius");
    if (c.r > 0.0) live.push_back(c);
  }
  std::vector<double> xs;
  for (std::size_t i = 0; i < live.size(); ++i) {
    xs.push_back(live[i].cx - live[i].r);
    xs.push_back(live[i].cx);
    xs.push_back(live[i].cx + live[i].r);
    for (std::size_t j = i + 1; j < live.size(); ++j) append_crossings(xs, live[i], live[j]);
  }
  const SlabDecomposition slabs = SlabDecomposition::from(std::move(xs));

  double area = 0.0;
  std::vector<Interval> chords;
  for (std::size_t s = 0; s < slabs.slab_count(); ++s) {
    const double x1 = slabs.xs[s];
    const double x2 = slabs.xs[s + 1];
    const double xm = slabs.midline(s);
    chords.clear();
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (auto chord = circle_chord_at_x(live[i], xm, i)) chords.push_back(*chord);
    }
    for (const UnionInterval& piece : union_of_intervals(chords)) {
      const Circle& top = live[*piece.high_owner];
      const Circle& bottom = live[*piece.low_owner];
      // Rectangle between the two centers' horizontals, plus the upper cap of
      // the top circle and the lower cap of the bottom circle.
      area += (top.cy - bottom.cy) * (x2 - x1) + cap_area(top, x1, x2) + cap_area(bottom, x1, x2);
    }
  }
  return area;
}

namespace {

struct Edge {
  Point2 a, b;

  bool vertical() const { return a.x == b.x; }
  double y_at(double x) const { return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x); }
};

std::optional<double> crossing_x(const Edge& e, const Edge& f) {
  const double rx = e.b.x - e.a.x, ry = e.b.y - e.a.y;
  const double sx = f.b.x - f.a.x, sy = f.b.y - f.a.y;
  const double denom = rx * sy - ry * sx;
  if (denom == 0.0) return std::nullopt;
  const double qx = f.a.x - e.a.x, qy = f.a.y - e.a.y;
  const double t = (qx * sy - qy * sx) / denom;
  const double u = (qx * ry - qy * rx) / denom;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return e.a.x + t * rx;
}

}  // namespace

double union_area_polygons(std::span<const Polygon> polys) {
  std::vector<Triangle> triangles;
  for (const Polygon& poly : polys) {
    for (const Triangle& t : triangulate_polygon(poly)) triangles.push_back(t);
  }
  std::vector<Edge> edges;
  edges.reserve(3 * triangles.size());
  std::vector<double> xs;
  for (const Triangle& t : triangles) {
    edges.push_back({t.a, t.b});
    edges.push_back({t.b, t.c});
    edges.push_back({t.c, t.a});
    xs.insert(xs.end(), {t.a.x, t.b.x, t.c.x});
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (i / 3 == j / 3) continue;  // same triangle: meet only at vertices
      if (auto x = crossing_x(edges[i], edges[j])) xs.push_back(*x);
    }
  }
  const SlabDecomposition slabs = SlabDecomposition::from(std::move(xs));

  double area = 0.0;
  std::vector<Interval> cuts;
  // Bottom and top edge of each triangle on the current midline.
  std::vector<std::pair<std::size_t, std::size_t>> rims(triangles.size());
  for (std::size_t s = 0; s < slabs.slab_count(); ++s) {
    const double x1 = slabs.xs[s];
    const double x2 = slabs.xs[s + 1];
    const double xm = slabs.midline(s);
    cuts.clear();
    for (std::size_t t = 0; t < triangles.size(); ++t) {
      std::optional<std::size_t> low, high;
      for (std::size_t k = 3 * t; k < 3 * t + 3; ++k) {
        const Edge& e = edges[k];
        if (e.vertical() || xm < std::min(e.a.x, e.b.x) || xm > std::max(e.a.x, e.b.x)) continue;
        (low ? high : low) = k;
      }
      if (!low || !high) continue;
      if (edges[*low].y_at(xm) > edges[*high].y_at(xm)) std::swap(low, high);
      rims[t] = {*low, *high};
      cuts.push_back({edges[*low].y_at(xm), edges[*high].y_at(xm), t});
    }
    for (const UnionInterval& piece : union_of_intervals(cuts)) {
      const Edge& bottom = edges[rims[*piece.low_owner].first];
      const Edge& top = edges[rims[*piece.high_owner].second];
      const double left = top.y_at(x1) - bottom.y_at(x1);
      const double right = top.y_at(x2) - bottom.y_at(x2);
      area += 0.5 * (left + right) * (x2 - x1);
    }
  }
  return area;
}

}  // namespace geosweep
