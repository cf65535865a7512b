#include "geosweep/geom_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

namespace geosweep {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IdenticalCircles: return "IdenticalCircles";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::UnknownCoordinate: return "UnknownCoordinate";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DoesNotFit: return "DoesNotFit";
    case ErrorCode::InvalidAutomaton: return "InvalidAutomaton";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

double HyperRect::volume() const {
  double v = 1.0;
  for (std::size_t p = 0; p < dim(); ++p) v *= std::max(0.0, extent(p));
  return v;
}

bool HyperRect::contains(std::span<const double> point) const {
  for (std::size_t p = 0; p < dim(); ++p) {
    if (point[p] < lo[p] || point[p] > hi[p]) return false;
  }
  return true;
}

bool HyperRect::contains(const HyperRect& other) const {
  for (std::size_t p = 0; p < dim(); ++p) {
    if (other.lo[p] < lo[p] || other.hi[p] > hi[p]) return false;
  }
  return true;
}

void validate_box(const HyperRect& box, std::size_t d) {
  if (box.lo.size() != d || box.hi.size() != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "box has " + std::to_string(box.lo.size()) + "/" + std::to_string(box.hi.size()) +
                    " coordinates, expected " + std::to_string(d));
  }
  for (std::size_t p = 0; p < d; ++p) {
    if (!std::isfinite(box.lo[p]) || !std::isfinite(box.hi[p]) || box.lo[p] > box.hi[p]) {
      throw Error(ErrorCode::InvalidArgument, "box needs finite lo <= hi in every dimension");
    }
  }
}

double Triangle::area() const {
  return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double signed_area(std::span<const Point2> vertices) {
  double twice = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = vertices[i];
    const Point2& q = vertices[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

std::vector<double> circle_circle_intersection_xs(const Circle& c1, const Circle& c2) {
  const double dx = c2.cx - c1.cx;
  const double dy = c2.cy - c1.cy;
  const double d = std::hypot(dx, dy);
  if (d <= kEpsGeom && std::abs(c1.r - c2.r) <= kEpsGeom) {
    throw Error(ErrorCode::IdenticalCircles, "circles coincide");
  }
  if (d <= kEpsGeom) return {};  // concentric, different radii
  const double outer = c1.r + c2.r;
  const double inner = std::abs(c1.r - c2.r);
  if (d > outer + kEpsGeom || d < inner - kEpsGeom) return {};

  const double a = (d * d + c1.r * c1.r - c2.r * c2.r) / (2.0 * d);
  const double foot_x = c1.cx + a * dx / d;
  if (std::abs(d - outer) <= kEpsGeom || std::abs(d - inner) <= kEpsGeom) return {foot_x};

  const double h = std::sqrt(std::max(0.0, c1.r * c1.r - a * a));
  std::vector<double> xs{foot_x - h * dy / d, foot_x + h * dy / d};
  std::sort(xs.begin(), xs.end());
  return xs;
}

std::optional<Interval> circle_chord_at_x(const Circle& c, double x, std::optional<OwnerId> owner) {
  const double u = x - c.cx;
  if (std::abs(u) > c.r) return std::nullopt;
  const double h = std::sqrt(std::max(0.0, c.r * c.r - u * u));
  return Interval{c.cy - h, c.cy + h, owner};
}

CoverageResult cover_interval(const Interval& target, std::span<const Interval> pieces, double slack) {
  struct Event {
    double y;
    int delta;
  };
  std::vector<Event> events;
  events.reserve(2 * pieces.size());
  for (const Interval& piece : pieces) {
    const double lo = std::max(piece.lo, target.lo);
    const double hi = std::min(piece.hi, target.hi);
    if (lo > hi) continue;
    events.push_back({lo, +1});
    events.push_back({hi, -1});
  }
  // Closed pieces: at a shared coordinate, openings are counted before closings.
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.y, b.delta) < std::tie(b.y, a.delta);
  });

  std::vector<Interval> raw;
  auto add_gap = [&raw](double lo, double hi) {
    if (!raw.empty() && raw.back().hi >= lo) {
      raw.back().hi = std::max(raw.back().hi, hi);
    } else {
      raw.push_back({lo, hi, std::nullopt});
    }
  };

  double prev = target.lo;
  int open = 0;
  for (const Event& e : events) {
    if (open == 0 && e.y > prev) add_gap(prev, e.y);
    open += e.delta;
    prev = std::max(prev, e.y);
  }
  if (open == 0 && target.hi > prev) add_gap(prev, target.hi);

  CoverageResult result;
  for (const Interval& gap : raw) {
    if (gap.length() > slack) result.gaps.push_back(gap);
  }
  result.covered = result.gaps.empty();
  return result;
}

std::vector<UnionInterval> union_of_intervals(std::span<const Interval> pieces) {
  std::vector<const Interval*> order;
  order.reserve(pieces.size());
  for (const Interval& piece : pieces) order.push_back(&piece);
  std::sort(order.begin(), order.end(), [](const Interval* a, const Interval* b) {
    return std::tie(a->lo, a->owner) < std::tie(b->lo, b->owner);
  });

  std::vector<UnionInterval> out;
  for (const Interval* piece : order) {
    if (!out.empty() && piece->lo <= out.back().hi) {
      if (piece->hi > out.back().hi) {
        out.back().hi = piece->hi;
        out.back().high_owner = piece->owner;
      }
      continue;
    }
    out.push_back({piece->lo, piece->hi, piece->owner, piece->owner});
  }
  return out;
}

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) { return (v > 0) - (v < 0); }

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_touch(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const int o1 = sign(cross(a, b, c));
  const int o2 = sign(cross(a, b, d));
  const int o3 = sign(cross(c, d, a));
  const int o4 = sign(cross(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

void check_simple(std::span<const Point2> v) {
  const std::size_t n = v.size();
  if (n < 3) throw Error(ErrorCode::NotSimple, "polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == v[(i + 1) % n]) throw Error(ErrorCode::NotSimple, "duplicate consecutive vertex");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % n];
    // Adjacent edges may only share their common vertex.
    const Point2& c = v[(i + 2) % n];
    if (sign(cross(a, b, c)) == 0 && (c.x - b.x) * (a.x - b.x) + (c.y - b.y) * (a.y - b.y) > 0) {
      throw Error(ErrorCode::NotSimple, "edge folds back onto its neighbour");
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_touch(a, b, v[j], v[(j + 1) % n])) {
        throw Error(ErrorCode::NotSimple,
                    "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  if (signed_area(v) == 0.0) throw Error(ErrorCode::NotSimple, "polygon has zero area");
}

bool inside_closed(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
  return cross(a, b, p) >= 0 && cross(b, c, p) >= 0 && cross(c, a, p) >= 0;
}

}  // namespace

std::vector<Triangle> triangulate_polygon(const Polygon& poly) {
  check_simple(poly.vertices);
  std::vector<Point2> v = poly.vertices;
  if (signed_area(v) < 0) std::reverse(v.begin(), v.end());

  std::vector<std::size_t> ring(v.size());
  std::iota(ring.begin(), ring.end(), 0);
  std::vector<Triangle> out;
  out.reserve(v.size() - 2);

  auto is_ear = [&](std::size_t k, bool allow_flat) {
    const std::size_t m = ring.size();
    const Point2& a = v[ring[(k + m - 1) % m]];
    const Point2& b = v[ring[k]];
    const Point2& c = v[ring[(k + 1) % m]];
    const double turn = cross(a, b, c);
    const double scale = std::abs((b.x - a.x) * (c.y - b.y)) + std::abs((b.y - a.y) * (c.x - b.x));
    const bool flat = std::abs(turn) <= 1e-12 * scale;
    if (allow_flat ? !flat : (flat || turn < 0)) return false;
    for (std::size_t idx : ring) {
      const Point2& p = v[idx];
      if (p == a || p == b || p == c) continue;
      if (inside_closed(p, a, b, c)) return false;
    }
    return true;
  };

  while (ring.size() > 3) {
    std::optional<std::size_t> ear;
    for (std::size_t k = 0; k < ring.size() && !ear; ++k) {
      if (is_ear(k, false)) ear = k;
    }
    for (std::size_t k = 0; k < ring.size() && !ear; ++k) {
      if (is_ear(k, true)) ear = k;
    }
    if (!ear) throw Error(ErrorCode::NotSimple, "no ear found; polygon is not simple");
    const std::size_t m = ring.size();
    const std::size_t k = *ear;
    out.push_back({v[ring[(k + m - 1) % m]], v[ring[k]], v[ring[(k + 1) % m]]});
    ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(k));
  }
  out.push_back({v[ring[0]], v[ring[1]], v[ring[2]]});
  return out;
}

}  // namespace geosweep
