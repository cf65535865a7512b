#pragma once

// Test-only reference helpers. Nothing here is shared with the library's fast
// paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "geosweep/geom_core.hpp"
#include "geosweep/index_trees.hpp"

namespace testsupport {

using geosweep::Circle;
using geosweep::Interval;
using geosweep::Point2;

inline bool inside_any(double y, std::span<const Interval> pieces) {
  for (const Interval& p : pieces) {
    if (p.lo <= y && y <= p.hi) return true;
  }
  return false;
}

/// Fraction-free measure of the union of pieces inside [lo, hi] by probing.
inline double sampled_measure(std::span<const Interval> pieces, double lo, double hi, std::size_t probes) {
  const double step = (hi - lo) / static_cast<double>(probes);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < probes; ++k) {
    if (inside_any(lo + (static_cast<double>(k) + 0.5) * step, pieces)) ++hits;
  }
  return static_cast<double>(hits) * step;
}

/// Uncovered probe points of C' = C(center, r - R) on a res x res grid.
inline std::optional<Point2> grid_uncovered(std::span<const Point2> points, double R, const Circle& container,
                                            std::size_t res) {
  const double rr = container.r - R;
  for (std::size_t a = 0; a < res; ++a) {
    const double x = container.cx - rr + 2.0 * rr * (static_cast<double>(a) + 0.5) / static_cast<double>(res);
    for (std::size_t b = 0; b < res; ++b) {
      const double y = container.cy - rr + 2.0 * rr * (static_cast<double>(b) + 0.5) / static_cast<double>(res);
      if (std::hypot(x - container.cx, y - container.cy) > rr) continue;
      bool hit = false;
      for (const Point2& p : points) {
        if (std::hypot(x - p.x, y - p.y) <= R) {
          hit = true;
          break;
        }
      }
      if (!hit) return Point2{x, y};
    }
  }
  return std::nullopt;
}

/// Classical patience sorting; strict increase.
inline std::size_t patience_lis(const std::vector<double>& v) {
  std::vector<double> piles;
  for (double x : v) {
    auto it = std::lower_bound(piles.begin(), piles.end(), x);
    if (it == piles.end()) {
      piles.push_back(x);
    } else {
      *it = x;
    }
  }
  return piles.size();
}

/// O(n^2) longest strictly alternating subsequence.
inline std::size_t quadratic_alternating(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) return 0;
  std::vector<std::size_t> up(n, 1), down(n, 1);
  std::size_t best = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (v[i] > v[j]) up[i] = std::max(up[i], down[j] + 1);
      if (v[i] < v[j]) down[i] = std::max(down[i], up[j] + 1);
    }
    best = std::max({best, up[i], down[i]});
  }
  return best;
}

struct ScanPoint {
  std::vector<double> coords;
  double weight = geosweep::kNegInf;
  std::size_t id = 0;
};

inline bool in_box(const ScanPoint& p, std::span<const geosweep::Range> box) {
  for (std::size_t j = 0; j < box.size(); ++j) {
    if (!(box[j].lo <= p.coords[j] && p.coords[j] <= box[j].hi)) return false;
  }
  return true;
}

/// Linear scan; ties to the smaller id, -inf means inactive.
inline geosweep::MaxResult scan_max(std::span<const ScanPoint> pts, std::span<const geosweep::Range> box) {
  geosweep::MaxResult best;
  for (const ScanPoint& p : pts) {
    if (p.weight == geosweep::kNegInf || !in_box(p, box)) continue;
    if (!best.id || p.weight > best.weight || (p.weight == best.weight && p.id < *best.id)) {
      best = {p.weight, p.id};
    }
  }
  return best;
}

inline std::size_t scan_count(std::span<const ScanPoint> pts, std::span<const geosweep::Range> box) {
  return static_cast<std::size_t>(std::count_if(pts.begin(), pts.end(), [&](const ScanPoint& p) { return in_box(p, box); }));
}

inline geosweep::Range random_range(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> pick(lo, hi);
  int a = pick(rng), b = pick(rng);
  if (a > b) std::swap(a, b);
  geosweep::Range r{static_cast<double>(a), static_cast<double>(b)};
  const int roll = std::uniform_int_distribution<int>(0, 9)(rng);
  if (roll == 0) r.lo = geosweep::kNegInf;
  if (roll == 1) r.hi = geosweep::kPosInf;
  return r;
}

}  // namespace testsupport
