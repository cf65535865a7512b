#include "geosweep/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace geosweep::oracle {

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void too_large(const std::string& what) { throw Error(ErrorCode::TooLarge, what); }

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double union_volume(std::span<const HyperRect> boxes, std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  const std::size_t n = boxes.size();
  if (d == 2 && n > kLimits.union_volume_2d) too_large("grid oracle caps d = 2 at 200 boxes");
  if (d == 3 && n > kLimits.union_volume_3d) too_large("grid oracle caps d = 3 at 40 boxes");
  if (d >= 4 && std::pow(2.0 * static_cast<double>(n), static_cast<double>(d)) * static_cast<double>(n) > 5e7) {
    too_large("grid oracle work bound exceeded");
  }
  for (const HyperRect& b : boxes) validate_box(b, d);
  if (n == 0) return 0.0;

  std::vector<std::vector<double>> grid(d);
  for (std::size_t p = 0; p < d; ++p) {
    std::vector<double> c;
    for (const HyperRect& b : boxes) {
      c.push_back(b.lo[p]);
      c.push_back(b.hi[p]);
    }
    grid[p] = sorted_unique(std::move(c));
    if (grid[p].size() < 2) return 0.0;
  }

  // Odometer over all cells.
  std::vector<std::size_t> cell(d, 0);
  std::vector<double> center(d);
  double total = 0.0;
  while (true) {
    double vol = 1.0;
    for (std::size_t p = 0; p < d; ++p) {
      const double a = grid[p][cell[p]];
      const double b = grid[p][cell[p] + 1];
      center[p] = 0.5 * (a + b);
      vol *= b - a;
    }
    for (const HyperRect& b : boxes) {
      bool in = true;
      for (std::size_t p = 0; p < d && in; ++p) in = b.lo[p] <= center[p] && center[p] <= b.hi[p];
      if (in) {
        total += vol;
        break;
      }
    }
    std::size_t p = 0;
    while (p < d && ++cell[p] + 1 == grid[p].size()) cell[p++] = 0;
    if (p == d) break;
  }
  return total;
}

std::vector<ContainmentFact> containment_pairs(std::span<const Circle> circles) {
  if (circles.size() > kLimits.containment) too_large("pairwise oracle caps input at 2000 objects");
  std::vector<ContainmentFact> out;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = 0; j < circles.size(); ++j) {
      if (i == j) continue;
      const Circle& in = circles[j];
      const Circle& outer = circles[i];
      const double dist = std::hypot(in.cx - outer.cx, in.cy - outer.cy);
      if (dist + in.r <= outer.r + kEpsGeom) out.push_back({j, i});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ContainmentFact> containment_pairs(std::span<const HyperRect> boxes) {
  if (boxes.size() > kLimits.containment) too_large("pairwise oracle caps input at 2000 objects");
  std::vector<ContainmentFact> out;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = 0; j < boxes.size(); ++j) {
      if (i == j) continue;
      bool inside = true;
      for (std::size_t p = 0; p < boxes[i].dim() && inside; ++p) {
        inside = boxes[i].lo[p] <= boxes[j].lo[p] && boxes[j].hi[p] <= boxes[i].hi[p];
      }
      if (inside) out.push_back({j, i});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubsequenceResult nfa_dp(const SequenceInput& input, const Nfa& nfa) {
  const std::size_t n = input.size();
  const std::size_t m = nfa.initial.size();
  if (n > kLimits.nfa) too_large("direct DP oracle caps input at 300 points");
  if (nfa.final.size() != m) throw Error(ErrorCode::InvalidAutomaton, "flag lists differ in length");
  const std::size_t d = n > 0 ? input.points[0].size() : 0;
  for (const NfaEdge& e : nfa.edges) {
    if (e.from >= m || e.to >= m) throw Error(ErrorCode::InvalidAutomaton, "edge state out of range");
    if (n > 0 && (e.lo.size() != d || e.hi.size() != d)) {
      throw Error(ErrorCode::InvalidAutomaton, "edge label dimension mismatch");
    }
    for (std::size_t p = 0; p < e.lo.size(); ++p) {
      if (!(e.lo[p] <= e.hi[p])) throw Error(ErrorCode::InvalidAutomaton, "edge interval with lo > hi");
    }
  }

  constexpr double kNone = -std::numeric_limits<double>::infinity();
  constexpr std::size_t kNil = static_cast<std::size_t>(-1);
  std::vector<std::vector<double>> table(n, std::vector<double>(m, kNone));
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> from(
      n, std::vector<std::pair<std::size_t, std::size_t>>(m, {kNil, kNil}));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double prev = kNone;
      std::pair<std::size_t, std::size_t> arg{kNil, kNil};
      for (std::size_t ip = 0; ip < i; ++ip) {
        for (const NfaEdge& e : nfa.edges) {
          if (e.to != j || table[ip][e.from] == kNone) continue;
          bool ok = true;
          for (std::size_t p = 0; p < d && ok; ++p) {
            const double diff = input.points[i][p] - input.points[ip][p];
            ok = e.lo[p] <= diff && diff <= e.hi[p];
          }
          if (!ok) continue;
          const double v = table[ip][e.from];
          if (v > prev || (v == prev && std::make_pair(ip, e.from) < arg)) {
            prev = v;
            arg = {ip, e.from};
          }
        }
      }
      const double w = input.weights[i];
      const double chained = prev == kNone ? kNone : w + prev;
      if (nfa.initial[j] && w >= chained) {
        table[i][j] = w;
      } else if (prev != kNone) {
        table[i][j] = chained;
        from[i][j] = arg;
      }
    }
  }

  SubsequenceResult result;
  std::pair<std::size_t, std::size_t> at{kNil, kNil};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (nfa.final[j] && table[i][j] != kNone && (!result.total_weight || table[i][j] > *result.total_weight)) {
        result.total_weight = table[i][j];
        at = {i, j};
      }
    }
  }
  while (at.first != kNil) {
    result.indices.insert(result.indices.begin(), at.first);
    result.states.insert(result.states.begin(), at.second);
    at = from[at.first][at.second];
  }
  return result;
}

EmptyCircleEstimate empty_circle(std::span<const Point2> points, const Circle& container, std::size_t grid_res) {
  if (grid_res < kLimits.min_grid) throw Error(ErrorCode::InvalidArgument, "grid resolution must be >= 64");
  EmptyCircleEstimate best;
  best.pitch = 2.0 * container.r / static_cast<double>(grid_res - 1);
  best.radius = -1.0;
  for (std::size_t a = 0; a < grid_res; ++a) {
    const double x = container.cx - container.r + best.pitch * static_cast<double>(a);
    for (std::size_t b = 0; b < grid_res; ++b) {
      const double y = container.cy - container.r + best.pitch * static_cast<double>(b);
      double value = container.r - std::hypot(x - container.cx, y - container.cy);
      if (value < 0.0) continue;
      for (const Point2& p : points) value = std::min(value, std::hypot(x - p.x, y - p.y));
      if (value > best.radius) {
        best.radius = value;
        best.center = {x, y};
      }
    }
  }
  return best;
}

bool empty_rect_feasible(std::span<const Point> points, const HyperRect& container, const AspectRatio& ratio,
                         double l1) {
  const std::size_t d = container.dim();
  std::vector<double> len(d);
  std::vector<std::vector<double>> candidates(d);
  for (std::size_t j = 0; j < d; ++j) {
    len[j] = l1 * ratio.f[j];
    const double top = container.hi[j] - len[j];
    if (top < container.lo[j]) return false;
    candidates[j].push_back(container.lo[j]);
    for (const Point& p : points) {
      if (p.coords[j] >= container.lo[j] && p.coords[j] <= top) candidates[j].push_back(p.coords[j]);
    }
    candidates[j] = sorted_unique(std::move(candidates[j]));
  }
  double work = static_cast<double>(points.size());
  for (const auto& c : candidates) work *= static_cast<double>(c.size());
  if (work > 1e8) too_large("anchor enumeration too large");

  std::vector<std::size_t> pick(d, 0);
  while (true) {
    bool empty = true;
    for (const Point& p : points) {
      bool strictly_inside = true;
      for (std::size_t j = 0; j < d && strictly_inside; ++j) {
        const double a = candidates[j][pick[j]];
        strictly_inside = a < p.coords[j] && p.coords[j] < a + len[j];
      }
      if (strictly_inside) {
        empty = false;
        break;
      }
    }
    if (empty) return true;
    std::size_t j = 0;
    while (j < d && ++pick[j] == candidates[j].size()) pick[j++] = 0;
    if (j == d) return false;
  }
}

EmptyRectEstimate empty_rect(std::span<const Point> points, const HyperRect& container, const AspectRatio& ratio,
                             double pitch) {
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < container.dim(); ++j) hi = std::min(hi, container.extent(j) / ratio.f[j]);
  if (oracle::empty_rect_feasible(points, container, ratio, hi)) return {hi, pitch};
  double lo = 0.0;
  while (hi - lo > pitch) {
    const double mid = 0.5 * (lo + hi);
    (oracle::empty_rect_feasible(points, container, ratio, mid) ? lo : hi) = mid;
  }
  return {lo, pitch};
}

namespace {

template <class Inside>
double sample_area(double x0, double x1, double y0, double y1, std::size_t grid_res, Inside inside) {
  if (grid_res < kLimits.min_grid) throw Error(ErrorCode::InvalidArgument, "grid resolution must be >= 64");
  const double dx = (x1 - x0) / static_cast<double>(grid_res);
  const double dy = (y1 - y0) / static_cast<double>(grid_res);
  std::size_t hits = 0;
  for (std::size_t a = 0; a < grid_res; ++a) {
    const double x = x0 + (static_cast<double>(a) + 0.5) * dx;
    for (std::size_t b = 0; b < grid_res; ++b) {
      if (inside(x, y0 + (static_cast<double>(b) + 0.5) * dy)) ++hits;
    }
  }
  return static_cast<double>(hits) * dx * dy;
}

}  // namespace

double union_area_circles(std::span<const Circle> circles, std::size_t grid_res) {
  if (circles.empty()) return 0.0;
  double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
  for (const Circle& c : circles) {
    x0 = std::min(x0, c.cx - c.r);
    x1 = std::max(x1, c.cx + c.r);
    y0 = std::min(y0, c.cy - c.r);
    y1 = std::max(y1, c.cy + c.r);
  }
  return sample_area(x0, x1, y0, y1, grid_res, [&](double x, double y) {
    for (const Circle& c : circles) {
      if ((x - c.cx) * (x - c.cx) + (y - c.cy) * (y - c.cy) <= c.r * c.r) return true;
    }
    return false;
  });
}

double union_area_polygons(std::span<const Polygon> polys, std::size_t grid_res) {
  double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
  for (const Polygon& poly : polys) {
    for (const Point2& v : poly.vertices) {
      x0 = std::min(x0, v.x);
      x1 = std::max(x1, v.x);
      y0 = std::min(y0, v.y);
      y1 = std::max(y1, v.y);
    }
  }
  if (!(x1 > x0 && y1 > y0)) return 0.0;
  // Even-odd crossing test.
  return sample_area(x0, x1, y0, y1, grid_res, [&](double x, double y) {
    for (const Polygon& poly : polys) {
      bool in = false;
      const auto& v = poly.vertices;
      for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        if ((v[i].y > y) != (v[j].y > y) && x < (v[j].x - v[i].x) * (y - v[i].y) / (v[j].y - v[i].y) + v[i].x) {
          in = !in;
        }
      }
      if (in) return true;
    }
    return false;
  });
}

}  // namespace geosweep::oracle
