#include "geosweep/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "geosweep/index_trees.hpp"

namespace geosweep::gen {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

std::vector<Point2> points_in_circle(std::size_t n, const Circle& container, Rng& rng) {
  std::vector<Point2> pts;
  pts.reserve(n);
  while (pts.size() < n) {
    const double x = uniform(rng, -1.0, 1.0);
    const double y = uniform(rng, -1.0, 1.0);
    if (x * x + y * y > 1.0) continue;
    pts.push_back({container.cx + container.r * x, container.cy + container.r * y});
  }
  return pts;
}

std::vector<Point> points_in_box(std::size_t n, const HyperRect& container, Rng& rng) {
  std::vector<Point> pts(n);
  for (Point& p : pts) {
    for (std::size_t j = 0; j < container.dim(); ++j) p.coords.push_back(uniform(rng, container.lo[j], container.hi[j]));
  }
  return pts;
}

std::vector<Circle> laminar_circles(std::size_t n, Rng& rng) {
  constexpr double kWorld = 100.0;
  constexpr double kMargin = 1e-3;
  std::vector<Circle> out;
  std::vector<std::optional<std::size_t>> parent;

  auto fits = [&](const Circle& c, std::optional<std::size_t> par) {
    for (std::size_t s = 0; s < out.size(); ++s) {
      if (parent[s] != par) continue;
      if (std::hypot(c.cx - out[s].cx, c.cy - out[s].cy) < c.r + out[s].r + kMargin) return false;
    }
    return true;
  };

  while (out.size() < n) {
    std::optional<std::size_t> par;
    if (!out.empty() && std::bernoulli_distribution(0.7)(rng)) {
      par = std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng);
    }
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      Circle c;
      if (par) {
        const Circle& host = out[*par];
        c.r = host.r * uniform(rng, 0.05, 0.45);
        const double room = host.r - c.r - kMargin;
        if (room <= 0) break;
        const double ang = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        const double dist = room * std::sqrt(uniform(rng, 0.0, 1.0));
        c.cx = host.cx + dist * std::cos(ang);
        c.cy = host.cy + dist * std::sin(ang);
      } else {
        c.r = uniform(rng, 2.0, 12.0);
        c.cx = uniform(rng, c.r, kWorld - c.r);
        c.cy = uniform(rng, c.r, kWorld - c.r);
      }
      if (fits(c, par)) {
        out.push_back(c);
        parent.push_back(par);
        placed = true;
      }
    }
  }
  return out;
}

std::vector<HyperRect> integer_boxes(std::size_t n, std::size_t d, int span, Rng& rng) {
  std::vector<HyperRect> out(n);
  for (HyperRect& b : out) {
    for (std::size_t p = 0; p < d; ++p) {
      int a = uniform_int(rng, 0, span);
      int c = uniform_int(rng, 0, span);
      if (a > c) std::swap(a, c);
      b.lo.push_back(a);
      b.hi.push_back(c);
    }
  }
  return out;
}

std::vector<HyperRect> real_boxes(std::size_t n, std::size_t d, Rng& rng) {
  std::vector<HyperRect> out(n);
  for (HyperRect& b : out) {
    for (std::size_t p = 0; p < d; ++p) {
      double a = uniform(rng, 0.0, 1.0);
      double c = uniform(rng, 0.0, 1.0);
      if (a > c) std::swap(a, c);
      b.lo.push_back(a);
      b.hi.push_back(c);
    }
  }
  return out;
}

Polygon star_polygon(std::size_t vertices, double cx, double cy, double radius, Rng& rng) {
  std::vector<double> angles(vertices);
  for (double& a : angles) a = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  Polygon poly;
  for (double a : angles) {
    const double r = radius * uniform(rng, 0.3, 1.0);
    poly.vertices.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  return poly;
}

Polygon random_triangle(double lo, double hi, Rng& rng) {
  while (true) {
    Polygon t;
    for (int k = 0; k < 3; ++k) t.vertices.push_back({uniform(rng, lo, hi), uniform(rng, lo, hi)});
    if (std::abs(signed_area(t.vertices)) > 1e-3 * (hi - lo) * (hi - lo)) return t;
  }
}

NfaInstance nfa_instance(std::size_t n, std::size_t m, std::size_t d, std::size_t max_edges, Rng& rng) {
  NfaInstance inst;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(d);
    for (double& v : x) v = uniform_int(rng, -10, 10);
    inst.input.points.push_back(std::move(x));
    inst.input.weights.push_back(uniform_int(rng, -5, 10));
  }
  Nfa& nfa = inst.nfa;
  nfa.initial.assign(m, false);
  nfa.final.assign(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    nfa.initial[j] = std::bernoulli_distribution(0.5)(rng);
    nfa.final[j] = std::bernoulli_distribution(0.5)(rng);
  }
  nfa.initial[std::uniform_int_distribution<std::size_t>(0, m - 1)(rng)] = true;
  nfa.final[std::uniform_int_distribution<std::size_t>(0, m - 1)(rng)] = true;
  const std::size_t edges = std::uniform_int_distribution<std::size_t>(0, max_edges)(rng);
  for (std::size_t k = 0; k < edges; ++k) {
    NfaEdge e;
    e.from = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    e.to = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    for (std::size_t p = 0; p < d; ++p) {
      int a = uniform_int(rng, -12, 12);
      int b = uniform_int(rng, -12, 12);
      if (a > b) std::swap(a, b);
      const int roll = uniform_int(rng, 0, 9);
      e.lo.push_back(roll == 0 ? kNegInf : a);
      e.hi.push_back(roll == 1 ? kPosInf : b);
    }
    nfa.edges.push_back(std::move(e));
  }
  return inst;
}

}  // namespace geosweep::gen
