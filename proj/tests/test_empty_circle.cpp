#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "geosweep/empty_circle.hpp"
#include "geosweep/generators.hpp"
#include "geosweep/oracles.hpp"
#include "support.hpp"

using namespace geosweep;

namespace {

double lens(double r, double d) { return 2 * r * r * std::acos(d / (2 * r)) - (d / 2) * std::sqrt(4 * r * r - d * d); }

bool witness_ok(const Point2& w, std::span<const Point2> pts, double R, const Circle& c) {
  if (std::hypot(w.x - c.cx, w.y - c.cy) > c.r - R + 1e-9) return false;
  for (const Point2& p : pts) {
    if (std::hypot(w.x - p.x, w.y - p.y) <= R) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("slab decomposition") {
  const auto s = SlabDecomposition::from({3, 1, 2, 2 + 1e-12, 5}, 0, 4);
  // 5 lies outside [0, 4]; 2 + 1e-12 merges with 2.
  REQUIRE(s.xs.size() == 3);
  CHECK(s.xs.front() == 1.0);
  CHECK(s.xs.back() == 3.0);
  CHECK(s.slab_count() == 2);
  CHECK(s.midline(0) == 0.5 * (s.xs[0] + s.xs[1]));
  for (std::size_t i = 0; i + 1 < s.xs.size(); ++i) CHECK(s.xs[i] < s.xs[i + 1]);
}

TEST_CASE("coverage decision") {
  const Circle c{0, 0, 10};
  const auto none = circle_coverage_decision({}, 3, c);
  CHECK_FALSE(none.covered);
  REQUIRE(none.witness);
  CHECK(none.witness->x == 0.0);
  CHECK(none.witness->y == 0.0);

  const std::vector<Point2> center{{0, 0}};
  CHECK(circle_coverage_decision(center, 6, c).covered);
  const auto miss = circle_coverage_decision(center, 4, c);
  CHECK_FALSE(miss.covered);
  REQUIRE(miss.witness);
  CHECK(witness_ok(*miss.witness, center, 4, c));

  SUBCASE("agrees with a dense grid") {
    gen::Rng rng(17);
    std::uniform_real_distribution<double> rad(0.5, 7);
    for (int t = 0; t < 40; ++t) {
      const auto pts = gen::points_in_circle(10, c, rng);
      const double R = rad(rng);
      const auto fast = circle_coverage_decision(pts, R, c);
      const auto grid = testsupport::grid_uncovered(pts, R, c, 500);
      // A grid point left uncovered is an exact counterexample.
      if (grid) CHECK_FALSE(fast.covered);
      // A reported gap must carry a genuine witness.
      if (!fast.covered) {
        REQUIRE(fast.witness);
        CHECK(witness_ok(*fast.witness, pts, R, c));
      }
    }
  }

  SUBCASE("monotone in the radius") {
    gen::Rng rng(4);
    std::uniform_real_distribution<double> rad(0.1, 9.9);
    for (int t = 0; t < 120; ++t) {
      const auto pts = gen::points_in_circle(6, c, rng);
      double a = rad(rng), b = rad(rng);
      if (a > b) std::swap(a, b);
      if (circle_coverage_decision(pts, a, c).covered) CHECK(circle_coverage_decision(pts, b, c).covered);
    }
  }
}

TEST_CASE("largest empty circle") {
  const Circle c{0, 0, 10};
  const auto empty = largest_empty_circle({}, c, 1e-6);
  CHECK(empty.radius == doctest::Approx(10.0).epsilon(1e-7));
  CHECK(empty.center.x == 0.0);
  CHECK(empty.center.y == 0.0);

  const std::vector<Point2> center{{0, 0}};
  const auto half = largest_empty_circle(center, c, 1e-7);
  CHECK(std::abs(half.radius - 5.0) <= 1e-5);

  SUBCASE("invalid tolerance") { CHECK_THROWS_AS(largest_empty_circle(center, c, 0.0), Error); }

  SUBCASE("matches the grid search and its own invariants") {
    gen::Rng rng(8);
    const Circle unit{0, 0, 1};
    const double tol = 1e-7;
    for (int t = 0; t < 15; ++t) {
      const auto pts = gen::points_in_circle(8, unit, rng);
      const auto res = largest_empty_circle(pts, unit, tol);
      const auto o = oracle::empty_circle(pts, unit, 400);
      CHECK(res.radius >= o.radius - o.pitch);
      CHECK(res.radius <= o.radius + tol + o.pitch);
      CHECK(std::hypot(res.center.x, res.center.y) <= unit.r - res.radius + 1e-9);
      for (const auto& p : pts) CHECK(std::hypot(p.x - res.center.x, p.y - res.center.y) >= res.radius - 1e-9);
      CHECK(res.iterations <= 64);
    }
  }

  SUBCASE("points outside the container still block") {
    const std::vector<Point2> outside{{11, 0}};
    const auto res = largest_empty_circle(outside, c, 1e-7);
    // The best circle sits opposite the outside point.
    CHECK(res.radius > 9.9);
    CHECK(res.radius <= 10.0);
    CHECK(std::hypot(11 - res.center.x, res.center.y) >= res.radius - 1e-9);
  }
}

TEST_CASE("union area of circles") {
  const std::vector<Circle> unit{{0, 0, 1}};
  CHECK(std::abs(union_area_circles(unit) - std::numbers::pi) <= 1e-6);
  const std::vector<Circle> apart{{0, 0, 1}, {5, 0, 1}};
  CHECK(std::abs(union_area_circles(apart) - 2 * std::numbers::pi) <= 1e-6);
  const std::vector<Circle> overlap{{0, 0, 1}, {1, 0, 1}};
  CHECK(std::abs(union_area_circles(overlap) - (2 * std::numbers::pi - lens(1, 1))) <= 1e-6);
  CHECK(union_area_circles(std::vector<Circle>{}) == 0.0);

  SUBCASE("nested and repeated circles") {
    const std::vector<Circle> nested{{0, 0, 3}, {1, 0, 1}, {0, 0, 3}};
    CHECK(union_area_circles(nested) == doctest::Approx(9 * std::numbers::pi).epsilon(1e-9));
  }

  SUBCASE("random lens pairs") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> dist(0.05, 1.95), ang(0, 2 * std::numbers::pi);
    for (int t = 0; t < 50; ++t) {
      const double d = dist(rng), a = ang(rng);
      const std::vector<Circle> pair{{0.3, -0.2, 1}, {0.3 + d * std::cos(a), -0.2 + d * std::sin(a), 1}};
      CHECK(std::abs(union_area_circles(pair) - (2 * std::numbers::pi - lens(1, d))) <= 1e-6);
    }
  }

  SUBCASE("bounds, permutation invariance and the sampling oracle") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> pos(0, 10), rad(0.3, 3);
    for (int t = 0; t < 10; ++t) {
      std::vector<Circle> cs;
      for (int k = 0; k < 8; ++k) cs.push_back({pos(rng), pos(rng), rad(rng)});
      const double area = union_area_circles(cs);
      double biggest = 0, total = 0;
      for (const auto& c : cs) {
        biggest = std::max(biggest, std::numbers::pi * c.r * c.r);
        total += std::numbers::pi * c.r * c.r;
      }
      CHECK(area >= biggest - 1e-9);
      CHECK(area <= total + 1e-9);
      auto shuffled = cs;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(union_area_circles(shuffled) == doctest::Approx(area).epsilon(1e-9));
      CHECK(oracle::union_area_circles(cs, 1000) == doctest::Approx(area).epsilon(2e-3));
    }
  }
}

TEST_CASE("union area of polygons") {
  const Polygon unit{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  CHECK(union_area_polygons(std::vector<Polygon>{unit}) == doctest::Approx(1.0));
  const std::vector<Polygon> two{{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}}, {{{1, 1}, {3, 1}, {3, 3}, {1, 3}}}};
  CHECK(union_area_polygons(two) == doctest::Approx(7.0).epsilon(1e-12));

  SUBCASE("non-simple input propagates") {
    const std::vector<Polygon> bad{{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}};
    CHECK_THROWS_AS(union_area_polygons(bad), Error);
  }

  SUBCASE("disjoint inputs add up") {
    gen::Rng rng(6);
    std::vector<Polygon> polys;
    double sum = 0;
    for (int k = 0; k < 6; ++k) {
      polys.push_back(gen::star_polygon(9, 20.0 * k, 0, 8, rng));
      sum += std::abs(signed_area(polys.back().vertices));
    }
    CHECK(union_area_polygons(polys) == doctest::Approx(sum).epsilon(1e-9));
  }

  SUBCASE("random triangles against the sampling oracle") {
    gen::Rng rng(10);
    for (int t = 0; t < 5; ++t) {
      std::vector<Polygon> tris;
      for (int k = 0; k < 10; ++k) tris.push_back(gen::random_triangle(0, 10, rng));
      const double area = union_area_polygons(tris);
      CHECK(std::abs(oracle::union_area_polygons(tris, 1000) - area) <= 1e-3 * area + 5e-3);
    }
  }

  SUBCASE("overlapping concave polygons against the sampling oracle") {
    gen::Rng rng(12);
    for (int t = 0; t < 5; ++t) {
      std::vector<Polygon> polys;
      for (int k = 0; k < 4; ++k) polys.push_back(gen::star_polygon(12, 3.0 * k, 1.0 * k, 5, rng));
      const double area = union_area_polygons(polys);
      CHECK(std::abs(oracle::union_area_polygons(polys, 1000) - area) <= 2e-3 * area);
    }
  }
}
