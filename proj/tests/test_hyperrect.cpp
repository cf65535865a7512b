#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "geosweep/generators.hpp"
#include "geosweep/hyperrect.hpp"
#include "geosweep/oracles.hpp"

using namespace geosweep;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::TooLarge;
}

// Closed box inside the container whose open interior avoids every point.
bool placement_ok(std::span<const Point> pts, const HyperRect& container, const std::vector<double>& anchor,
                  const std::vector<double>& len, double slack) {
  for (std::size_t j = 0; j < anchor.size(); ++j) {
    if (anchor[j] < container.lo[j] - slack || anchor[j] + len[j] > container.hi[j] + slack) return false;
  }
  for (const Point& p : pts) {
    bool inside = true;
    for (std::size_t j = 0; j < anchor.size(); ++j) {
      inside = inside && p[j] > anchor[j] + slack && p[j] < anchor[j] + len[j] - slack;
    }
    if (inside) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("union volume") {
  const std::vector<HyperRect> cube{{{0, 0, 0}, {1, 1, 1}}};
  CHECK(union_volume(cube, 3) == 1.0);
  const std::vector<HyperRect> two{{{0, 0, 0}, {2, 2, 2}}, {{1, 1, 1}, {3, 3, 3}}};
  CHECK(union_volume(two, 3) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(union_volume(std::vector<HyperRect>{}, 2) == 0.0);
  CHECK(code_of([] { union_volume(std::vector<HyperRect>{{{0, 0}, {1, 1}}}, 3); }) == ErrorCode::DimensionMismatch);

  SUBCASE("one dimension and degenerate boxes") {
    const std::vector<HyperRect> segs{{{0}, {2}}, {{1}, {3}}, {{5}, {5}}};
    CHECK(union_volume(segs, 1) == 3.0);
    const std::vector<HyperRect> flat{{{0, 0}, {0, 4}}, {{1, 1}, {2, 2}}};
    CHECK(union_volume(flat, 2) == 1.0);
  }

  SUBCASE("random instances against the compressed grid") {
    gen::Rng rng(31);
    for (int t = 0; t < 20; ++t) {
      const auto boxes = gen::real_boxes(12, 3, rng);
      const double fast = union_volume(boxes, 3);
      CHECK(fast == doctest::Approx(oracle::union_volume(boxes, 3)).epsilon(1e-9));
    }
  }

  SUBCASE("2-d sweep matches the recursion") {
    gen::Rng rng(32);
    for (int t = 0; t < 10; ++t) {
      const auto boxes = gen::real_boxes(200, 2, rng);
      const double a = union_area_2d(boxes);
      const double b = union_volume(boxes, 2);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, b));
    }
    const std::vector<HyperRect> unit{{{0, 0}, {1, 1}}};
    CHECK(union_area_2d(unit) == 1.0);
    const std::vector<HyperRect> pair{{{0, 0}, {2, 2}}, {{1, 1}, {3, 3}}};
    CHECK(union_area_2d(pair) == 7.0);
  }

  SUBCASE("monotone, subadditive, additive on disjoint boxes") {
    gen::Rng rng(33);
    const auto boxes = gen::real_boxes(40, 3, rng);
    double prev = 0, total = 0;
    for (std::size_t k = 1; k <= boxes.size(); ++k) {
      const double v = union_volume(std::span<const HyperRect>(boxes).first(k), 3);
      total += boxes[k - 1].volume();
      CHECK(v >= prev - 1e-15);
      CHECK(v <= total * (1 + 1e-12));
      prev = v;
    }
    std::vector<HyperRect> grid;
    double sum = 0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 3; ++b) {
        grid.push_back({{a * 1.0, b * 1.0}, {a + 0.5 + 0.1 * b, b + 1.0}});
        sum += grid.back().volume();
      }
    }
    CHECK(union_volume(grid, 2) == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("empty box feasibility") {
  const HyperRect unit{{0, 0}, {1, 1}};
  const auto ratio = AspectRatio::uniform(2);
  const auto free = empty_rect_feasible({}, unit, ratio, 0.7);
  CHECK(free.feasible);
  REQUIRE(free.witness);
  CHECK(*free.witness == std::vector<double>{0, 0});

  const std::vector<Point> center{{{0.5, 0.5}}};
  const auto small = empty_rect_feasible(center, unit, ratio, 0.4);
  CHECK(small.feasible);
  REQUIRE(small.witness);
  CHECK(placement_ok(center, unit, *small.witness, {0.4, 0.4}, 0));
  CHECK_FALSE(empty_rect_feasible(center, unit, ratio, 0.6).feasible);

  CHECK(code_of([&] { empty_rect_feasible(center, unit, ratio, 1.5); }) == ErrorCode::DoesNotFit);
  CHECK(code_of([&] { empty_rect_feasible(center, unit, AspectRatio{{1, 0}}, 0.2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { empty_rect_feasible(center, unit, AspectRatio{{2, 1}}, 0.2); }) == ErrorCode::InvalidArgument);

  SUBCASE("full-size box with a point on the boundary") {
    const std::vector<Point> edge{{{1.0, 0.3}}};
    CHECK(empty_rect_feasible(edge, unit, ratio, 1.0).feasible);
    CHECK_FALSE(empty_rect_feasible(std::vector<Point>{{{0.5, 0.3}}}, unit, ratio, 1.0).feasible);
  }

  SUBCASE("agrees with exact anchor enumeration and is monotone") {
    gen::Rng rng(41);
    std::uniform_real_distribution<double> l(0.01, 0.99);
    for (int t = 0; t < 150; ++t) {
      const auto pts = gen::points_in_box(6, unit, rng);
      double a = l(rng), b = l(rng);
      if (a > b) std::swap(a, b);
      const auto fa = empty_rect_feasible(pts, unit, ratio, a);
      const auto fb = empty_rect_feasible(pts, unit, ratio, b);
      CHECK(fa.feasible == oracle::empty_rect_feasible(pts, unit, ratio, a));
      if (fb.feasible) CHECK(fa.feasible);
      if (fa.feasible) {
        REQUIRE(fa.witness);
        CHECK(placement_ok(pts, unit, *fa.witness, {a, a}, 1e-12));
      }
    }
  }
}

TEST_CASE("largest empty box") {
  const HyperRect unit{{0, 0}, {1, 1}};
  const auto ratio = AspectRatio::uniform(2);
  const auto whole = largest_empty_hyperrect({}, unit, ratio, 1e-7);
  CHECK(whole.l1 == 1.0);
  CHECK(whole.anchor == std::vector<double>{0, 0});

  const std::vector<Point> center{{{0.5, 0.5}}};
  const auto half = largest_empty_hyperrect(center, unit, ratio, 1e-7);
  CHECK(std::abs(half.l1 - 0.5) <= 1e-5);
  CHECK(placement_ok(center, unit, half.anchor, half.lengths, 1e-9));

  SUBCASE("random points with a stretched ratio") {
    gen::Rng rng(51);
    const HyperRect box{{0, 0}, {1, 2}};
    const AspectRatio f{{1, 2}};
    const double tol = 1e-7;
    for (int t = 0; t < 20; ++t) {
      const auto pts = gen::points_in_box(10, box, rng);
      const auto res = largest_empty_hyperrect(pts, box, f, tol);
      const auto o = oracle::empty_rect(pts, box, f, 1e-7);
      CHECK(std::abs(res.l1 - o.l1) <= tol + o.pitch);
      CHECK(res.lengths[1] == doctest::Approx(2 * res.l1));
      CHECK(placement_ok(pts, box, res.anchor, res.lengths, 1e-9));
    }
  }

  SUBCASE("three dimensions") {
    gen::Rng rng(52);
    const HyperRect cube{{0, 0, 0}, {1, 1, 1}};
    const auto f = AspectRatio::uniform(3);
    for (int t = 0; t < 5; ++t) {
      const auto pts = gen::points_in_box(6, cube, rng);
      const auto res = largest_empty_hyperrect(pts, cube, f, 1e-7);
      const auto o = oracle::empty_rect(pts, cube, f, 1e-7);
      CHECK(std::abs(res.l1 - o.l1) <= 2e-7);
      CHECK(placement_ok(pts, cube, res.anchor, res.lengths, 1e-9));
    }
  }
}
