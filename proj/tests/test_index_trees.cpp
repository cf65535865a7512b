#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "geosweep/index_trees.hpp"
#include "support.hpp"

using namespace geosweep;
using testsupport::ScanPoint;

TEST_CASE("segment tree basics") {
  const std::vector<double> one{1.0};
  auto t1 = SegmentTree::build(one);
  CHECK(t1.size() == 1);
  CHECK(t1.query_max({}) == MaxResult{});

  const std::vector<double> four{1, 2, 3, 4};
  auto t = SegmentTree::build(four);
  CHECK(t.query_max({kNegInf, kPosInf}) == MaxResult{});
  CHECK(t.audit());

  t.update(2, 7.5, 3);
  CHECK(t.query_max({1, 4}) == MaxResult{7.5, 3});
  CHECK(t.query_max({2.5, 10}) == MaxResult{});
  CHECK(t.query_max({10, 20}) == MaxResult{});
  t.update(2, kNegInf, 3);
  CHECK(t.query_max({1, 4}) == MaxResult{});

  t.update(2, 5, 8);
  CHECK(t.query_max({2, 2}) == MaxResult{5, 8});
  t.update(2, 4, 8);  // replaced, not accumulated
  CHECK(t.query_max({1, 4}) == MaxResult{4, 8});
  CHECK(t.count({1.5, 3}) == 2);

  SUBCASE("errors") {
    CHECK_THROWS_AS(t.update(2.5, 1, 0), Error);
    try {
      t.update(2.5, 1, 0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownCoordinate);
    }
    try {
      SegmentTree::build(std::vector<double>{});
      FAIL("expected EmptyDomain");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyDomain);
    }
    CHECK_THROWS_AS(SegmentTree::build(std::vector<double>{1, 1}), Error);
  }

  SUBCASE("equal weights resolve to the smaller id") {
    auto s = SegmentTree::build(four);
    s.update(1, 2, 9);
    s.update(4, 2, 5);
    CHECK(s.query_max({}) == MaxResult{2, 5});
  }
}

TEST_CASE("segment tree against a scan") {
  std::mt19937_64 rng(21);
  std::vector<double> coords;
  for (int k = 0; k < 64; ++k) coords.push_back(k * 0.5);
  auto t = SegmentTree::build(coords);
  std::vector<ScanPoint> pts;
  for (std::size_t k = 0; k < coords.size(); ++k) pts.push_back({{coords[k]}, kNegInf, k});
  std::uniform_int_distribution<std::size_t> leaf(0, coords.size() - 1);
  std::uniform_int_distribution<int> w(-20, 20);
  for (int step = 0; step < 1000; ++step) {
    const std::size_t k = leaf(rng);
    const double weight = w(rng) == 20 ? kNegInf : static_cast<double>(w(rng));
    t.update(coords[k], weight, k);
    pts[k].weight = weight;
    const geosweep::Range r = testsupport::random_range(rng, -2, 34);
    const std::vector<geosweep::Range> box{r};
    CHECK(t.query_max(r) == testsupport::scan_max(pts, box));
    CHECK(t.count(r) == testsupport::scan_count(pts, box));
  }
  CHECK(t.audit());
}

TEST_CASE("keyed segment tree with duplicate coordinates") {
  std::vector<SegmentTree::LeafKey> keys{{1, 0}, {1, 1}, {2, 2}, {2, 3}, {2, 4}};
  auto t = SegmentTree::build_keyed(keys);
  t.update(2, 3, 3);
  t.update(2, 3, 2);
  t.update(1, 1, 1);
  CHECK(t.query_max({2, 2}) == MaxResult{3, 2});
  CHECK(t.query_max({0, 1.5}) == MaxResult{1, 1});
  CHECK(t.count({2, 2}) == 3);
  CHECK(t.audit());
}

namespace {

std::vector<WeightedPoint> random_points(std::mt19937_64& rng, std::size_t n, std::size_t k, int span) {
  std::uniform_int_distribution<int> c(0, span);
  std::vector<WeightedPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    WeightedPoint p;
    for (std::size_t j = 0; j < k; ++j) p.coords.push_back(c(rng));
    p.id = i;
    pts.push_back(p);
  }
  return pts;
}

std::vector<ScanPoint> mirror(const std::vector<WeightedPoint>& pts) {
  std::vector<ScanPoint> out;
  for (const auto& p : pts) out.push_back({p.coords, p.weight, p.id});
  return out;
}

}  // namespace

TEST_CASE("range tree basics") {
  const std::vector<WeightedPoint> single{{{2, 3}, kNegInf, 0}};
  RangeTree one(single, 2);
  CHECK(one.leaf_slots() == 1);
  CHECK(one.max_query(QueryBox{{0, 4}, {0, 4}}) == MaxResult{});
  one.set_weight(0, 5);
  CHECK(one.max_query(QueryBox{{0, 4}, {0, 4}}) == MaxResult{5, 0});
  CHECK(one.max_query(QueryBox{{3, 4}, {0, 4}}) == MaxResult{});
  one.set_weight(0, kNegInf);
  CHECK(one.max_query(QueryBox{{0, 4}, {0, 4}}) == MaxResult{});
  CHECK(one.count(QueryBox{{0, 4}, {0, 4}}) == 1);

  SUBCASE("errors") {
    auto code_of = [](auto&& fn) {
      try {
        fn();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::TooLarge;  // sentinel: nothing thrown
    };
    CHECK(code_of([&] { one.set_weight(7, 1.0); }) == ErrorCode::UnknownPoint);
    const std::vector<WeightedPoint> bad{{{1, 2, 3}, kNegInf, 0}};
    CHECK(code_of([&] { RangeTree t(bad, 2); }) == ErrorCode::DimensionMismatch);
    const std::vector<WeightedPoint> dup{{{1, 2}, kNegInf, 0}, {{2, 2}, kNegInf, 0}};
    CHECK(code_of([&] { RangeTree t(dup, 2); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { RangeTree t(std::vector<WeightedPoint>{}, 2); }) == ErrorCode::EmptyDomain);
  }

  SUBCASE("leaf slots grow as n log n") {
    std::mt19937_64 rng(1);
    for (std::size_t n : {64u, 256u, 1024u}) {
      RangeTree t(random_points(rng, n, 2, 1000), 2);
      const double nlogn = static_cast<double>(n) * std::log2(static_cast<double>(n));
      CHECK(static_cast<double>(t.leaf_slots()) >= nlogn * 0.9);
      CHECK(static_cast<double>(t.leaf_slots()) <= nlogn * 1.1 + 2.0 * static_cast<double>(n));
    }
  }
}

TEST_CASE("range tree against a scan") {
  std::mt19937_64 rng(99);
  for (std::size_t k : {2u, 3u, 4u}) {
    CAPTURE(k);
    auto pts = random_points(rng, 200, k, 12);
    RangeTree t(pts, k);
    auto scan = mirror(pts);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    std::uniform_int_distribution<int> w(-50, 50);
    // Activate all: the full box returns the global maximum.
    for (auto& p : scan) {
      p.weight = w(rng);
      t.set_weight(p.id, p.weight);
    }
    const QueryBox everything(k);
    CHECK(t.max_query(everything) == testsupport::scan_max(scan, everything));
    CHECK(t.count(everything) == pts.size());
    for (int q = 0; q < 100; ++q) {
      const std::size_t id = pick(rng);
      const double first = w(rng), second = w(rng) % 7 == 0 ? kNegInf : w(rng);
      t.set_weight(id, first);
      t.set_weight(id, second);  // last write wins
      scan[id].weight = second;
      QueryBox box;
      for (std::size_t j = 0; j < k; ++j) box.push_back(testsupport::random_range(rng, -1, 13));
      const MaxResult got = t.max_query(box);
      CHECK(got == testsupport::scan_max(scan, box));
      CHECK(t.count(box) == testsupport::scan_count(scan, box));
      CHECK(t.weight(id) == second);
    }
    CHECK(t.audit());
  }
}

TEST_CASE("range tree query work stays polylogarithmic") {
  std::mt19937_64 rng(5);
  const std::size_t n = 2048;
  auto pts = random_points(rng, n, 3, 100000);
  RangeTree t(pts, 3);
  const double lg = std::log2(static_cast<double>(n) + 1.0);
  for (int q = 0; q < 200; ++q) {
    QueryBox box;
    for (int j = 0; j < 3; ++j) box.push_back(testsupport::random_range(rng, 0, 100000));
    QueryStats stats;
    t.max_query(box, &stats);
    CHECK(static_cast<double>(stats.max_level_nodes) <= 4.0 * lg + 4.0);
    CHECK(static_cast<double>(stats.levels) <= 4.0 * lg * lg + 4.0);
  }
}
