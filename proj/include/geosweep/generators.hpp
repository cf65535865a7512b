#pragma once

// Seeded random instances for property tests and the `gen` subcommand.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "geosweep/geom_core.hpp"
#include "geosweep/nfa_subseq.hpp"

namespace geosweep::gen {

using Rng = std::mt19937_64;

std::vector<Point2> points_in_circle(std::size_t n, const Circle& container, Rng& rng);
std::vector<Point> points_in_box(std::size_t n, const HyperRect& container, Rng& rng);

/// Any two circles are disjoint or nested, with a clear margin between
/// boundaries. Children are packed recursively inside random parents.
std::vector<Circle> laminar_circles(std::size_t n, Rng& rng);

/// Boxes with integer corners in [0, span]; small spans produce many ties and
/// containments.
std::vector<HyperRect> integer_boxes(std::size_t n, std::size_t d, int span, Rng& rng);
/// Boxes with real corners inside [0, 1]^d.
std::vector<HyperRect> real_boxes(std::size_t n, std::size_t d, Rng& rng);

/// Star-shaped simple polygon around (cx, cy).
Polygon star_polygon(std::size_t vertices, double cx, double cy, double radius, Rng& rng);
Polygon random_triangle(double lo, double hi, Rng& rng);

struct NfaInstance {
  SequenceInput input;
  Nfa nfa;
};

/// Integer coordinates, weights and label bounds (some infinite), so every
/// coordinate difference is exact.
NfaInstance nfa_instance(std::size_t n, std::size_t m, std::size_t d, std::size_t max_edges, Rng& rng);

}  // namespace geosweep::gen
