#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "geosweep/containment.hpp"
#include "geosweep/empty_circle.hpp"
#include "geosweep/error.hpp"
#include "geosweep/hyperrect.hpp"
#include "geosweep/nfa_subseq.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using Xy = std::array<double, 2>;
using Disk = std::array<double, 3>;
using Corners = std::pair<std::vector<double>, std::vector<double>>;

std::vector<geosweep::Point2> to_points2(const std::vector<Xy>& pts) {
  std::vector<geosweep::Point2> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({p[0], p[1]});
  return out;
}

std::vector<geosweep::Circle> to_circles(const std::vector<Disk>& cs) {
  std::vector<geosweep::Circle> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back({c[0], c[1], c[2]});
  return out;
}

std::vector<geosweep::HyperRect> to_boxes(const std::vector<Corners>& bs) {
  std::vector<geosweep::HyperRect> out;
  out.reserve(bs.size());
  for (const auto& [lo, hi] : bs) out.push_back({lo, hi});
  return out;
}

py::list report_rows(const geosweep::ContainmentReport& rep) {
  py::list rows;
  for (const auto& e : rep.entries) {
    rows.append(py::dict("container"_a = e.container, "is_contained"_a = e.is_contained,
                         "contains_another"_a = e.contains_another));
  }
  return rows;
}

py::dict subsequence(const geosweep::SubsequenceResult& r) {
  return py::dict("total_weight"_a = r.total_weight, "indices"_a = r.indices, "states"_a = r.states);
}

}  // namespace

PYBIND11_MODULE(_geosweep, m) {
  m.doc() = "Sweep-line geometry: empty regions, union measures, containment, automaton subsequences.";

  static py::exception<geosweep::Error> error(m, "GeosweepError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const geosweep::Error& e) {
      py::set_error(error, (std::string(geosweep::to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def(
      "largest_empty_circle",
      [](const std::vector<Xy>& points, const Disk& container, std::optional<double> tol) {
        const auto pts = to_points2(points);
        const auto res =
            geosweep::largest_empty_circle(pts, {container[0], container[1], container[2]}, tol);
        return py::dict("radius"_a = res.radius, "center"_a = Xy{res.center.x, res.center.y},
                        "iterations"_a = res.iterations);
      },
      "points"_a, "container"_a, "tol"_a = py::none());

  m.def(
      "union_area_circles",
      [](const std::vector<Disk>& circles) { return geosweep::union_area_circles(to_circles(circles)); },
      "circles"_a);

  m.def(
      "union_area_polygons",
      [](const std::vector<std::vector<Xy>>& polys) {
        std::vector<geosweep::Polygon> ps;
        for (const auto& poly : polys) ps.push_back({to_points2(poly)});
        return geosweep::union_area_polygons(ps);
      },
      "polygons"_a);

  m.def(
      "union_volume",
      [](const std::vector<Corners>& boxes, std::size_t d) { return geosweep::union_volume(to_boxes(boxes), d); },
      "boxes"_a, "d"_a);

  m.def(
      "largest_empty_hyperrect",
      [](const std::vector<std::vector<double>>& points, const Corners& container,
         std::optional<std::vector<double>> ratio, std::optional<double> tol) {
        std::vector<geosweep::Point> pts;
        for (const auto& p : points) pts.push_back({p});
        const geosweep::HyperRect box{container.first, container.second};
        const geosweep::AspectRatio f =
            ratio ? geosweep::AspectRatio{*ratio} : geosweep::AspectRatio::uniform(box.dim());
        const auto res = geosweep::largest_empty_hyperrect(pts, box, f, tol);
        return py::dict("l1"_a = res.l1, "lengths"_a = res.lengths, "anchor"_a = res.anchor,
                        "iterations"_a = res.iterations);
      },
      "points"_a, "container"_a, "ratio"_a = py::none(), "tol"_a = py::none());

  m.def(
      "circle_containment",
      [](const std::vector<Disk>& circles) { return report_rows(geosweep::circle_containment(to_circles(circles))); },
      "circles"_a);

  m.def(
      "rect_containment",
      [](const std::vector<Corners>& boxes, std::size_t d) {
        return report_rows(geosweep::rect_containment(to_boxes(boxes), d));
      },
      "boxes"_a, "d"_a);

  m.def(
      "rect_containment_counts",
      [](const std::vector<Corners>& boxes, std::size_t d) {
        const auto c = geosweep::rect_containment_counts(to_boxes(boxes), d);
        return py::dict("num_containers"_a = c.num_containers, "num_contained"_a = c.num_contained);
      },
      "boxes"_a, "d"_a);

  m.def(
      "max_weight_subsequence",
      [](const std::vector<std::vector<double>>& points, const std::vector<double>& weights,
         const std::vector<bool>& initial, const std::vector<bool>& final_states, const py::list& edges) {
        geosweep::SequenceInput input{points, weights};
        geosweep::Nfa nfa{initial, final_states, {}};
        for (const auto& item : edges) {
          const auto e = item.cast<py::tuple>();
          nfa.edges.push_back({e[0].cast<std::size_t>(), e[1].cast<std::size_t>(), e[2].cast<std::vector<double>>(),
                               e[3].cast<std::vector<double>>()});
        }
        return subsequence(geosweep::max_weight_subsequence(input, nfa));
      },
      "points"_a, "weights"_a, "initial"_a, "final"_a, "edges"_a,
      "Edges are (from, to, lo, hi) tuples; lo/hi may hold +-inf.");

  m.def(
      "preset_lis",
      [](const std::vector<double>& values, double eps) { return subsequence(geosweep::preset_lis(values, eps)); },
      "values"_a, "eps"_a = geosweep::kStrictEps);

  m.def(
      "preset_alternating",
      [](const std::vector<double>& values, double eps) {
        return subsequence(geosweep::preset_alternating(values, eps));
      },
      "values"_a, "eps"_a = geosweep::kStrictEps);
}
