#include "geosweep/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "geosweep/containment.hpp"
#include "geosweep/empty_circle.hpp"
#include "geosweep/error.hpp"
#include "geosweep/generators.hpp"
#include "geosweep/hyperrect.hpp"
#include "geosweep/nfa_subseq.hpp"
#include "geosweep/oracles.hpp"

namespace geosweep::cli {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

namespace {

constexpr std::size_t kCircleGrid = 400;
constexpr std::size_t kAreaGrid = 1000;
constexpr std::size_t kAreaOracleMax = 200;
constexpr std::size_t kEmptyCircleOracleMax = 2000;
constexpr double kEmptyRectOracleBudget = 2e7;

struct Options {
  std::string in_path;
  std::string out_path;
  std::string nfa_path;
  std::string ratio_csv;
  std::string container_csv;
  std::optional<double> tol;
  std::optional<double> eps;
  std::optional<int> d;
  bool verify = false;
  bool timing = false;
  std::uint64_t seed = 1;
  std::string kind = "points2d";
  std::size_t n = 20;
  std::size_t m = 2;
  std::size_t edges = 4;
};

struct Outcome {
  OJson result;
  std::optional<OJson> verification;
  bool mismatch = false;
};

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

Json load_json(const std::string& path, std::istream& fallback) {
  try {
    if (path.empty() || path == "-") return Json::parse(fallback);
    std::ifstream f(path);
    if (!f) invalid("cannot open " + path);
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    invalid("malformed input " + (path.empty() ? std::string("<stdin>") : path) + ": " + e.what());
  }
}

void expect_kind(const Json& doc, std::initializer_list<const char*> accepted) {
  if (!doc.is_object()) invalid("input must be a single object");
  if (!doc.contains("kind")) return;
  const std::string kind = doc.at("kind").get<std::string>();
  for (const char* k : accepted) {
    if (kind == k) return;
  }
  std::string list;
  for (const char* k : accepted) list += std::string(list.empty() ? "" : ", ") + k;
  invalid("input kind '" + kind + "' not accepted here (expected " + list + ")");
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.contains(name)) invalid(std::string("missing field '") + name + "'");
  return doc.at(name);
}

std::vector<double> numbers(const Json& arr) {
  if (!arr.is_array()) invalid("expected an array of numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const Json& v : arr) out.push_back(read_number(v));
  return out;
}

std::vector<double> parse_csv(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "inf" || tok == "+inf" || tok == "-inf") {
      out.push_back(read_number(Json(tok)));
      continue;
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      invalid("bad number '" + tok + "' in '" + csv + "'");
    }
    if (used != tok.size()) invalid("bad number '" + tok + "' in '" + csv + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<Point2> parse_points2d(const Json& doc) {
  std::vector<Point2> pts;
  for (const Json& p : field(doc, "points")) {
    const auto c = numbers(p);
    if (c.size() != 2) invalid("2-d point expected, got " + std::to_string(c.size()) + " coordinates");
    pts.push_back({c[0], c[1]});
  }
  return pts;
}

std::vector<Point> parse_points(const Json& doc) {
  std::vector<Point> pts;
  for (const Json& p : field(doc, "points")) pts.push_back({numbers(p)});
  return pts;
}

std::vector<Circle> parse_circles(const Json& doc) {
  std::vector<Circle> out;
  for (const Json& c : field(doc, "circles")) {
    const auto v = numbers(c);
    if (v.size() != 3) invalid("circle must be [cx, cy, r]");
    out.push_back({v[0], v[1], v[2]});
  }
  return out;
}

std::vector<Polygon> parse_polygons(const Json& doc) {
  std::vector<Polygon> out;
  for (const Json& poly : field(doc, "polygons")) {
    Polygon p;
    for (const Json& v : poly) {
      const auto c = numbers(v);
      if (c.size() != 2) invalid("polygon vertex must be [x, y]");
      p.vertices.push_back({c[0], c[1]});
    }
    out.push_back(std::move(p));
  }
  return out;
}

HyperRect parse_box(const Json& b) {
  return {numbers(field(b, "lo")), numbers(field(b, "hi"))};
}

std::vector<HyperRect> parse_boxes(const Json& doc) {
  std::vector<HyperRect> out;
  for (const Json& b : field(doc, "boxes")) out.push_back(parse_box(b));
  return out;
}

Nfa parse_nfa(const Json& j) {
  expect_kind(j, {"nfa"});
  Nfa nfa;
  nfa.initial = field(j, "initial").get<std::vector<bool>>();
  nfa.final = field(j, "final").get<std::vector<bool>>();
  for (const Json& e : field(j, "edges")) {
    const auto from = field(e, "from").get<long long>();
    const auto to = field(e, "to").get<long long>();
    if (from < 0 || to < 0) invalid("negative state index in edge");
    nfa.edges.push_back({static_cast<std::size_t>(from), static_cast<std::size_t>(to), numbers(field(e, "lo")),
                         numbers(field(e, "hi"))});
  }
  return nfa;
}

// --d, then the document's "d", then the first item's dimension.
std::size_t dimension(const Options& opts, const Json& doc, std::size_t inferred) {
  std::optional<long long> d;
  if (opts.d) {
    d = *opts.d;
  } else if (doc.contains("d")) {
    d = doc.at("d").get<long long>();
  } else if (inferred > 0) {
    d = static_cast<long long>(inferred);
  }
  if (!d) invalid("cannot infer the dimension; pass --d");
  if (*d < 1) invalid("dimension must be >= 1");
  return static_cast<std::size_t>(*d);
}

OJson array_of(const std::vector<double>& v) {
  OJson out = OJson::array();
  for (double x : v) out.push_back(write_number(x));
  return out;
}

OJson ids(const std::vector<std::size_t>& v) { return OJson(v); }

double circle_perimeter(std::span<const Circle> circles) {
  double total = 0.0;
  for (const Circle& c : circles) total += 2.0 * std::numbers::pi * c.r;
  return total;
}

// Worst-case midpoint-sampling error: every grid cell crossed by a boundary can
// be misclassified.
double sampling_bound(double perimeter, std::size_t pieces, double w, double h, std::size_t grid) {
  const double dx = w / static_cast<double>(grid);
  const double dy = h / static_cast<double>(grid);
  const double cell = std::min(dx, dy);
  if (!(cell > 0.0)) return 0.0;
  const double crossed = 2.0 * (perimeter / cell + 4.0 * static_cast<double>(pieces));
  return crossed * dx * dy;
}

// ---------------------------------------------------------------------------

Outcome run_empty_circle(const Json& doc, const Options& opts) {
  expect_kind(doc, {"points2d"});
  const auto pts = parse_points2d(doc);
  std::vector<double> cv;
  if (!opts.container_csv.empty()) {
    cv = parse_csv(opts.container_csv);
  } else if (doc.contains("container")) {
    cv = numbers(doc.at("container"));
  } else {
    invalid("empty-circle needs a container (--container cx,cy,r)");
  }
  if (cv.size() != 3) invalid("container must be cx,cy,r");
  const Circle container{cv[0], cv[1], cv[2]};
  const double tol = opts.tol.value_or(1e-7 * container.r);
  const EmptyCircleResult res = largest_empty_circle(pts, container, opts.tol);

  Outcome out;
  out.result["radius"] = write_number(res.radius);
  out.result["center"] = array_of({res.center.x, res.center.y});
  out.result["iterations"] = res.iterations;
  if (!opts.verify) return out;

  OJson v;
  const double slack = tol + 1e-9 * container.r;
  bool ok = std::hypot(res.center.x - container.cx, res.center.y - container.cy) + res.radius <= container.r + slack;
  for (const Point2& p : pts) ok = ok && std::hypot(p.x - res.center.x, p.y - res.center.y) >= res.radius - slack;
  v["witness_valid"] = ok;
  if (pts.size() <= kEmptyCircleOracleMax) {
    const auto o = oracle::empty_circle(pts, container, kCircleGrid);
    const bool in_range = res.radius >= o.radius - o.pitch && res.radius <= o.radius + tol + o.pitch;
    v["oracle_radius"] = write_number(o.radius);
    v["pitch"] = write_number(o.pitch);
    v["within_tolerance"] = in_range;
    ok = ok && in_range;
  } else {
    v["oracle"] = "skipped: too many points";
  }
  v["passed"] = ok;
  out.verification = v;
  out.mismatch = !ok;
  return out;
}

Outcome run_union_area_circles(const Json& doc, const Options& opts) {
  expect_kind(doc, {"circles"});
  const auto circles = parse_circles(doc);
  const double area = union_area_circles(circles);
  Outcome out;
  out.result["area"] = write_number(area);
  if (!opts.verify) return out;

  OJson v;
  if (circles.size() <= kAreaOracleMax) {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    if (!circles.empty()) {
      x0 = y0 = std::numeric_limits<double>::infinity();
      x1 = y1 = -x0;
      for (const Circle& c : circles) {
        x0 = std::min(x0, c.cx - c.r);
        x1 = std::max(x1, c.cx + c.r);
        y0 = std::min(y0, c.cy - c.r);
        y1 = std::max(y1, c.cy + c.r);
      }
    }
    const double est = oracle::union_area_circles(circles, kAreaGrid);
    const double bound = sampling_bound(circle_perimeter(circles), circles.size(), x1 - x0, y1 - y0, kAreaGrid);
    v["oracle_area"] = write_number(est);
    v["bound"] = write_number(bound);
    v["passed"] = std::abs(est - area) <= bound + 1e-9;
    out.mismatch = !v["passed"].get<bool>();
  } else {
    v["oracle"] = "skipped: too many circles";
    v["passed"] = true;
  }
  out.verification = v;
  return out;
}

Outcome run_union_area_polygons(const Json& doc, const Options& opts) {
  expect_kind(doc, {"polygons"});
  const auto polys = parse_polygons(doc);
  const double area = union_area_polygons(polys);
  Outcome out;
  out.result["area"] = write_number(area);
  if (!opts.verify) return out;

  OJson v;
  if (polys.size() <= kAreaOracleMax) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    double perimeter = 0.0;
    std::size_t edges = 0;
    for (const Polygon& p : polys) {
      for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        const Point2& a = p.vertices[i];
        const Point2& b = p.vertices[(i + 1) % p.vertices.size()];
        perimeter += std::hypot(b.x - a.x, b.y - a.y);
        x0 = std::min(x0, a.x);
        x1 = std::max(x1, a.x);
        y0 = std::min(y0, a.y);
        y1 = std::max(y1, a.y);
        ++edges;
      }
    }
    const double est = oracle::union_area_polygons(polys, kAreaGrid);
    const double bound = polys.empty() ? 0.0 : sampling_bound(perimeter, edges, x1 - x0, y1 - y0, kAreaGrid);
    v["oracle_area"] = write_number(est);
    v["bound"] = write_number(bound);
    v["passed"] = std::abs(est - area) <= bound + 1e-9;
    out.mismatch = !v["passed"].get<bool>();
  } else {
    v["oracle"] = "skipped: too many polygons";
    v["passed"] = true;
  }
  out.verification = v;
  return out;
}

Outcome run_union_volume(const Json& doc, const Options& opts) {
  expect_kind(doc, {"boxes"});
  const auto boxes = parse_boxes(doc);
  const std::size_t d = dimension(opts, doc, boxes.empty() ? 0 : boxes[0].dim());
  const double vol = union_volume(boxes, d);
  Outcome out;
  out.result["volume"] = write_number(vol);
  if (!opts.verify) return out;

  OJson v;
  try {
    const double o = oracle::union_volume(boxes, d);
    const bool ok = std::abs(o - vol) <= 1e-9 * std::max(1.0, std::abs(o));
    v["oracle_volume"] = write_number(o);
    v["passed"] = ok;
    out.mismatch = !ok;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
    v["oracle"] = std::string("skipped: ") + e.what();
    v["passed"] = true;
  }
  out.verification = v;
  return out;
}

Outcome run_empty_rect(const Json& doc, const Options& opts) {
  expect_kind(doc, {"points", "points2d"});
  const auto pts = parse_points(doc);
  HyperRect container;
  if (!opts.container_csv.empty()) {
    const auto cv = parse_csv(opts.container_csv);
    if (cv.size() % 2 != 0 || cv.empty()) invalid("container must be lo_1..lo_d,hi_1..hi_d");
    const std::size_t half = cv.size() / 2;
    container.lo.assign(cv.begin(), cv.begin() + static_cast<std::ptrdiff_t>(half));
    container.hi.assign(cv.begin() + static_cast<std::ptrdiff_t>(half), cv.end());
  } else if (doc.contains("container")) {
    container = parse_box(doc.at("container"));
  } else {
    invalid("empty-rect needs a container (--container lo..,hi..)");
  }
  const std::size_t d = dimension(opts, doc, container.dim());
  AspectRatio ratio = AspectRatio::uniform(d);
  if (!opts.ratio_csv.empty()) {
    ratio.f = parse_csv(opts.ratio_csv);
  } else if (doc.contains("ratio")) {
    ratio.f = numbers(doc.at("ratio"));
  }
  const EmptyRectResult res = largest_empty_hyperrect(pts, container, ratio, opts.tol);

  Outcome out;
  out.result["l1"] = write_number(res.l1);
  out.result["lengths"] = array_of(res.lengths);
  out.result["anchor"] = array_of(res.anchor);
  out.result["iterations"] = res.iterations;
  if (!opts.verify) return out;

  OJson v;
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d; ++j) hi = std::min(hi, container.extent(j) / ratio.f[j]);
  const double tol = opts.tol.value_or(1e-7 * hi);
  const double slack = tol + 1e-9 * std::max(1.0, hi);
  bool ok = res.anchor.size() == d && res.lengths.size() == d;
  for (std::size_t j = 0; ok && j < d; ++j) {
    ok = res.anchor[j] >= container.lo[j] - slack && res.anchor[j] + res.lengths[j] <= container.hi[j] + slack;
  }
  for (const Point& p : pts) {
    if (!ok) break;
    bool inside = true;
    for (std::size_t j = 0; j < d; ++j) {
      inside = inside && p.coords[j] > res.anchor[j] + slack && p.coords[j] < res.anchor[j] + res.lengths[j] - slack;
    }
    ok = !inside;
  }
  v["witness_valid"] = ok;
  const double cost = std::pow(static_cast<double>(pts.size() + 1), static_cast<double>(d)) *
                      static_cast<double>(std::max<std::size_t>(pts.size(), 1));
  if (cost <= kEmptyRectOracleBudget) {
    const auto o = oracle::empty_rect(pts, container, ratio, tol);
    const bool close = std::abs(o.l1 - res.l1) <= tol + o.pitch;
    v["oracle_l1"] = write_number(o.l1);
    v["pitch"] = write_number(o.pitch);
    v["within_tolerance"] = close;
    ok = ok && close;
  } else {
    v["oracle"] = "skipped: instance too large";
  }
  v["passed"] = ok;
  out.verification = v;
  out.mismatch = !ok;
  return out;
}

OJson report_json(const ContainmentReport& rep) {
  OJson entries = OJson::array();
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    const ContainmentEntry& e = rep.entries[i];
    OJson row;
    row["id"] = i;
    row["container"] = e.container ? OJson(*e.container) : OJson(nullptr);
    row["is_contained"] = e.is_contained;
    row["contains_another"] = e.contains_another;
    entries.push_back(std::move(row));
  }
  OJson r;
  r["entries"] = std::move(entries);
  r["contained"] = ids(rep.contained_ids());
  return r;
}

OJson verify_report(const ContainmentReport& rep, const std::vector<ContainmentFact>& pairs, bool& ok) {
  std::set<std::size_t> expected;
  for (const auto& f : pairs) expected.insert(f.inner);
  const auto got = rep.contained_ids();
  const bool same = std::set<std::size_t>(got.begin(), got.end()) == expected;
  bool witnesses = true;
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    if (const auto& c = rep.entries[i].container) {
      witnesses = witnesses && std::binary_search(pairs.begin(), pairs.end(), ContainmentFact{i, *c});
    }
  }
  ok = same && witnesses;
  OJson v;
  v["oracle_contained"] = OJson(std::vector<std::size_t>(expected.begin(), expected.end()));
  v["contained_match"] = same;
  v["witnesses_valid"] = witnesses;
  v["passed"] = ok;
  return v;
}

Outcome run_contain_circles(const Json& doc, const Options& opts) {
  expect_kind(doc, {"circles"});
  const auto circles = parse_circles(doc);
  const auto rep = circle_containment(circles);
  Outcome out;
  out.result = report_json(rep);
  if (!opts.verify) return out;
  if (circles.size() > oracle::kLimits.containment) {
    out.verification = OJson{{"oracle", "skipped: too many circles"}, {"passed", true}};
    return out;
  }
  bool ok = false;
  out.verification = verify_report(rep, oracle::containment_pairs(std::span<const Circle>(circles)), ok);
  out.mismatch = !ok;
  return out;
}

Outcome run_contain_rects(const Json& doc, const Options& opts) {
  expect_kind(doc, {"boxes"});
  const auto boxes = parse_boxes(doc);
  const std::size_t d = dimension(opts, doc, boxes.empty() ? 0 : boxes[0].dim());
  const auto rep = rect_containment(boxes, d);
  Outcome out;
  out.result = report_json(rep);
  if (!opts.verify) return out;
  if (boxes.size() > oracle::kLimits.containment) {
    out.verification = OJson{{"oracle", "skipped: too many boxes"}, {"passed", true}};
    return out;
  }
  bool ok = false;
  out.verification = verify_report(rep, oracle::containment_pairs(std::span<const HyperRect>(boxes)), ok);
  out.mismatch = !ok;
  return out;
}

Outcome run_contain_counts(const Json& doc, const Options& opts) {
  expect_kind(doc, {"boxes"});
  const auto boxes = parse_boxes(doc);
  const std::size_t d = dimension(opts, doc, boxes.empty() ? 0 : boxes[0].dim());
  const auto counts = rect_containment_counts(boxes, d);
  Outcome out;
  OJson rows = OJson::array();
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    OJson row;
    row["id"] = i;
    row["num_containers"] = counts.num_containers[i];
    row["num_contained"] = counts.num_contained[i];
    rows.push_back(std::move(row));
  }
  out.result["counts"] = std::move(rows);
  if (!opts.verify) return out;
  if (boxes.size() > oracle::kLimits.containment) {
    out.verification = OJson{{"oracle", "skipped: too many boxes"}, {"passed", true}};
    return out;
  }
  std::vector<std::size_t> containers(boxes.size(), 0), contained(boxes.size(), 0);
  for (const auto& f : oracle::containment_pairs(std::span<const HyperRect>(boxes))) {
    ++containers[f.inner];
    ++contained[f.outer];
  }
  const bool ok = containers == counts.num_containers && contained == counts.num_contained;
  out.verification = OJson{{"passed", ok}};
  out.mismatch = !ok;
  return out;
}

OJson subsequence_json(const SubsequenceResult& r) {
  OJson o;
  o["total_weight"] = r.total_weight ? write_number(*r.total_weight) : OJson(nullptr);
  o["indices"] = ids(r.indices);
  o["states"] = ids(r.states);
  return o;
}

OJson verify_subsequence(const SequenceInput& input, const Nfa& nfa, const SubsequenceResult& r, bool& ok) {
  OJson v;
  if (input.size() > oracle::kLimits.nfa) {
    ok = true;
    v["oracle"] = "skipped: sequence too long";
    v["passed"] = true;
    return v;
  }
  const SubsequenceResult o = oracle::nfa_dp(input, nfa);
  const bool same = o.total_weight == r.total_weight;
  bool rescored = !r.total_weight;
  if (r.total_weight) {
    const auto again = rescore(input, nfa, r);
    rescored = again && *again == *r.total_weight;
  }
  ok = same && rescored;
  v["oracle_total_weight"] = o.total_weight ? write_number(*o.total_weight) : OJson(nullptr);
  v["weight_match"] = same;
  v["traceback_rescored"] = rescored;
  v["passed"] = ok;
  return v;
}

Outcome run_nfa_subseq(const Json& doc, std::istream& in, const Options& opts) {
  expect_kind(doc, {"nfa-instance"});
  SequenceInput input;
  for (const Json& p : field(doc, "points")) input.points.push_back(numbers(p));
  input.weights = doc.contains("weights") ? numbers(doc.at("weights")) : std::vector<double>(input.points.size(), 1.0);
  Nfa nfa;
  if (!opts.nfa_path.empty()) {
    nfa = parse_nfa(load_json(opts.nfa_path, in));
  } else if (doc.contains("nfa")) {
    nfa = parse_nfa(doc.at("nfa"));
  } else {
    invalid("nfa-subseq needs an automaton (--nfa PATH or an inline \"nfa\" field)");
  }
  const SubsequenceResult r = max_weight_subsequence(input, nfa);
  Outcome out;
  out.result = subsequence_json(r);
  if (!opts.verify) return out;
  bool ok = false;
  out.verification = verify_subsequence(input, nfa, r, ok);
  out.mismatch = !ok;
  return out;
}

std::vector<double> parse_values(const Json& doc) {
  expect_kind(doc, {"values"});
  return numbers(field(doc, "values"));
}

Outcome run_preset(const Json& doc, const Options& opts, bool alternating) {
  const auto values = parse_values(doc);
  const double eps = opts.eps.value_or(kStrictEps);
  if (!(eps > 0.0)) invalid("--eps must be positive");
  const SubsequenceResult r = alternating ? preset_alternating(values, eps) : preset_lis(values, eps);
  Outcome out;
  out.result["length"] = r.total_weight ? static_cast<std::size_t>(*r.total_weight) : 0;
  out.result["indices"] = ids(r.indices);
  if (!opts.verify) return out;
  SequenceInput input;
  for (double x : values) input.points.push_back({x});
  input.weights.assign(values.size(), 1.0);
  bool ok = false;
  out.verification =
      verify_subsequence(input, alternating ? alternating_automaton(eps) : lis_automaton(eps), r, ok);
  out.mismatch = !ok;
  return out;
}

// ---------------------------------------------------------------------------

OJson points_json(const std::vector<std::vector<double>>& pts) {
  OJson arr = OJson::array();
  for (const auto& p : pts) arr.push_back(array_of(p));
  return arr;
}

OJson box_json(const HyperRect& b) {
  OJson o;
  o["lo"] = array_of(b.lo);
  o["hi"] = array_of(b.hi);
  return o;
}

OJson nfa_json(const Nfa& nfa) {
  OJson o;
  o["kind"] = "nfa";
  o["initial"] = nfa.initial;
  o["final"] = nfa.final;
  OJson edges = OJson::array();
  for (const NfaEdge& e : nfa.edges) {
    OJson row;
    row["from"] = e.from;
    row["to"] = e.to;
    row["lo"] = array_of(e.lo);
    row["hi"] = array_of(e.hi);
    edges.push_back(std::move(row));
  }
  o["edges"] = std::move(edges);
  return o;
}

OJson run_gen(const Options& opts) {
  gen::Rng rng(opts.seed);
  const std::size_t d = opts.d ? static_cast<std::size_t>(std::max(*opts.d, 1)) : 2;
  OJson doc;
  doc["kind"] = opts.kind;
  if (opts.kind == "points2d") {
    const std::vector<double> cv = opts.container_csv.empty() ? std::vector<double>{0, 0, 10} : parse_csv(opts.container_csv);
    if (cv.size() != 3) invalid("container must be cx,cy,r");
    const Circle c{cv[0], cv[1], cv[2]};
    std::vector<std::vector<double>> pts;
    for (const Point2& p : gen::points_in_circle(opts.n, c, rng)) pts.push_back({p.x, p.y});
    doc["container"] = array_of(cv);
    doc["points"] = points_json(pts);
  } else if (opts.kind == "points") {
    const HyperRect box{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)};
    std::vector<std::vector<double>> pts;
    for (const Point& p : gen::points_in_box(opts.n, box, rng)) pts.push_back(p.coords);
    doc["d"] = d;
    doc["container"] = box_json(box);
    doc["ratio"] = array_of(std::vector<double>(d, 1.0));
    doc["points"] = points_json(pts);
  } else if (opts.kind == "circles") {
    OJson arr = OJson::array();
    for (const Circle& c : gen::laminar_circles(opts.n, rng)) arr.push_back(array_of({c.cx, c.cy, c.r}));
    doc["circles"] = std::move(arr);
  } else if (opts.kind == "polygons") {
    OJson arr = OJson::array();
    for (std::size_t k = 0; k < opts.n; ++k) {
      const double cx = std::uniform_real_distribution<double>(0.0, 100.0)(rng);
      const double cy = std::uniform_real_distribution<double>(0.0, 100.0)(rng);
      OJson poly = OJson::array();
      for (const Point2& v : gen::star_polygon(8, cx, cy, 15.0, rng).vertices) poly.push_back(array_of({v.x, v.y}));
      arr.push_back(std::move(poly));
    }
    doc["polygons"] = std::move(arr);
  } else if (opts.kind == "boxes") {
    OJson arr = OJson::array();
    for (const HyperRect& b : gen::integer_boxes(opts.n, d, 20, rng)) arr.push_back(box_json(b));
    doc["d"] = d;
    doc["boxes"] = std::move(arr);
  } else if (opts.kind == "nfa-instance") {
    if (opts.m == 0) invalid("--m must be >= 1");
    const gen::NfaInstance inst = gen::nfa_instance(opts.n, opts.m, d, opts.edges, rng);
    doc["points"] = points_json(inst.input.points);
    doc["weights"] = array_of(inst.input.weights);
    doc["nfa"] = nfa_json(inst.nfa);
  } else if (opts.kind == "values") {
    std::vector<double> v(opts.n);
    std::iota(v.begin(), v.end(), 1.0);
    std::shuffle(v.begin(), v.end(), rng);
    doc["values"] = array_of(v);
  } else {
    invalid("unknown gen kind '" + opts.kind + "'");
  }
  return doc;
}

void emit(const OJson& doc, const Options& opts, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (opts.out_path.empty() || opts.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(opts.out_path);
  if (!f) invalid("cannot write " + opts.out_path);
  f << text;
}

}  // namespace

double read_number(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    invalid("expected a number or \"inf\"/\"-inf\", got \"" + s + "\"");
  }
  invalid("expected a number, got " + v.dump());
}

OJson write_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Sweep-line geometry and automaton subsequence analyses", "geosweep"};
  app.require_subcommand(1, 1);

  auto add_io = [&](CLI::App* sc) {
    sc->add_option("--in", opts.in_path, "Input document (default: stdin)");
    sc->add_option("--out", opts.out_path, "Output path (default: stdout)");
    sc->add_flag("--verify", opts.verify, "Cross-check against the brute-force oracle");
    sc->add_flag("--timing", opts.timing, "Append wall-clock timing to the output");
  };

  using Handler = std::function<Outcome(const Json&)>;
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  auto command = [&](const char* name, const char* help, Handler h) {
    CLI::App* sc = app.add_subcommand(name, help);
    add_io(sc);
    handlers.emplace_back(sc, std::move(h));
    return sc;
  };

  auto* ec = command("empty-circle", "Largest empty circle inside a container circle",
                     [&](const Json& doc) { return run_empty_circle(doc, opts); });
  ec->add_option("--container", opts.container_csv, "cx,cy,r");
  ec->add_option("--tol", opts.tol, "Radius tolerance");
  command("union-area-circles", "Area of a union of circles",
          [&](const Json& doc) { return run_union_area_circles(doc, opts); });
  command("union-area-polygons", "Area of a union of simple polygons",
          [&](const Json& doc) { return run_union_area_polygons(doc, opts); });
  command("union-volume", "Volume of a union of boxes", [&](const Json& doc) { return run_union_volume(doc, opts); })
      ->add_option("--d", opts.d, "Dimension");
  auto* er = command("empty-rect", "Largest empty box with fixed aspect ratio",
                     [&](const Json& doc) { return run_empty_rect(doc, opts); });
  er->add_option("--container", opts.container_csv, "lo_1,..,lo_d,hi_1,..,hi_d");
  er->add_option("--ratio", opts.ratio_csv, "f_1,..,f_d with f_1 = 1");
  er->add_option("--tol", opts.tol, "Tolerance on the first side length");
  er->add_option("--d", opts.d, "Dimension");
  command("contain-circles", "Containment hierarchy of circles",
          [&](const Json& doc) { return run_contain_circles(doc, opts); });
  command("contain-rects", "Containment hierarchy of boxes",
          [&](const Json& doc) { return run_contain_rects(doc, opts); })
      ->add_option("--d", opts.d, "Dimension");
  command("contain-counts", "Per-box container and contained counts",
          [&](const Json& doc) { return run_contain_counts(doc, opts); })
      ->add_option("--d", opts.d, "Dimension");
  command("nfa-subseq", "Maximum-weight subsequence accepted by an interval automaton",
          [&](const Json& doc) { return run_nfa_subseq(doc, in, opts); })
      ->add_option("--nfa", opts.nfa_path, "Automaton document");
  command("preset-lis", "Longest strictly increasing subsequence",
          [&](const Json& doc) { return run_preset(doc, opts, false); })
      ->add_option("--eps", opts.eps, "Strictness gap");
  command("preset-alt", "Longest strictly alternating subsequence",
          [&](const Json& doc) { return run_preset(doc, opts, true); })
      ->add_option("--eps", opts.eps, "Strictness gap");

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random input document");
  gen_cmd->add_option("--kind", opts.kind, "points2d | points | circles | polygons | boxes | nfa-instance | values")
      ->check(CLI::IsMember({"points2d", "points", "circles", "polygons", "boxes", "nfa-instance", "values"}));
  gen_cmd->add_option("--seed", opts.seed, "Random seed");
  gen_cmd->add_option("--n", opts.n, "Number of items");
  gen_cmd->add_option("--d", opts.d, "Dimension");
  gen_cmd->add_option("--m", opts.m, "Automaton states");
  gen_cmd->add_option("--edges", opts.edges, "Maximum automaton edges");
  gen_cmd->add_option("--container", opts.container_csv, "cx,cy,r for points2d");
  gen_cmd->add_option("--out", opts.out_path, "Output path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  }

  try {
    if (gen_cmd->parsed()) {
      emit(run_gen(opts), opts, out);
      return kExitOk;
    }
    for (auto& [sc, handler] : handlers) {
      if (!sc->parsed()) continue;
      const Json doc = load_json(opts.in_path, in);
      const auto start = std::chrono::steady_clock::now();
      Outcome res = handler(doc);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      OJson echo;
      echo["name"] = sc->get_name();
      echo["args"] = args;
      OJson doc_out;
      doc_out["command"] = std::move(echo);
      doc_out["result"] = std::move(res.result);
      if (res.verification) doc_out["verification"] = std::move(*res.verification);
      if (opts.timing) doc_out["timing"] = OJson{{"seconds", elapsed.count()}};
      emit(doc_out, opts, out);
      return res.mismatch ? kExitMismatch : kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Json::exception& e) {
    err << "error: InvalidArgument: " << e.what() << "\n";
    return kExitInvalid;
  }
  err << app.help();
  return kExitInvalid;
}

}  // namespace geosweep::cli
