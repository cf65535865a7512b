#include "geosweep/nfa_subseq.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <tuple>

namespace geosweep {

namespace {

// Smallest x' with fl(x - x') <= b, so that the range query selects exactly
// the predecessors a direct difference test would accept.
double lowest_with_diff_at_most(double x, double b) {
  if (b == kPosInf) return kNegInf;
  if (b == kNegInf) return kPosInf;
  double c = x - b;
  if (!std::isfinite(c)) return c;
  for (int guard = 0; guard < 64 && x - c > b; ++guard) c = std::nextafter(c, kPosInf);
  for (int guard = 0; guard < 64; ++guard) {
    const double down = std::nextafter(c, kNegInf);
    if (!(x - down <= b)) break;
    c = down;
  }
  return c;
}

// Largest x' with fl(x - x') >= a.
double highest_with_diff_at_least(double x, double a) {
  if (a == kNegInf) return kPosInf;
  if (a == kPosInf) return kNegInf;
  double c = x - a;
  if (!std::isfinite(c)) return c;
  for (int guard = 0; guard < 64 && x - c < a; ++guard) c = std::nextafter(c, kNegInf);
  for (int guard = 0; guard < 64; ++guard) {
    const double up = std::nextafter(c, kPosInf);
    if (!(x - up >= a)) break;
    c = up;
  }
  return c;
}

bool edge_accepts(const NfaEdge& e, const std::vector<double>& prev, const std::vector<double>& next) {
  for (std::size_t p = 0; p < prev.size(); ++p) {
    const double diff = next[p] - prev[p];
    if (!(e.lo[p] <= diff && diff <= e.hi[p])) return false;
  }
  return true;
}

// Per-state max structure over all points: a segment tree for d = 1, a
// d-dimensional range tree otherwise.
class StateIndex {
 public:
  StateIndex(const SequenceInput& input, std::size_t d) {
    if (d == 1) {
      std::vector<SegmentTree::LeafKey> keys;
      keys.reserve(input.size());
      for (std::size_t i = 0; i < input.size(); ++i) keys.push_back({input.points[i][0], i});
      std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        return std::tie(a.coord, a.tie) < std::tie(b.coord, b.tie);
      });
      seg_ = std::make_unique<SegmentTree>(SegmentTree::build_keyed(std::move(keys)));
      coords_ = &input.points;
    } else {
      std::vector<WeightedPoint> pts;
      pts.reserve(input.size());
      for (std::size_t i = 0; i < input.size(); ++i) pts.push_back({input.points[i], kNegInf, i});
      range_ = std::make_unique<RangeTree>(pts, d);
    }
  }

  void set(std::size_t i, double w) {
    if (seg_) {
      seg_->update((*coords_)[i][0], w, i);
    } else {
      range_->set_weight(i, w);
    }
  }

  MaxResult query(const QueryBox& box) const {
    return seg_ ? seg_->query_max(box[0]) : range_->max_query(box);
  }

 private:
  std::unique_ptr<SegmentTree> seg_;
  std::unique_ptr<RangeTree> range_;
  const std::vector<std::vector<double>>* coords_ = nullptr;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

std::vector<std::string> validate_nfa(const Nfa& nfa, std::size_t d) {
  std::vector<std::string> diag;
  const std::size_t m = nfa.num_states();
  if (nfa.final.size() != m) {
    diag.push_back("initial/final flag lists differ in length (" + std::to_string(m) + " vs " +
                   std::to_string(nfa.final.size()) + ")");
  }
  bool any_initial = false, any_final = false;
  for (bool b : nfa.initial) any_initial = any_initial || b;
  for (bool b : nfa.final) any_final = any_final || b;
  if (!any_initial) diag.push_back("no initial state");
  if (!any_final) diag.push_back("no final state");
  for (std::size_t k = 0; k < nfa.edges.size(); ++k) {
    const NfaEdge& e = nfa.edges[k];
    const std::string tag = "edge " + std::to_string(k) + ": ";
    if (e.from >= m) diag.push_back(tag + "source state " + std::to_string(e.from) + " out of range");
    if (e.to >= m) diag.push_back(tag + "target state " + std::to_string(e.to) + " out of range");
    if (e.lo.size() != d || e.hi.size() != d) {
      diag.push_back(tag + "label has " + std::to_string(e.lo.size()) + "/" + std::to_string(e.hi.size()) +
                     " bounds, expected " + std::to_string(d));
      continue;
    }
    for (std::size_t p = 0; p < d; ++p) {
      if (std::isnan(e.lo[p]) || std::isnan(e.hi[p]) || e.lo[p] > e.hi[p]) {
        diag.push_back(tag + "interval " + std::to_string(p) + " has lo > hi");
      }
    }
  }
  return diag;
}

void validate_sequence(const SequenceInput& input, std::size_t d) {
  if (input.weights.size() != input.points.size()) {
    throw Error(ErrorCode::InvalidArgument, "weights and points differ in length");
  }
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input.points[i].size() != d) {
      throw Error(ErrorCode::DimensionMismatch, "point " + std::to_string(i) + " has " +
                                                    std::to_string(input.points[i].size()) +
                                                    " coordinates, expected " + std::to_string(d));
    }
    for (double c : input.points[i]) {
      if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
    }
    if (!std::isfinite(input.weights[i])) throw Error(ErrorCode::InvalidArgument, "non-finite weight");
  }
}

SubsequenceResult max_weight_subsequence(const SequenceInput& input, const Nfa& nfa) {
  std::size_t d = 0;
  if (!input.points.empty()) {
    d = input.points[0].size();
  } else if (!nfa.edges.empty()) {
    d = nfa.edges[0].lo.size();
  }
  if (auto diag = validate_nfa(nfa, d); !diag.empty()) throw Error(ErrorCode::InvalidAutomaton, diag.front());
  validate_sequence(input, d);
  const std::size_t n = input.size();
  const std::size_t m = nfa.num_states();
  if (n == 0) return {};
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "points need at least one coordinate");

  std::vector<std::vector<const NfaEdge*>> incoming(m);
  std::vector<std::unique_ptr<StateIndex>> index(m);
  for (const NfaEdge& e : nfa.edges) {
    incoming[e.to].push_back(&e);
    if (!index[e.from]) index[e.from] = std::make_unique<StateIndex>(input, d);
  }

  std::vector<double> best(n * m, kNegInf);
  struct Link {
    std::size_t point = kNone;
    std::size_t state = kNone;
  };
  std::vector<Link> pred(n * m);
  QueryBox box(d);

  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double>& x = input.points[i];
    const double w = input.weights[i];
    for (std::size_t j = 0; j < m; ++j) {
      double via = kNegInf;
      Link link;
      for (const NfaEdge* e : incoming[j]) {
        for (std::size_t p = 0; p < d; ++p) {
          box[p] = {lowest_with_diff_at_most(x[p], e->hi[p]), highest_with_diff_at_least(x[p], e->lo[p])};
        }
        if (!index[e->from]) continue;
        const MaxResult r = index[e->from]->query(box);
        if (!r.id) continue;
        if (r.weight > via ||
            (r.weight == via && std::tie(*r.id, e->from) < std::tie(link.point, link.state))) {
          via = r.weight;
          link = {*r.id, e->from};
        }
      }
      const double extended = link.point == kNone ? kNegInf : w + via;
      if (nfa.initial[j] && w >= extended) {
        best[i * m + j] = w;
      } else if (link.point != kNone) {
        best[i * m + j] = extended;
        pred[i * m + j] = link;
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (index[j] && best[i * m + j] != kNegInf) index[j]->set(i, best[i * m + j]);
    }
  }

  SubsequenceResult result;
  Link end;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double v = best[i * m + j];
      if (!nfa.final[j] || v == kNegInf) continue;
      if (!result.total_weight || v > *result.total_weight) {
        result.total_weight = v;
        end = {i, j};
      }
    }
  }
  if (!result.total_weight) return result;
  for (Link at = end; at.point != kNone; at = pred[at.point * m + at.state]) {
    result.indices.push_back(at.point);
    result.states.push_back(at.state);
  }
  std::reverse(result.indices.begin(), result.indices.end());
  std::reverse(result.states.begin(), result.states.end());
  return result;
}

std::optional<double> rescore(const SequenceInput& input, const Nfa& nfa, const SubsequenceResult& result) {
  const auto& idx = result.indices;
  const auto& st = result.states;
  if (idx.empty() || idx.size() != st.size()) return std::nullopt;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (idx[t] >= input.size() || st[t] >= nfa.num_states()) return std::nullopt;
    if (t > 0 && idx[t - 1] >= idx[t]) return std::nullopt;
  }
  if (!nfa.initial[st.front()] || !nfa.final[st.back()]) return std::nullopt;
  double total = input.weights[idx[0]];
  for (std::size_t t = 1; t < idx.size(); ++t) {
    bool ok = false;
    for (const NfaEdge& e : nfa.edges) {
      if (e.from == st[t - 1] && e.to == st[t] && edge_accepts(e, input.points[idx[t - 1]], input.points[idx[t]])) {
        ok = true;
        break;
      }
    }
    if (!ok) return std::nullopt;
    total += input.weights[idx[t]];
  }
  return total;
}

Nfa lis_automaton(double eps) {
  Nfa nfa;
  nfa.initial = {true};
  nfa.final = {true};
  nfa.edges.push_back({0, 0, {eps}, {kPosInf}});
  return nfa;
}

Nfa alternating_automaton(double eps) {
  Nfa nfa;
  nfa.initial = {true, true};
  nfa.final = {true, true};
  nfa.edges.push_back({0, 1, {eps}, {kPosInf}});
  nfa.edges.push_back({1, 0, {kNegInf}, {-eps}});
  return nfa;
}

namespace {

SubsequenceResult run_preset(const std::vector<double>& values, const Nfa& nfa) {
  SequenceInput input;
  input.points.reserve(values.size());
  for (double v : values) input.points.push_back({v});
  input.weights.assign(values.size(), 1.0);
  return max_weight_subsequence(input, nfa);
}

}  // namespace

SubsequenceResult preset_lis(const std::vector<double>& values, double eps) {
  return run_preset(values, lis_automaton(eps));
}

SubsequenceResult preset_alternating(const std::vector<double>& values, double eps) {
  return run_preset(values, alternating_automaton(eps));
}

}  // namespace geosweep
