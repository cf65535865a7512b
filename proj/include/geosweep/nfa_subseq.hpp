#pragma once

// Maximum-weight subsequence accepted by an automaton whose transitions are
// labelled with per-dimension difference intervals.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geosweep/index_trees.hpp"

namespace geosweep {

/// Default margin used to encode strict inequalities as closed intervals.
inline constexpr double kStrictEps = 1e-9;

struct NfaEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  /// Closed bounds on x(next, p) - x(prev, p); infinite endpoints allowed.
  std::vector<double> lo;
  std::vector<double> hi;
};

struct Nfa {
  std::vector<bool> initial;
  std::vector<bool> final;
  std::vector<NfaEdge> edges;

  std::size_t num_states() const noexcept { return initial.size(); }
};

struct SequenceInput {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }
};

struct SubsequenceResult {
  std::optional<double> total_weight;  // empty when no final state is reachable
  std::vector<std::size_t> indices;
  std::vector<std::size_t> states;
};

/// Empty iff the automaton is well formed for dimension `d`.
std::vector<std::string> validate_nfa(const Nfa& nfa, std::size_t d);

/// Throws InvalidAutomaton when `validate_nfa` reports anything, and
/// DimensionMismatch / InvalidArgument for malformed sequences.
SubsequenceResult max_weight_subsequence(const SequenceInput& input, const Nfa& nfa);

/// Sum of weights along `result` after checking it is an accepted run;
/// empty if any transition or endpoint state is invalid.
std::optional<double> rescore(const SequenceInput& input, const Nfa& nfa, const SubsequenceResult& result);

Nfa lis_automaton(double eps = kStrictEps);
Nfa alternating_automaton(double eps = kStrictEps);

/// Longest strictly increasing subsequence (values closer than `eps` count as equal).
SubsequenceResult preset_lis(const std::vector<double>& values, double eps = kStrictEps);
/// Longest strictly alternating subsequence, starting in either direction.
SubsequenceResult preset_alternating(const std::vector<double>& values, double eps = kStrictEps);

void validate_sequence(const SequenceInput& input, std::size_t d);

}  // namespace geosweep
