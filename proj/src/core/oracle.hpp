#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "election.hpp"
#include "exact.hpp"
#include "objectives.hpp"
#include "optimizer.hpp"

namespace mwec {

struct WorkLimits {
  std::size_t max_nodes = 12;
  std::size_t max_budget = 3;
  std::size_t max_edges = 16;  // stochastic edges to enumerate
};

// Exact objective by total enumeration: every live-edge outcome is scored
// from scratch through candidate_scores, independently of node weights and
// of the linear SPV shortcut. The direction comes from the kind.
Rational exact_objective(const ElectionInstance& inst,
                         std::span<const NodeId> seeds, ObjectiveKind kind,
                         std::size_t max_enum_edges = kDefaultEnumerationLimit);

struct OracleResult {
  std::vector<NodeId> best_seeds;  // sorted
  Rational best_value;
  std::uint64_t evaluated_sets = 0;
  std::string objective_kind;
};

using SetFunction = std::function<Rational(std::span<const NodeId>)>;

// Maximizes fn over all subsets of {0..n-1} of size <= budget, visited in
// size-then-lexicographic order; the first maximizer wins ties, which makes
// it the lexicographically smallest among the smallest maximizers.
OracleResult brute_force_optimum(std::size_t n, std::size_t budget,
                                 const SetFunction& fn, std::string label);

OracleResult brute_force_optimum(const ElectionInstance& inst,
                                 std::size_t budget, ObjectiveKind kind,
                                 const WorkLimits& limits = {});

// Optimum of exact σ under the given weights.
OracleResult brute_force_sigma(const Graph& g, const NodeWeights& w,
                               std::size_t budget,
                               const WorkLimits& limits = {});

struct SubmodularityCheck {
  bool passed = true;
  // On failure: which property broke and a witness (S ⊆ T, x ∉ T).
  std::string violation;
  std::vector<NodeId> s;
  std::vector<NodeId> t;
  NodeId x = 0;
  std::uint64_t checked_triples = 0;
};

// Checks f(S) <= f(T) and f(S+x) - f(S) >= f(T+x) - f(T) over every
// S ⊆ T ⊆ V with |T| <= max_set_size and x ∉ T. n is capped at 20.
SubmodularityCheck check_monotone_submodular(std::size_t n,
                                             const SetFunction& fn,
                                             std::size_t max_set_size);

SubmodularityCheck check_monotone_submodular(const Graph& g,
                                             const NodeWeights& w,
                                             std::size_t max_set_size,
                                             const WorkLimits& limits = {});

}  // namespace mwec
