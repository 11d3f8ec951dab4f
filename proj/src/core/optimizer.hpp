#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "diffusion.hpp"
#include "election.hpp"
#include "exact.hpp"
#include "graph.hpp"

namespace mwec {

// Per-voter gain of the target party's SPV score when that voter updates,
// in the scoring rule's scaled units.
struct NodeWeights {
  std::vector<Score> w;
  Direction direction = Direction::kConstructive;
  std::int64_t scale = 1;

  std::size_t size() const { return w.size(); }
  Rational value(std::size_t v) const;
};

NodeWeights node_weights(const ElectionInstance& inst, Direction direction);

struct SigmaEstimate {
  Rational value;  // natural units; in MC mode the exact sample mean
  double half_width = 0.0;
  EstimatorMode mode = EstimatorMode::kExact;
  std::size_t samples = 0;
};

// σ(S) = Σ_v Pr(v ∈ A_S)·w(v).
SigmaEstimate sigma(const Graph& g, std::span<const NodeId> seeds,
                    const NodeWeights& w, const EstimatorConfig& cfg);

struct SeedSelection {
  std::vector<NodeId> seeds;          // insertion order
  std::vector<Rational> sigma_trace;  // σ after each insertion
  EstimatorMode mode = EstimatorMode::kExact;
  double half_width = 0.0;
  std::size_t samples = 0;
  std::uint64_t rng_seed = 0;
  std::size_t budget = 0;             // after clamping
  bool lazy = true;
  std::size_t gain_evaluations = 0;
  std::vector<std::string> warnings;

  Rational sigma() const {
    return sigma_trace.empty() ? Rational(0) : sigma_trace.back();
  }
};

// Greedy maximization of σ. Each round adds the node with the largest
// marginal gain (ties to the lowest id) even when that gain is zero. All
// evaluations share one set of live-edge worlds: every enumerated outcome in
// exact mode, or cfg.samples sampled worlds in Monte Carlo mode, so gains
// are exact integers and lazy evaluation returns the eager result.
SeedSelection greedy_select(const Graph& g, const NodeWeights& w,
                            std::size_t budget, const EstimatorConfig& cfg,
                            bool lazy = true);

}  // namespace mwec
