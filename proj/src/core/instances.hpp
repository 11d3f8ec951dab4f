#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "election.hpp"
#include "graph.hpp"

namespace mwec {

enum class Construction {
  kCmecExceptional,
  kCmecGeneral,
  kIntuition,
  kSpvC1,
  kSpvC2,
};

const char* to_string(Construction c);

struct ReductionInstance {
  ElectionInstance instance;
  Construction construction = Construction::kSpvC1;
  std::size_t base_node_count = 0;
  std::vector<NodeId> augmented_nodes;  // V' in id order
  // Gap of the scoring rule used by the construction (spv and cmec cases).
  GapIndex gap;
};

enum class CmecCase { kExceptional, kGeneral };

// t = 3, k = 2 construction over a deterministic base graph. Exceptional
// adds node n + v per base node v; general adds n + v, 2n + v and 3n + v.
// Every base edge and every augmenting edge gets probability 1.
ReductionInstance gen_cmec_reduction(const Graph& base, CmecCase which,
                                     const ScoringRule& f);

// True when f(1) = f(2) = f(3) > f(4) = f(5) = f(6) over six ranks.
bool is_exceptional_scoring(const ScoringRule& f);

// t = k = 2 plurality instance on 2 * half_size isolated voters.
ReductionInstance gen_intuition_instance(std::size_t half_size);

// Straight-party reduction on the unmodified base graph; the case follows
// from the scoring rule's minimum gap index j (C1 when j <= k).
ReductionInstance gen_spv_reduction(const Graph& base, const ScoringRule& f,
                                    std::size_t t, std::size_t k);

struct RandomInstanceOptions {
  std::size_t n = 6;
  std::size_t t = 2;
  std::size_t k = 2;
  double edge_prob = 0.3;  // chance of each ordered pair becoming an edge
  Probability activation_prob = Probability::one();
  // When set, each edge instead draws p uniformly from {1..9}/10.
  bool random_activation = false;
  std::string scoring = "borda";  // election-file scoring payload
  std::uint64_t rng_seed = 0;
};

ElectionInstance gen_random_instance(const RandomInstanceOptions& opts);

// Random directed graph with the same edge rules as gen_random_instance.
Graph gen_random_graph(std::size_t n, double edge_prob,
                       const Probability& activation_prob,
                       bool random_activation, std::uint64_t rng_seed);

}  // namespace mwec
