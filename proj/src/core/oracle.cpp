#include "oracle.hpp"

#include <bit>

#include "error.hpp"

namespace mwec {

namespace {

void check_limits(const Graph& g, std::size_t budget, const WorkLimits& limits) {
  if (g.node_count() > limits.max_nodes)
    throw LimitExceeded("brute force needs n <= " +
                        std::to_string(limits.max_nodes) + ", got " +
                        std::to_string(g.node_count()));
  if (budget > limits.max_budget)
    throw LimitExceeded("brute force needs budget <= " +
                        std::to_string(limits.max_budget) + ", got " +
                        std::to_string(budget));
  if (g.stochastic_edge_count() > limits.max_edges)
    throw LimitExceeded("brute force needs at most " +
                        std::to_string(limits.max_edges) +
                        " stochastic edges, got " +
                        std::to_string(g.stochastic_edge_count()));
}

std::vector<NodeId> mask_to_set(std::uint32_t mask) {
  std::vector<NodeId> out;
  for (NodeId v = 0; mask; ++v, mask >>= 1)
    if (mask & 1U) out.push_back(v);
  return out;
}

}  // namespace

Rational exact_objective(const ElectionInstance& inst,
                         std::span<const NodeId> seeds, ObjectiveKind kind,
                         std::size_t max_enum_edges) {
  const std::vector<NodeId> s = normalize_seeds(inst.graph(), seeds);
  const Direction dir = direction_of(kind);
  const PartyLayout& layout = inst.layout();
  const std::size_t t = layout.parties();
  const std::size_t k = layout.per_party();
  const bool spv = is_spv(kind);

  auto ingredient = [&](const NodeMask& active) {
    std::vector<Score> scores = candidate_scores(inst, active, dir);
    if (spv) return party_totals(scores, layout);
    WinnerResult w = determine_winners(scores, t, k);
    return std::vector<Score>(w.party_winners.begin(), w.party_winners.end());
  };

  const BigInt unit(spv ? static_cast<long>(inst.scoring().scale()) : 1L);
  std::vector<Rational> before;
  for (Score x : ingredient(NodeMask(inst.voters(), false)))
    before.push_back(make_rational(BigInt(static_cast<long>(x)), unit));

  LiveEdgeEnumerator en(inst.graph(), max_enum_edges);
  std::vector<BigInt> acc(t, 0);
  std::vector<char> active;
  std::vector<NodeId> queue;
  NodeMask mask(inst.voters());
  en.for_each([&](const std::vector<char>& live, const BigInt& weight) {
    en.reach(s, live, active, queue);
    for (std::size_t v = 0; v < mask.size(); ++v) mask[v] = active[v] != 0;
    std::vector<Score> x = ingredient(mask);
    for (std::size_t i = 0; i < t; ++i)
      if (x[i] != 0) acc[i] += weight * BigInt(static_cast<long>(x[i]));
  });
  std::vector<Rational> after;
  for (const BigInt& a : acc) after.push_back(make_rational(a, en.denominator() * unit));
  return apply_objective_formula(kind, before, after).value;
}

OracleResult brute_force_optimum(std::size_t n, std::size_t budget,
                                 const SetFunction& fn, std::string label) {
  budget = std::min(budget, n);
  OracleResult res;
  res.objective_kind = std::move(label);
  std::vector<NodeId> set;
  bool have = false;
  // Combinations of each size in lexicographic order.
  for (std::size_t size = 0; size <= budget; ++size) {
    std::vector<NodeId> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = static_cast<NodeId>(i);
    while (true) {
      Rational v = fn(idx);
      ++res.evaluated_sets;
      if (!have || v > res.best_value) {
        have = true;
        res.best_value = v;
        res.best_seeds = idx;
      }
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return res;
}

OracleResult brute_force_optimum(const ElectionInstance& inst,
                                 std::size_t budget, ObjectiveKind kind,
                                 const WorkLimits& limits) {
  check_limits(inst.graph(), budget, limits);
  return brute_force_optimum(
      inst.voters(), budget,
      [&](std::span<const NodeId> s) {
        return exact_objective(inst, s, kind, limits.max_edges);
      },
      to_string(kind));
}

OracleResult brute_force_sigma(const Graph& g, const NodeWeights& w,
                               std::size_t budget, const WorkLimits& limits) {
  check_limits(g, budget, limits);
  const EstimatorConfig cfg = EstimatorConfig::exact(limits.max_edges);
  return brute_force_optimum(
      g.node_count(), budget,
      [&](std::span<const NodeId> s) { return sigma(g, s, w, cfg).value; },
      "sigma");
}

SubmodularityCheck check_monotone_submodular(std::size_t n,
                                             const SetFunction& fn,
                                             std::size_t max_set_size) {
  if (n > 20) throw LimitExceeded("submodularity audit supports n <= 20");
  max_set_size = std::min(max_set_size, n);
  const std::uint32_t full = n == 0 ? 0U : ((std::uint32_t{1} << n) - 1U);
  std::vector<Rational> value(std::size_t{1} << n);
  std::vector<char> known(value.size(), 0);
  auto f = [&](std::uint32_t mask) -> const Rational& {
    if (!known[mask]) {
      value[mask] = fn(mask_to_set(mask));
      known[mask] = 1;
    }
    return value[mask];
  };

  SubmodularityCheck res;
  auto fail = [&](const char* what, std::uint32_t s, std::uint32_t t,
                  NodeId x) {
    res.passed = false;
    res.violation = what;
    res.s = mask_to_set(s);
    res.t = mask_to_set(t);
    res.x = x;
  };

  for (std::uint32_t t = 0; t <= full; ++t) {
    if (static_cast<std::size_t>(std::popcount(t)) > max_set_size) continue;
    // Every submask s of t, including t itself and the empty set.
    for (std::uint32_t s = t;; s = (s - 1) & t) {
      ++res.checked_triples;
      if (f(s) > f(t)) {
        fail("monotonicity", s, t, 0);
        return res;
      }
      for (NodeId x = 0; x < n; ++x) {
        const std::uint32_t bit = std::uint32_t{1} << x;
        if (t & bit) continue;
        ++res.checked_triples;
        if (f(s | bit) - f(s) < f(t | bit) - f(t)) {
          fail("submodularity", s, t, x);
          return res;
        }
      }
      if (s == 0) break;
    }
  }
  return res;
}

SubmodularityCheck check_monotone_submodular(const Graph& g,
                                             const NodeWeights& w,
                                             std::size_t max_set_size,
                                             const WorkLimits& limits) {
  check_limits(g, 0, limits);
  const EstimatorConfig cfg = EstimatorConfig::exact(limits.max_edges);
  return check_monotone_submodular(
      g.node_count(),
      [&](std::span<const NodeId> s) { return sigma(g, s, w, cfg).value; },
      max_set_size);
}

}  // namespace mwec
