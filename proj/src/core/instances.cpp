#include "instances.hpp"

#include <limits>

#include "diffusion.hpp"
#include "error.hpp"

namespace mwec {

namespace {

// Candidate c_i^j with 1-based i (index) and j (party) for t = 3, k = 2.
constexpr CandidateId c(int i, int j) {
  return static_cast<CandidateId>((j - 1) * 2 + (i - 1));
}

Graph deterministic_copy(const Graph& base, std::size_t node_count,
                         std::vector<Edge> extra) {
  std::vector<Edge> edges;
  edges.reserve(base.edge_count() + extra.size());
  for (const Edge& e : base.edges())
    edges.push_back(Edge{e.source, e.target, Probability::one()});
  for (Edge& e : extra) edges.push_back(std::move(e));
  return Graph(node_count, std::move(edges));
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased and library-independent.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

const char* to_string(Construction c) {
  switch (c) {
    case Construction::kCmecExceptional:
      return "cmec-exceptional";
    case Construction::kCmecGeneral:
      return "cmec-general";
    case Construction::kIntuition:
      return "intuition-t2k2";
    case Construction::kSpvC1:
      return "spv-c1";
    case Construction::kSpvC2:
      return "spv-c2";
  }
  return "?";
}

bool is_exceptional_scoring(const ScoringRule& f) {
  if (f.size() != 6) return false;
  return f.at(1) == f.at(2) && f.at(2) == f.at(3) && f.at(3) > f.at(4) &&
         f.at(4) == f.at(5) && f.at(5) == f.at(6);
}

ReductionInstance gen_cmec_reduction(const Graph& base, CmecCase which,
                                     const ScoringRule& f) {
  if (f.size() != 6)
    throw invalid_argument("cmec reduction needs a scoring rule over 6 ranks");
  const bool exceptional = is_exceptional_scoring(f);
  if (which == CmecCase::kExceptional && !exceptional)
    throw invalid_argument(
        "exceptional case needs f(1)=f(2)=f(3) > f(4)=f(5)=f(6)");
  if (which == CmecCase::kGeneral && exceptional)
    throw invalid_argument(
        "scoring rule has the exceptional shape; use the exceptional case");

  const std::size_t n = base.node_count();
  const std::size_t copies = which == CmecCase::kExceptional ? 1 : 3;
  const std::size_t total = n * (copies + 1);

  std::vector<Edge> extra;
  ReductionInstance out;
  for (std::size_t q = 1; q <= copies; ++q)
    for (NodeId v = 0; v < n; ++v) {
      NodeId added = static_cast<NodeId>(q * n + v);
      extra.push_back(Edge{v, added, Probability::one()});
      out.augmented_nodes.push_back(added);
    }

  std::vector<Ordering> lists;
  if (which == CmecCase::kExceptional) {
    lists = {
        {c(1, 2), c(2, 2), c(1, 3), c(1, 1), c(2, 1), c(2, 3)},
        {c(1, 3), c(2, 3), c(1, 2), c(2, 1), c(1, 1), c(2, 2)},
    };
  } else {
    lists = {
        {c(1, 2), c(1, 1), c(1, 3), c(2, 2), c(2, 1), c(2, 3)},
        {c(2, 2), c(2, 1), c(2, 3), c(1, 2), c(1, 1), c(1, 3)},
        {c(1, 2), c(1, 3), c(1, 1), c(2, 2), c(2, 3), c(2, 1)},
        {c(2, 2), c(2, 3), c(2, 1), c(1, 2), c(1, 3), c(1, 1)},
    };
  }
  std::vector<Ordering> orders;
  orders.reserve(total);
  for (std::size_t q = 0; q <= copies; ++q)
    for (std::size_t v = 0; v < n; ++v) orders.push_back(lists[q]);

  PartyLayout layout(3, 2);
  out.instance =
      ElectionInstance(deterministic_copy(base, total, std::move(extra)),
                       layout, f, PreferenceProfile(6, orders));
  out.construction = which == CmecCase::kExceptional
                         ? Construction::kCmecExceptional
                         : Construction::kCmecGeneral;
  out.base_node_count = n;
  out.gap = min_gap_index(f);
  return out;
}

ReductionInstance gen_intuition_instance(std::size_t half_size) {
  if (half_size == 0) throw invalid_argument("half size must be >= 1");
  PartyLayout layout(2, 2);
  // Flat ids: c_1^1 = 0, c_2^1 = 1, c_1^2 = 2, c_2^2 = 3.
  const Ordering first = {2, 0, 1, 3};
  const Ordering second = {3, 1, 0, 2};
  std::vector<Ordering> orders;
  for (std::size_t v = 0; v < half_size; ++v) orders.push_back(first);
  for (std::size_t v = 0; v < half_size; ++v) orders.push_back(second);
  ReductionInstance out;
  ScoringRule f = ScoringRule::make(ScoringKind::kPlurality, 4);
  out.instance = ElectionInstance(Graph(2 * half_size, {}), layout, f,
                                  PreferenceProfile(4, orders));
  out.construction = Construction::kIntuition;
  out.base_node_count = 2 * half_size;
  out.gap = min_gap_index(f);
  return out;
}

ReductionInstance gen_spv_reduction(const Graph& base, const ScoringRule& f,
                                    std::size_t t, std::size_t k) {
  if (t < 2) throw invalid_argument("spv reduction needs t >= 2");
  PartyLayout layout(t, k);
  const std::size_t m = layout.candidates();
  if (f.size() != m)
    throw invalid_argument("scoring rule has " + std::to_string(f.size()) +
                           " ranks, expected " + std::to_string(m));
  const GapIndex gap = min_gap_index(f);
  const std::size_t j = gap.j;

  std::vector<CandidateId> opponents;
  for (CandidateId c = static_cast<CandidateId>(k); c < m; ++c)
    opponents.push_back(c);

  Ordering order;
  order.reserve(m);
  Construction which;
  if (j <= k) {
    // Opponents at ranks 1..j-1, targets at j..j+k-1, then the rest.
    which = Construction::kSpvC1;
    const std::size_t lead = j - 1;
    order.insert(order.end(), opponents.begin(),
                 opponents.begin() + static_cast<long>(lead));
    for (CandidateId c = 0; c < k; ++c) order.push_back(c);
    order.insert(order.end(), opponents.begin() + static_cast<long>(lead),
                 opponents.end());
  } else {
    // Targets at 1..k-1, opponents at k..j-1, last target at j.
    which = Construction::kSpvC2;
    const std::size_t lead = j - k;
    for (CandidateId c = 0; c + 1 < k; ++c) order.push_back(c);
    order.insert(order.end(), opponents.begin(),
                 opponents.begin() + static_cast<long>(lead));
    order.push_back(static_cast<CandidateId>(k - 1));
    order.insert(order.end(), opponents.begin() + static_cast<long>(lead),
                 opponents.end());
  }

  std::vector<Ordering> orders(base.node_count(), order);
  ReductionInstance out;
  out.instance = ElectionInstance(base, layout, f, PreferenceProfile(m, orders));
  out.construction = which;
  out.base_node_count = base.node_count();
  out.gap = gap;
  return out;
}

Graph gen_random_graph(std::size_t n, double edge_prob,
                       const Probability& activation_prob,
                       bool random_activation, std::uint64_t rng_seed) {
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw invalid_argument("edge probability must lie in [0,1]");
  Rng rng = sample_stream(rng_seed, 0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (!(uniform01(rng) < edge_prob)) continue;
      Probability p = activation_prob;
      if (random_activation)
        p = Probability(Decimal(static_cast<std::int64_t>(1 + uniform_below(rng, 9)), 1));
      edges.push_back(Edge{u, v, p});
    }
  return Graph(n, std::move(edges));
}

ElectionInstance gen_random_instance(const RandomInstanceOptions& opts) {
  if (opts.n == 0) throw invalid_argument("n must be >= 1");
  PartyLayout layout(opts.t, opts.k);
  const std::size_t m = layout.candidates();
  ScoringRule f = ScoringRule::parse(opts.scoring, m);
  Graph g = gen_random_graph(opts.n, opts.edge_prob, opts.activation_prob,
                             opts.random_activation, opts.rng_seed);
  Rng rng = sample_stream(opts.rng_seed, 1);
  std::vector<Ordering> orders;
  orders.reserve(opts.n);
  for (std::size_t v = 0; v < opts.n; ++v) {
    Ordering order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = static_cast<CandidateId>(i);
    for (std::size_t i = m - 1; i > 0; --i)
      std::swap(order[i], order[uniform_below(rng, i + 1)]);
    orders.push_back(std::move(order));
  }
  return ElectionInstance(std::move(g), layout, std::move(f),
                          PreferenceProfile(m, orders));
}

}  // namespace mwec
