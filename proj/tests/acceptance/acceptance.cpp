// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Ground truth comes from the reference code in support/ or from
// the brute-force oracle; nothing here compares a code path with itself.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "diffusion.hpp"
#include "election.hpp"
#include "error.hpp"
#include "instances.hpp"
#include "objectives.hpp"
#include "optimizer.hpp"
#include "oracle.hpp"
#include "reference.hpp"

using namespace mwec;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) first_failure = what;
    ok = false;
  }
};

std::vector<NodeId> all_nodes(std::size_t n) {
  std::vector<NodeId> s(n);
  for (std::size_t v = 0; v < n; ++v) s[v] = static_cast<NodeId>(v);
  return s;
}

std::vector<ref::Arc> arcs_of(const Graph& g) {
  std::vector<ref::Arc> out;
  for (const Edge& e : g.edges()) {
    mpq_class p = e.prob.exact();
    out.push_back(ref::Arc{e.source, e.target, p});
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> adjacency(const Graph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.node_count());
  for (const Edge& e : g.edges())
    if (!e.prob.is_zero()) adj[e.source].push_back(e.target);
  return adj;
}

std::string show(const std::vector<NodeId>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// 1 - 1/e, rounded up in the last of 60 decimals so the bound is never looser.
Rational one_minus_inv_e() {
  BigInt num("632120558828557678404476229838539132554188868968232165492164");
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, 60);
  return make_rational(num, den);
}

ElectionInstance random_instance(std::uint64_t seed, std::size_t n, std::size_t t,
                                 std::size_t k, double edge_prob) {
  RandomInstanceOptions opts;
  opts.n = n;
  opts.t = t;
  opts.k = k;
  opts.edge_prob = edge_prob;
  opts.random_activation = true;
  opts.scoring = t * k == 1 ? "plurality" : "borda";
  opts.rng_seed = seed;
  return gen_random_instance(opts);
}

// ---------------------------------------------------------------------------

Outcome update_fidelity() {
  Outcome r;
  PartyLayout worked(2, 3);
  auto c = [](int i, int j) { return static_cast<CandidateId>((j - 1) * 3 + i - 1); };
  const Ordering v = {c(1, 2), c(1, 1), c(2, 1), c(2, 2), c(3, 1), c(3, 2)};
  auto updated = [&](const Ordering& o, const PartyLayout& layout, Direction d) {
    return order_from_ranks(apply_update(ranks_from_order(o), layout, d));
  };
  r.expect(updated(v, worked, Direction::kConstructive) ==
               Ordering{c(1, 1), c(2, 1), c(1, 2), c(3, 1), c(2, 2), c(3, 2)},
           "worked example, constructive");
  r.expect(updated(v, worked, Direction::kDestructive) ==
               Ordering{c(1, 2), c(2, 2), c(1, 1), c(2, 1), c(3, 2), c(3, 1)},
           "worked example, destructive");

  std::mt19937_64 rng(20240601);
  int checked = 0;
  while (checked < 1000) {
    const std::size_t t = 1 + rng() % 4, k = 1 + rng() % 4;
    if (t * k < 2) continue;
    ++checked;
    PartyLayout layout(t, k);
    const std::size_t m = layout.candidates();
    std::vector<Score> fvals(m);
    for (auto& x : fvals) x = static_cast<Score>(rng() % 10);
    std::sort(fvals.rbegin(), fvals.rend());
    if (fvals.front() == fvals.back()) fvals.front() += 1;
    const Ordering order = ref::random_permutation(m, rng);
    const RankVector ranks = ranks_from_order(order);
    for (Direction d : {Direction::kConstructive, Direction::kDestructive}) {
      const bool con = d == Direction::kConstructive;
      RankVector out = apply_update(ranks, layout, d);
      std::vector<bool> used(m + 1, false);
      bool bijective = out.size() == m;
      for (Rank x : out) {
        if (x < 1 || x > m || used[x]) bijective = false;
        else used[x] = true;
      }
      r.expect(bijective, "bijectivity");
      if (!bijective) continue;
      Ordering new_order = order_from_ranks(out);
      // Relative order within each side is preserved.
      for (int side = 0; side < 2; ++side) {
        Ordering a, b;
        for (auto x : order)
          if (layout.is_target(x) == (side == 0)) a.push_back(x);
        for (auto x : new_order)
          if (layout.is_target(x) == (side == 0)) b.push_back(x);
        r.expect(a == b, "relative order");
      }
      Score before = 0, after = 0;
      for (CandidateId x = 0; x < m; ++x) {
        before += fvals[ranks[x] - 1];
        after += fvals[out[x] - 1];
        if (layout.is_target(x))
          r.expect(con ? out[x] <= ranks[x] : out[x] >= ranks[x], "target rank direction");
      }
      r.expect(before == after, "score conservation");
      r.expect(new_order ==
                   ref::block_shift(order, [&](std::uint32_t x) { return layout.is_target(x); },
                                    con),
               "block-shift agreement");
    }
  }
  r.detail = "worked example + " + std::to_string(checked) + " permutations x 2 directions";
  return r;
}

Outcome sigma_identity() {
  Outcome r;
  std::mt19937_64 pick(7);
  int made = 0;
  std::size_t sets = 0;
  for (std::uint64_t seed = 0; made < 50; ++seed) {
    const std::size_t n = 3 + pick() % 6;
    const std::size_t t = 2 + pick() % 2, k = 1 + pick() % 3;
    ElectionInstance inst = random_instance(1000 + seed, n, t, k, 0.25);
    if (inst.graph().stochastic_edge_count() > 10) continue;
    ++made;
    const NodeWeights wc = node_weights(inst, Direction::kConstructive);
    const NodeWeights wd = node_weights(inst, Direction::kDestructive);
    for (const auto& s : ref::subsets_up_to(n, 2)) {
      ++sets;
      std::vector<NodeId> seeds(s.begin(), s.end());
      Rational sc = sigma(inst.graph(), seeds, wc, EstimatorConfig::exact()).value;
      Rational sd = sigma(inst.graph(), seeds, wd, EstimatorConfig::exact()).value;
      r.expect(sc == exact_objective(inst, seeds, ObjectiveKind::kSpvDovC),
               "constructive, instance seed " + std::to_string(1000 + seed) + " S=" + show(seeds));
      r.expect(sd == exact_objective(inst, seeds, ObjectiveKind::kSpvDovD),
               "destructive, instance seed " + std::to_string(1000 + seed) + " S=" + show(seeds));
    }
  }
  r.detail = "50 instances, " + std::to_string(sets) + " seed sets, both directions";
  return r;
}

Outcome greedy_approximation() {
  Outcome r;
  const Rational ratio = one_minus_inv_e();
  const Rational mov_c_ratio = ratio / 3;
  const Rational mov_d_ratio = ratio / 2;
  std::mt19937_64 pick(99);
  int made = 0;
  Rational worst = 2;
  for (std::uint64_t seed = 0; made < 30; ++seed) {
    const std::size_t n = 4 + pick() % 7;
    const std::size_t t = 2 + pick() % 2, k = 1 + pick() % 3;
    const std::size_t budget = 1 + pick() % 3;
    ElectionInstance inst = random_instance(5000 + seed, n, t, k, 0.15);
    if (inst.graph().stochastic_edge_count() > 8) continue;
    ++made;
    const std::string tag = "instance seed " + std::to_string(5000 + seed);

    const NodeWeights wc = node_weights(inst, Direction::kConstructive);
    SeedSelection gc = greedy_select(inst.graph(), wc, budget, EstimatorConfig::exact());
    OracleResult opt = brute_force_sigma(inst.graph(), wc, budget);
    r.expect(gc.sigma() >= ratio * opt.best_value, "sigma bound, " + tag);
    if (opt.best_value > 0) worst = std::min(worst, Rational(gc.sigma() / opt.best_value));

    Rational mov_c = exact_objective(inst, gc.seeds, ObjectiveKind::kSpvMovC);
    OracleResult opt_c = brute_force_optimum(inst, budget, ObjectiveKind::kSpvMovC);
    r.expect(mov_c >= mov_c_ratio * opt_c.best_value, "spv-mov-c bound, " + tag);

    const NodeWeights wd = node_weights(inst, Direction::kDestructive);
    SeedSelection gd = greedy_select(inst.graph(), wd, budget, EstimatorConfig::exact());
    Rational mov_d = exact_objective(inst, gd.seeds, ObjectiveKind::kSpvMovD);
    OracleResult opt_d = brute_force_optimum(inst, budget, ObjectiveKind::kSpvMovD);
    r.expect(mov_d >= mov_d_ratio * opt_d.best_value, "spv-mov-d bound, " + tag);
  }
  std::ostringstream os;
  os << "30 instances; worst sigma ratio " << to_double(worst);
  r.detail = os.str();
  return r;
}

Outcome cmec_iff() {
  Outcome r;
  const char* exceptional[] = {"approval 3", "explicit 2 2 2 1 1 1"};
  const char* general[] = {"plurality", "borda", "veto", "approval 2",
                           "explicit 5 4 4 2 1 0"};
  std::size_t covering = 0, other = 0;
  for (std::uint64_t b = 0; b < 10; ++b) {
    const std::size_t nb = 3 + b % 4;
    Graph base = gen_random_graph(nb, 0.35, Probability::one(), false, 300 + b);
    std::vector<std::pair<CmecCase, const char*>> cases;
    for (auto f : exceptional) cases.emplace_back(CmecCase::kExceptional, f);
    for (auto f : general) cases.emplace_back(CmecCase::kGeneral, f);
    for (auto [which, rule] : cases) {
      ReductionInstance red = gen_cmec_reduction(base, which, ScoringRule::parse(rule, 6));
      const auto& inst = red.instance;
      const auto adj = adjacency(inst.graph());
      for (const auto& s : ref::subsets_up_to(nb, 3)) {
        std::vector<NodeId> seeds(s.begin(), s.end());
        auto seen = ref::reach(adj, s);
        const bool full = std::all_of(seen.begin(), seen.end(), [](bool x) { return x; });
        full ? ++covering : ++other;
        Rational dow = exact_objective(inst, seeds, ObjectiveKind::kDowC);
        Rational mov = exact_objective(inst, seeds, ObjectiveKind::kMovC);
        const std::string tag = std::string(rule) + ", base " + std::to_string(b) +
                                ", S=" + show(seeds);
        if (full)
          r.expect(dow > 0 && mov > 0, "positive under full activation, " + tag);
        else
          r.expect(dow == 0 && mov == 0, "zero under partial activation, " + tag);
      }
    }
  }
  ReductionInstance intuition = gen_intuition_instance(2);
  const std::vector<NodeId> one_each = {0, 2};
  r.expect(exact_objective(intuition.instance, one_each, ObjectiveKind::kMovC) == 4,
           "intuition mov-c");
  r.expect(exact_objective(intuition.instance, one_each, ObjectiveKind::kDowC) == 2,
           "intuition dow-c");
  r.expect(covering > 0 && other > 0, "both sides of the equivalence exercised");
  r.detail = "10 bases x 7 rules, " + std::to_string(covering) + " covering and " +
             std::to_string(other) + " non-covering seed sets; intuition 4 and 2";
  return r;
}

Outcome spv_closed_forms() {
  Outcome r;
  std::size_t sets = 0;
  for (std::size_t t : {2, 3})
    for (const char* rule : {"plurality", "borda", "veto"}) {
      ScoringRule f = ScoringRule::parse(rule, t * 2);
      for (std::uint64_t b = 0; b < 4; ++b) {
        Graph base = gen_random_graph(4 + b % 3, 0.3, Probability::one(), true, 700 + b);
        if (base.stochastic_edge_count() > 9) base = gen_random_graph(4, 0.2, Probability::one(), true, 700 + b);
        ReductionInstance red = gen_spv_reduction(base, f, t, 2);
        const GapIndex gap = red.gap;
        const bool c1 = red.construction == Construction::kSpvC1;
        const Rational per_voter =
            c1 ? Rational(f.at(static_cast<Rank>(gap.j - 1)) -
                              f.at(static_cast<Rank>(gap.j - 1 + 2)),
                          f.scale())
               : Rational(gap.a - gap.b, f.scale());
        const auto arcs = arcs_of(base);
        for (const auto& s : ref::subsets_up_to(base.node_count(), 2)) {
          ++sets;
          std::vector<NodeId> seeds(s.begin(), s.end());
          Rational expected_active = 0;
          for (const auto& p : ref::activation(base.node_count(), arcs, s)) expected_active += p;
          Rational dov = exact_objective(red.instance, seeds, ObjectiveKind::kSpvDovC);
          const std::string tag = std::string(rule) + " t=" + std::to_string(t) + " S=" + show(seeds);
          r.expect(dov == expected_active * per_voter, "closed form, " + tag);
          if (c1)
            r.expect(exact_objective(red.instance, seeds, ObjectiveKind::kSpvMovC) == 2 * dov,
                     "mov = 2 dov, " + tag);
        }
      }
    }
  r.detail = "plurality/borda/veto at t=2,3 (k=2), " + std::to_string(sets) + " seed sets";
  return r;
}

Outcome estimator_consistency() {
  Outcome r;
  std::size_t nodes = 0;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const std::size_t n = 5 + i % 4;
    Graph g = gen_random_graph(n, 0.3, Probability::one(), true, 900 + i);
    if (g.edge_count() > 12) g = gen_random_graph(n, 0.2, Probability::one(), true, 900 + i);
    if (g.edge_count() > 12) g = gen_random_graph(n, 0.12, Probability::one(), true, 900 + i);
    const std::vector<std::uint32_t> s = {static_cast<std::uint32_t>(i % n)};
    const std::vector<NodeId> seeds(s.begin(), s.end());
    const auto exact = ref::activation(n, arcs_of(g), s);
    EstimatorConfig cfg = EstimatorConfig::monte_carlo(100000, 4242 + i);
    ActivationEstimate a = activation_probabilities(g, seeds, cfg);
    ActivationEstimate b = activation_probabilities(g, seeds, cfg);
    cfg.threads = 4;
    ActivationEstimate c = activation_probabilities(g, seeds, cfg);
    r.expect(a.probs == b.probs && a.half_width == b.half_width, "rerun identical");
    r.expect(a.probs == c.probs && a.half_width == c.half_width, "thread count identical");
    for (std::size_t v = 0; v < n; ++v) {
      ++nodes;
      const double err = std::abs(a.probs[v] - to_double(exact[v]));
      r.expect(err <= 3 * a.half_width[v], "graph " + std::to_string(i) + " node " +
                                               std::to_string(v) + " outside 3 half-widths");
      if (a.half_width[v] > 0) worst = std::max(worst, err / a.half_width[v]);
    }
  }
  std::ostringstream os;
  os << "10 graphs, " << nodes << " nodes, R=1e5; worst error " << worst << " half-widths";
  r.detail = os.str();
  return r;
}

Outcome submodularity_audit() {
  Outcome r;
  std::uint64_t triples = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t n = 2 + i % 5;
    ElectionInstance inst = random_instance(1200 + i, n, 2 + i % 2, 1 + i % 3, 0.4);
    const Direction d = i % 2 ? Direction::kDestructive : Direction::kConstructive;
    const NodeWeights w = node_weights(inst, d);
    SubmodularityCheck chk = check_monotone_submodular(inst.graph(), w, n);
    triples += chk.checked_triples;
    r.expect(chk.passed, "instance " + std::to_string(i) + ": " + chk.violation);
    for (std::size_t budget = 1; budget <= n; ++budget) {
      auto lazy = greedy_select(inst.graph(), w, budget, EstimatorConfig::exact(), true);
      auto eager = greedy_select(inst.graph(), w, budget, EstimatorConfig::exact(), false);
      r.expect(lazy.seeds == eager.seeds && lazy.sigma_trace == eager.sigma_trace,
               "lazy vs eager, instance " + std::to_string(i));
    }
  }
  r.detail = "20 instances, " + std::to_string(triples) + " triples; lazy == eager";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"update rule fidelity", update_fidelity},
      {"sigma equals SPV difference of votes", sigma_identity},
      {"greedy approximation bounds", greedy_approximation},
      {"cmec reduction equivalence", cmec_iff},
      {"SPV reduction closed forms", spv_closed_forms},
      {"Monte Carlo estimator consistency", estimator_consistency},
      {"submodularity audit", submodularity_audit},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.first_failure = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu: %s (%s) [%.2fs]\n", o.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.ok ? o.detail.c_str() : o.first_failure.c_str(), secs);
    if (!o.ok) ++failures;
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s total time %.2fs (limit 60s)\n", total < 60.0 ? "PASS" : "FAIL", total);
  if (total >= 60.0) ++failures;
  return failures == 0 ? 0 : 1;
}
