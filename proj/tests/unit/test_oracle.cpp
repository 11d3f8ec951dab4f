#include <doctest.h>

#include "error.hpp"
#include "fixtures.hpp"
#include "instances.hpp"
#include "oracle.hpp"

using mwec::EstimatorConfig;
using mwec::NodeId;
using mwec::ObjectiveKind;
using mwec::Rational;

namespace {

mwec::NodeWeights uniform(std::size_t n) {
  mwec::NodeWeights w;
  w.w.assign(n, 1);
  return w;
}

}  // namespace

TEST_CASE("brute force sigma on a path") {
  mwec::Graph path = fx::graph("n 3\n0 1 0.5\n1 2 0.5\n");
  auto r = mwec::brute_force_sigma(path, uniform(3), 1);
  CHECK(r.best_seeds == std::vector<NodeId>{0});
  CHECK(r.best_value == fx::q(7, 4));
  CHECK(r.evaluated_sets == 4);

  auto zero = mwec::brute_force_sigma(path, uniform(3), 0);
  CHECK(zero.best_seeds.empty());
  CHECK(zero.best_value == 0);

  auto all = mwec::brute_force_sigma(path, uniform(3), 3);
  CHECK(all.best_value == 3);
}

TEST_CASE("ties go to the smallest set first, then lexicographic order") {
  auto flat = [](std::span<const NodeId> s) { return Rational(s.empty() ? 0 : 1); };
  auto r = mwec::brute_force_optimum(4, 3, flat, "flat");
  CHECK(r.best_seeds == std::vector<NodeId>{0});
  CHECK(r.objective_kind == "flat");
  CHECK(r.evaluated_sets == 1 + 4 + 6 + 4);
}

TEST_CASE("exact objective agrees with the evaluators") {
  mwec::RandomInstanceOptions opts;
  opts.n = 6;
  opts.t = 3;
  opts.k = 2;
  opts.edge_prob = 0.25;
  opts.random_activation = true;
  const ObjectiveKind kinds[] = {ObjectiveKind::kMovC,    ObjectiveKind::kMovD,
                                 ObjectiveKind::kDowC,    ObjectiveKind::kDowD,
                                 ObjectiveKind::kSpvMovC, ObjectiveKind::kSpvMovD,
                                 ObjectiveKind::kSpvDovC, ObjectiveKind::kSpvDovD};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    opts.rng_seed = seed;
    auto inst = mwec::gen_random_instance(opts);
    std::vector<NodeId> s = {static_cast<NodeId>(seed), 4};
    for (ObjectiveKind k : kinds) {
      CHECK(mwec::exact_objective(inst, s, k) ==
            mwec::evaluate_objective(inst, s, k, EstimatorConfig::exact()).value);
      CHECK(mwec::exact_objective(inst, {}, k) == 0);
    }
  }
}

TEST_CASE("oracle optimum is recomputable") {
  mwec::RandomInstanceOptions opts;
  opts.n = 6;
  opts.edge_prob = 0.3;
  opts.activation_prob = mwec::Probability::parse("0.4");
  opts.rng_seed = 9;
  auto inst = mwec::gen_random_instance(opts);
  for (ObjectiveKind k : {ObjectiveKind::kSpvMovC, ObjectiveKind::kMovD}) {
    auto r = mwec::brute_force_optimum(inst, 2, k);
    CHECK(r.best_value == mwec::exact_objective(inst, r.best_seeds, k));
    CHECK(r.objective_kind == mwec::to_string(k));
  }
}

TEST_CASE("work limits are enforced") {
  mwec::Graph g = mwec::gen_random_graph(13, 0.0, mwec::Probability::one(), false, 0);
  CHECK_THROWS_AS(mwec::brute_force_sigma(g, uniform(13), 1), mwec::LimitExceeded);
  mwec::Graph small = fx::graph("n 4\n");
  CHECK_THROWS_AS(mwec::brute_force_sigma(small, uniform(4), 4), mwec::LimitExceeded);
  mwec::WorkLimits wide;
  wide.max_budget = 4;
  CHECK(mwec::brute_force_sigma(small, uniform(4), 4, wide).best_value == 4);
  mwec::Graph dense = mwec::gen_random_graph(8, 0.5, mwec::Probability::parse("0.5"), false, 1);
  REQUIRE(dense.edge_count() > 16);
  CHECK_THROWS_AS(mwec::brute_force_sigma(dense, uniform(8), 1), mwec::LimitExceeded);
}

TEST_CASE("submodularity audit") {
  mwec::Graph g = fx::graph("n 5\n0 1 0.5\n0 2 0.5\n1 3 0.5\n2 3 0.5\n3 4 0.7\n");
  auto ok = mwec::check_monotone_submodular(g, uniform(5), 4);
  CHECK(ok.passed);
  CHECK(ok.checked_triples > 0);

  auto empty = mwec::check_monotone_submodular(fx::graph("n 0\n"), uniform(0), 3);
  CHECK(empty.passed);

  // |S|^2 has increasing returns.
  auto square = [](std::span<const NodeId> s) {
    return Rational(static_cast<long>(s.size() * s.size()));
  };
  auto bad = mwec::check_monotone_submodular(4, square, 3);
  CHECK_FALSE(bad.passed);
  CHECK(bad.violation.find("submodular") != std::string::npos);
  CHECK(bad.s.size() < bad.t.size());

  auto shrinking = [](std::span<const NodeId> s) { return Rational(-static_cast<long>(s.size())); };
  auto mono = mwec::check_monotone_submodular(3, shrinking, 2);
  CHECK_FALSE(mono.passed);
  CHECK(mono.violation.find("monoton") != std::string::npos);
}
