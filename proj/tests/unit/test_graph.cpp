#include <doctest.h>

#include "error.hpp"
#include "fixtures.hpp"
#include "graph.hpp"

using mwec::ErrorCode;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    mwec::load_graph(text);
  } catch (const mwec::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInternal;
}

std::string message_of(const std::string& text) {
  try {
    mwec::load_graph(text);
  } catch (const mwec::Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("load_graph parses a deterministic edge") {
  mwec::Graph g = mwec::load_graph("n 2\n0 1 1.0");
  CHECK(g.node_count() == 2);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges()[0].prob.is_one());
  CHECK(g.stochastic_edge_count() == 0);
}

TEST_CASE("load_graph parses a stochastic path") {
  mwec::Graph g = mwec::load_graph("n 3\n0 1 0.5\n1 2 0.5");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.stochastic_edge_count() == 2);
  CHECK(g.edges()[1].prob.exact() == fx::q(1, 2));
}

TEST_CASE("comments and blank lines are skipped") {
  mwec::Graph g = mwec::load_graph("# header\n\nn 3\n  # mid\n0 1 .25\n\n2 1 0\n");
  CHECK(g.edge_count() == 2);
  CHECK(g.edges()[0].prob.exact() == fx::q(1, 4));
  CHECK(g.edges()[1].prob.is_zero());
}

TEST_CASE("load_graph rejects invalid input with line numbers") {
  CHECK(code_of("n 2\n0 1 1.5") == ErrorCode::kParse);
  CHECK(message_of("n 2\n0 1 1.5").find("line 2") != std::string::npos);
  CHECK(message_of("n 3\n0 1 0.5\n0 5 0.5").find("line 3") != std::string::npos);
  CHECK(message_of("n 3\n0 1 0.5\n0 1 0.2").find("line 3") != std::string::npos);
  CHECK(message_of("n 3\n1 1 0.5").find("line 2") != std::string::npos);
  CHECK(code_of("n 2\n0 1") == ErrorCode::kParse);
  CHECK(code_of("n 2\n0 1 -0.5") == ErrorCode::kParse);
  CHECK(code_of("n 2\n0 1 1e-3") == ErrorCode::kParse);
  CHECK(code_of("0 1 0.5") == ErrorCode::kParse);
  CHECK(code_of("") == ErrorCode::kParse);
  CHECK(code_of("n x") == ErrorCode::kParse);
}

TEST_CASE("out_neighbors follows insertion order") {
  mwec::Graph path = mwec::load_graph("n 3\n0 1 0.5\n1 2 0.5");
  auto n0 = path.out_neighbors(0);
  REQUIRE(n0.size() == 1);
  CHECK(n0[0].target == 1);
  CHECK(n0[0].prob.exact() == fx::q(1, 2));
  CHECK(path.out_neighbors(2).empty());

  mwec::Graph star = mwec::load_graph("n 4\n0 3 1\n0 1 0.2\n0 2 0.3");
  auto spokes = star.out_neighbors(0);
  REQUIRE(spokes.size() == 3);
  CHECK(spokes[0].target == 3);
  CHECK(spokes[1].target == 1);
  CHECK(spokes[2].target == 2);
  CHECK_THROWS_AS(star.out_neighbors(4), mwec::Error);
}

TEST_CASE("serialize round-trips and degrees sum to the edge count") {
  const char* texts[] = {
      "n 0\n",
      "n 1\n",
      "n 3\n0 1 0.5\n1 2 0.125\n2 0 1\n",
      "n 5\n4 0 0.3\n0 4 0.7\n1 2 0\n3 1 1\n",
  };
  for (const char* t : texts) {
    mwec::Graph g = mwec::load_graph(t);
    mwec::Graph h = mwec::load_graph(g.serialize());
    CHECK(g == h);
    CHECK(h.serialize() == g.serialize());
    std::size_t deg = 0;
    for (mwec::NodeId u = 0; u < g.node_count(); ++u) deg += g.out_neighbors(u).size();
    CHECK(deg == g.edge_count());
  }
}

TEST_CASE("graph constructor validates edges directly") {
  using mwec::Edge;
  using mwec::Probability;
  CHECK_THROWS_AS(mwec::Graph(2, {Edge{0, 2, Probability::one()}}), mwec::Error);
  CHECK_THROWS_AS(mwec::Graph(2, {Edge{1, 1, Probability::one()}}), mwec::Error);
  CHECK_THROWS_AS(
      mwec::Graph(2, {Edge{0, 1, Probability::one()}, Edge{0, 1, Probability::zero()}}),
      mwec::Error);
  CHECK_NOTHROW(
      mwec::Graph(2, {Edge{0, 1, Probability::one()}, Edge{1, 0, Probability::zero()}}));
}

TEST_CASE("decimal probabilities are exact") {
  CHECK(mwec::Probability::parse("0.1").exact() == fx::q(1, 10));
  CHECK(mwec::Probability::parse("1.000").is_one());
  CHECK(mwec::Probability::parse("0.0").is_zero());
  CHECK_THROWS(mwec::Probability::parse("1.0001"));
  CHECK_THROWS(mwec::Probability::parse("."));
  CHECK_THROWS(mwec::Probability::parse("+0.5"));
  CHECK(mwec::to_double(fx::q(1, 10)) == 0.1);
  CHECK(mwec::to_double(fx::q(-7, 16)) == -0.4375);
}
