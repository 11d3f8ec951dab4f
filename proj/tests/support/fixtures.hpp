#pragma once

#include <string>
#include <vector>

#include "election.hpp"
#include "graph.hpp"

namespace fx {

inline mwec::Graph graph(const std::string& text) { return mwec::load_graph(text); }

inline mwec::Graph diamond(const char* p = "0.5") {
  std::string q(p);
  return graph("n 4\n0 1 " + q + "\n0 2 " + q + "\n1 3 " + q + "\n2 3 " + q + "\n");
}

inline mwec::ElectionInstance instance(const mwec::Graph& g, std::size_t t,
                                       std::size_t k, const std::string& scoring,
                                       const std::vector<mwec::Ordering>& orders) {
  mwec::PartyLayout layout(t, k);
  return mwec::ElectionInstance(
      g, layout, mwec::ScoringRule::parse(scoring, layout.candidates()),
      mwec::PreferenceProfile(layout.candidates(), orders));
}

inline mwec::Rational q(long num, long den = 1) {
  mwec::Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace fx
