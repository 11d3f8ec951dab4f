#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diffusion.hpp"
#include "exact.hpp"
#include "graph.hpp"

namespace mwec {

using CandidateId = std::uint32_t;
using PartyId = std::uint32_t;  // 0 is the target party
using Rank = std::uint32_t;     // 1 = most preferred
// Scores are integers in units of 1/ScoringRule::scale().
using Score = std::int64_t;

enum class Direction { kConstructive, kDestructive };

const char* to_string(Direction d);
Direction parse_direction(std::string_view text);

// t parties of k candidates. Candidate i of party j (both 1-based) has flat
// id (j-1)*k + (i-1).
class PartyLayout {
 public:
  PartyLayout() = default;
  PartyLayout(std::size_t parties, std::size_t per_party);

  std::size_t parties() const { return parties_; }
  std::size_t per_party() const { return per_party_; }
  std::size_t candidates() const { return parties_ * per_party_; }

  CandidateId id(PartyId party, std::size_t index) const {
    return static_cast<CandidateId>(party * per_party_ + index);
  }
  PartyId party_of(CandidateId c) const {
    return static_cast<PartyId>(c / per_party_);
  }
  bool is_target(CandidateId c) const { return party_of(c) == 0; }

 private:
  std::size_t parties_ = 0;
  std::size_t per_party_ = 0;
};

enum class ScoringKind { kPlurality, kApproval, kBorda, kVeto, kExplicit };

// Non-increasing, non-constant rank-to-points vector over m ranks, stored as
// integers scaled by a power of ten so ties compare exactly.
class ScoringRule {
 public:
  ScoringRule() = default;

  static ScoringRule make(ScoringKind kind, std::size_t m,
                          std::size_t approval_count = 0);
  static ScoringRule from_decimals(const std::vector<Decimal>& values);
  // Accepts the `scoring` line payload of election files: "plurality",
  // "approval <x>", "borda", "veto" or "explicit f1 ... fm". Commas are
  // treated as separators too.
  static ScoringRule parse(std::string_view text, std::size_t m);

  ScoringKind kind() const { return kind_; }
  std::size_t size() const { return values_.size(); }
  std::int64_t scale() const { return scale_; }
  // f(rank), rank in 1..m, in scaled units.
  Score at(Rank rank) const { return values_[rank - 1]; }
  std::span<const Score> values() const { return values_; }
  double value(Rank rank) const {
    return static_cast<double>(at(rank)) / static_cast<double>(scale_);
  }
  // Payload for the election file `scoring` line.
  std::string describe() const;

 private:
  ScoringRule(ScoringKind kind, std::vector<Score> values, int digits,
              std::size_t approval_count);

  ScoringKind kind_ = ScoringKind::kExplicit;
  std::vector<Score> values_;
  std::int64_t scale_ = 1;
  int digits_ = 0;
  std::size_t approval_count_ = 0;
};

// Smallest j >= 2 with f(j-1) > f(j); a = f(j-1), b = f(j).
struct GapIndex {
  std::size_t j = 0;
  Score a = 0;
  Score b = 0;
};
GapIndex min_gap_index(const ScoringRule& f);

// rank vector: candidate id -> rank. order: rank-1 -> candidate id.
using RankVector = std::vector<Rank>;
using Ordering = std::vector<CandidateId>;

// Both throw Error(kInvalidArgument) unless the input is a bijection.
RankVector ranks_from_order(std::span<const CandidateId> order);
Ordering order_from_ranks(std::span<const Rank> ranks);

// One preference permutation per voter.
class PreferenceProfile {
 public:
  PreferenceProfile() = default;
  PreferenceProfile(std::size_t candidates, const std::vector<Ordering>& orders);

  std::size_t voters() const { return voters_; }
  std::size_t candidates() const { return candidates_; }
  std::span<const CandidateId> order(std::size_t voter) const {
    return std::span<const CandidateId>(order_).subspan(voter * candidates_,
                                                        candidates_);
  }
  std::span<const Rank> ranks(std::size_t voter) const {
    return std::span<const Rank>(rank_).subspan(voter * candidates_,
                                                candidates_);
  }

 private:
  std::size_t voters_ = 0;
  std::size_t candidates_ = 0;
  std::vector<CandidateId> order_;
  std::vector<Rank> rank_;
};

// New ranks of an active voter. Constructive: every target with an opponent
// ranked above it moves up one, and an opponent directly above a run of
// targets drops by the run length. Destructive is the mirror image.
RankVector apply_update(std::span<const Rank> ranks, const PartyLayout& layout,
                        Direction direction);

class ElectionInstance {
 public:
  ElectionInstance() = default;
  ElectionInstance(Graph graph, PartyLayout layout, ScoringRule scoring,
                   PreferenceProfile profile);

  const Graph& graph() const { return graph_; }
  const PartyLayout& layout() const { return layout_; }
  const ScoringRule& scoring() const { return scoring_; }
  const PreferenceProfile& profile() const { return profile_; }
  std::size_t voters() const { return profile_.voters(); }

 private:
  Graph graph_;
  PartyLayout layout_;
  ScoringRule scoring_;
  PreferenceProfile profile_;
};

// Election file contents before binding to a graph.
struct ElectionData {
  PartyLayout layout;
  ScoringRule scoring;
  std::vector<Ordering> orders;
};

ElectionData parse_election(std::string_view text);
// Throws unless the voter count equals the graph node count.
ElectionInstance bind_election(Graph graph, const ElectionData& data);
ElectionInstance load_election(std::string_view text, Graph graph);
std::string serialize_election(const ElectionInstance& inst);

// F_{A}(c): per-candidate scores when exactly the voters in `active` hold
// updated preferences.
std::vector<Score> candidate_scores(const ElectionInstance& inst,
                                    const NodeMask& active,
                                    Direction direction);

// Precomputed per-voter score contributions before and after an update, for
// repeated evaluation over many active sets.
class ScoreTable {
 public:
  ScoreTable(const ElectionInstance& inst, Direction direction);

  const std::vector<Score>& baseline() const { return baseline_; }
  // Change of candidate c's score when voter v updates.
  Score delta(std::size_t voter, CandidateId c) const {
    return delta_[voter * candidates_ + c];
  }
  std::vector<Score> scores(std::span<const NodeId> active) const;

 private:
  std::size_t candidates_ = 0;
  std::vector<Score> baseline_;
  std::vector<Score> delta_;
};

struct WinnerResult {
  Ordering order;                   // best first under the tie-break
  std::vector<std::size_t> y;       // candidates strictly below, per candidate
  std::vector<CandidateId> winners; // the top k, in order
  std::vector<std::size_t> party_winners;
};

// Ranks by (score desc, party asc, index asc); c wins iff y(c) >= (t-1)k.
WinnerResult determine_winners(std::span<const Score> scores, std::size_t t,
                               std::size_t k);

// SPV score of every party for a set of candidate scores.
std::vector<Score> party_totals(std::span<const Score> scores,
                                const PartyLayout& layout);

}  // namespace mwec
