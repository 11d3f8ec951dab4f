#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "diffusion.hpp"
#include "election.hpp"
#include "exact.hpp"

namespace mwec {

enum class ObjectiveKind {
  kMovC,
  kMovD,
  kDowC,
  kDowD,
  kSpvMovC,
  kSpvMovD,
  kSpvDovC,
  kSpvDovD,
};

const char* to_string(ObjectiveKind kind);
ObjectiveKind parse_objective(std::string_view text);
Direction direction_of(ObjectiveKind kind);
bool is_spv(ObjectiveKind kind);
// mov-* and spv-mov-* compare against the strongest opponent.
bool is_margin(ObjectiveKind kind);

// Per-party expectation F(C_i, S), in natural units (winner counts, or SPV
// points divided by the scoring scale).
struct PartyEstimate {
  std::vector<Rational> value;  // exact value, or the exact sample mean
  std::vector<double> half_width;
  EstimatorMode mode = EstimatorMode::kExact;
  std::size_t samples = 0;
  std::uint64_t rng_seed = 0;

  std::vector<double> as_double() const;
};

// F(C_i, ∅): winner counts of the original profile.
std::vector<Rational> baseline_party_winners(const ElectionInstance& inst);
// F_spv(C_i, ∅).
std::vector<Rational> baseline_spv_scores(const ElectionInstance& inst);

PartyEstimate expected_party_winners(const ElectionInstance& inst,
                                     std::span<const NodeId> seeds,
                                     Direction direction,
                                     const EstimatorConfig& cfg);

// F_spv(C_i, S) = F_spv(C_i, ∅) + Σ_v Pr(v ∈ A_S)·Δ_i(v).
PartyEstimate spv_party_scores(const ElectionInstance& inst,
                               std::span<const NodeId> seeds,
                               Direction direction,
                               const EstimatorConfig& cfg);

// Exact change of each party's SPV score (scaled units) when voter v updates.
std::vector<Score> spv_voter_deltas(const ElectionInstance& inst,
                                    Direction direction);

// Strongest opponent by (value desc, party asc); nullopt when t = 1.
std::optional<PartyId> strongest_opponent(std::span<const Rational> values);

struct ObjectiveValue {
  Rational value;
  std::optional<PartyId> best_opponent_before;
  std::optional<PartyId> best_opponent_after;
};

// Applies the kind's defining formula to per-party before/after values.
ObjectiveValue apply_objective_formula(ObjectiveKind kind,
                                       std::span<const Rational> before,
                                       std::span<const Rational> after);

struct ObjectiveReport {
  ObjectiveKind kind = ObjectiveKind::kSpvDovC;
  Rational value;
  double half_width = 0.0;
  std::vector<Rational> before;
  std::vector<Rational> after;
  std::vector<double> after_half_width;
  std::optional<PartyId> best_opponent_before;  // 0-based party index
  std::optional<PartyId> best_opponent_after;
  EstimatorMode mode = EstimatorMode::kExact;
  std::size_t samples = 0;
  std::uint64_t rng_seed = 0;
};

ObjectiveReport evaluate_multiwinner_objective(const ElectionInstance& inst,
                                               std::span<const NodeId> seeds,
                                               ObjectiveKind kind,
                                               const EstimatorConfig& cfg);

ObjectiveReport evaluate_spv_objective(const ElectionInstance& inst,
                                       std::span<const NodeId> seeds,
                                       ObjectiveKind kind,
                                       const EstimatorConfig& cfg);

// Dispatches on is_spv(kind).
ObjectiveReport evaluate_objective(const ElectionInstance& inst,
                                   std::span<const NodeId> seeds,
                                   ObjectiveKind kind,
                                   const EstimatorConfig& cfg);

}  // namespace mwec
