#include "objectives.hpp"

#include "error.hpp"

namespace mwec {

namespace {

struct KindName {
  ObjectiveKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {ObjectiveKind::kMovC, "mov-c"},         {ObjectiveKind::kMovD, "mov-d"},
    {ObjectiveKind::kDowC, "dow-c"},         {ObjectiveKind::kDowD, "dow-d"},
    {ObjectiveKind::kSpvMovC, "spv-mov-c"},  {ObjectiveKind::kSpvMovD, "spv-mov-d"},
    {ObjectiveKind::kSpvDovC, "spv-dov-c"},  {ObjectiveKind::kSpvDovD, "spv-dov-d"},
};

// Per-sample, per-party integer ingredient (winner counts or scaled SPV
// deltas), row-major by sample index.
struct SampleMatrix {
  std::size_t parties = 0;
  std::size_t samples = 0;
  std::vector<std::int64_t> data;

  std::int64_t at(std::size_t r, std::size_t i) const {
    return data[r * parties + i];
  }
};

template <typename Fn>
SampleMatrix sample_parties(const Graph& g, std::span<const NodeId> seeds,
                            const EstimatorConfig& cfg, std::size_t parties,
                            Fn&& fn) {
  if (cfg.samples == 0) throw invalid_argument("sample count must be positive");
  SampleMatrix m;
  m.parties = parties;
  m.samples = cfg.samples;
  m.data.assign(cfg.samples * parties, 0);
  run_monte_carlo(g, seeds, cfg, worker_count(cfg),
                  [&](std::size_t r, std::size_t,
                      const ActivationSample& sample) {
                    fn(sample, m.data.data() + r * parties);
                  });
  return m;
}

// Sample means offset[i] + mean_r(data[r][i]) / unit as exact rationals.
PartyEstimate summarize(const SampleMatrix& m, std::span<const Rational> offset,
                        std::int64_t unit, const EstimatorConfig& cfg) {
  PartyEstimate est;
  est.mode = EstimatorMode::kMonteCarlo;
  est.samples = m.samples;
  est.rng_seed = cfg.rng_seed;
  const BigInt denom = BigInt(static_cast<long>(m.samples)) * BigInt(unit);
  std::vector<double> column(m.samples);
  for (std::size_t i = 0; i < m.parties; ++i) {
    BigInt sum = 0;
    for (std::size_t r = 0; r < m.samples; ++r) {
      sum += BigInt(static_cast<long>(m.at(r, i)));
      column[r] = static_cast<double>(m.at(r, i)) / static_cast<double>(unit);
    }
    est.value.push_back(offset[i] + make_rational(sum, denom));
    est.half_width.push_back(mean_half_width(column));
  }
  return est;
}

struct Sampled {
  PartyEstimate estimate;
  SampleMatrix raw;
  std::int64_t unit = 1;
};

Sampled sample_party_winners(const ElectionInstance& inst,
                             std::span<const NodeId> seeds, Direction direction,
                             const EstimatorConfig& cfg) {
  const std::size_t t = inst.layout().parties();
  const std::size_t k = inst.layout().per_party();
  ScoreTable table(inst, direction);
  Sampled out;
  out.raw = sample_parties(
      inst.graph(), seeds, cfg, t,
      [&](const ActivationSample& sample, std::int64_t* row) {
        std::vector<Score> scores = table.scores(sample.active);
        WinnerResult w = determine_winners(scores, t, k);
        for (std::size_t i = 0; i < t; ++i)
          row[i] = static_cast<std::int64_t>(w.party_winners[i]);
      });
  std::vector<Rational> zero(t, Rational(0));
  out.estimate = summarize(out.raw, zero, 1, cfg);
  return out;
}

Sampled sample_spv_scores(const ElectionInstance& inst,
                          std::span<const NodeId> seeds, Direction direction,
                          const EstimatorConfig& cfg) {
  const std::size_t t = inst.layout().parties();
  const std::vector<Score> deltas = spv_voter_deltas(inst, direction);
  Sampled out;
  out.unit = inst.scoring().scale();
  out.raw = sample_parties(inst.graph(), seeds, cfg, t,
                           [&](const ActivationSample& sample,
                               std::int64_t* row) {
                             for (NodeId v : sample.active)
                               for (std::size_t i = 0; i < t; ++i)
                                 row[i] += deltas[v * t + i];
                           });
  out.estimate = summarize(out.raw, baseline_spv_scores(inst), out.unit, cfg);
  return out;
}

PartyEstimate exact_estimate(std::vector<Rational> values) {
  PartyEstimate est;
  est.mode = EstimatorMode::kExact;
  est.half_width.assign(values.size(), 0.0);
  est.value = std::move(values);
  return est;
}

// Half-width of the objective from its per-sample realizations. Constant
// terms of the formula do not change the spread, so only the sampled
// ingredients are used.
double objective_half_width(ObjectiveKind kind, const Sampled& s,
                            std::optional<PartyId> moa) {
  const double sign =
      direction_of(kind) == Direction::kConstructive ? 1.0 : -1.0;
  std::vector<double> x(s.raw.samples);
  for (std::size_t r = 0; r < s.raw.samples; ++r) {
    double v = static_cast<double>(s.raw.at(r, 0));
    if (is_margin(kind) && moa) v -= static_cast<double>(s.raw.at(r, *moa));
    x[r] = sign * v / static_cast<double>(s.unit);
  }
  return mean_half_width(x);
}

ObjectiveReport make_report(ObjectiveKind kind, std::vector<Rational> before,
                            const PartyEstimate& after) {
  ObjectiveReport rep;
  rep.kind = kind;
  ObjectiveValue v = apply_objective_formula(kind, before, after.value);
  rep.value = v.value;
  rep.best_opponent_before = v.best_opponent_before;
  rep.best_opponent_after = v.best_opponent_after;
  rep.before = std::move(before);
  rep.after = after.value;
  rep.after_half_width = after.half_width;
  rep.mode = after.mode;
  rep.samples = after.samples;
  rep.rng_seed = after.rng_seed;
  return rep;
}

}  // namespace

const char* to_string(ObjectiveKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "?";
}

ObjectiveKind parse_objective(std::string_view text) {
  for (const auto& kn : kKindNames)
    if (text == kn.name) return kn.kind;
  throw invalid_argument("unknown objective '" + std::string(text) + "'");
}

Direction direction_of(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kMovC:
    case ObjectiveKind::kDowC:
    case ObjectiveKind::kSpvMovC:
    case ObjectiveKind::kSpvDovC:
      return Direction::kConstructive;
    default:
      return Direction::kDestructive;
  }
}

bool is_spv(ObjectiveKind kind) {
  return kind == ObjectiveKind::kSpvMovC || kind == ObjectiveKind::kSpvMovD ||
         kind == ObjectiveKind::kSpvDovC || kind == ObjectiveKind::kSpvDovD;
}

bool is_margin(ObjectiveKind kind) {
  return kind == ObjectiveKind::kMovC || kind == ObjectiveKind::kMovD ||
         kind == ObjectiveKind::kSpvMovC || kind == ObjectiveKind::kSpvMovD;
}

std::vector<double> PartyEstimate::as_double() const {
  std::vector<double> out;
  out.reserve(value.size());
  for (const Rational& r : value) out.push_back(to_double(r));
  return out;
}

std::vector<Rational> baseline_party_winners(const ElectionInstance& inst) {
  const std::size_t t = inst.layout().parties();
  ScoreTable table(inst, Direction::kConstructive);
  WinnerResult w =
      determine_winners(table.baseline(), t, inst.layout().per_party());
  std::vector<Rational> out;
  for (std::size_t i = 0; i < t; ++i)
    out.emplace_back(static_cast<long>(w.party_winners[i]));
  return out;
}

std::vector<Rational> baseline_spv_scores(const ElectionInstance& inst) {
  ScoreTable table(inst, Direction::kConstructive);
  std::vector<Score> totals = party_totals(table.baseline(), inst.layout());
  std::vector<Rational> out;
  const BigInt scale(static_cast<long>(inst.scoring().scale()));
  for (Score s : totals) out.push_back(make_rational(BigInt(static_cast<long>(s)), scale));
  return out;
}

std::vector<Score> spv_voter_deltas(const ElectionInstance& inst,
                                    Direction direction) {
  const PartyLayout& layout = inst.layout();
  const std::size_t t = layout.parties();
  ScoreTable table(inst, direction);
  std::vector<Score> out(inst.voters() * t, 0);
  for (std::size_t v = 0; v < inst.voters(); ++v)
    for (CandidateId c = 0; c < layout.candidates(); ++c)
      out[v * t + layout.party_of(c)] += table.delta(v, c);
  return out;
}

PartyEstimate expected_party_winners(const ElectionInstance& inst,
                                     std::span<const NodeId> seeds,
                                     Direction direction,
                                     const EstimatorConfig& cfg) {
  std::vector<NodeId> s = normalize_seeds(inst.graph(), seeds);
  if (!cfg.is_exact())
    return sample_party_winners(inst, s, direction, cfg).estimate;

  const std::size_t t = inst.layout().parties();
  const std::size_t k = inst.layout().per_party();
  LiveEdgeEnumerator en(inst.graph(), cfg.max_enum_edges);
  ScoreTable table(inst, direction);
  std::vector<BigInt> acc(t, 0);
  std::vector<char> active;
  std::vector<NodeId> queue;
  en.for_each([&](const std::vector<char>& live, const BigInt& weight) {
    en.reach(s, live, active, queue);
    WinnerResult w = determine_winners(table.scores(queue), t, k);
    for (std::size_t i = 0; i < t; ++i)
      if (w.party_winners[i])
        acc[i] += weight * static_cast<unsigned long>(w.party_winners[i]);
  });
  std::vector<Rational> values;
  for (const BigInt& a : acc) values.push_back(make_rational(a, en.denominator()));
  return exact_estimate(std::move(values));
}

PartyEstimate spv_party_scores(const ElectionInstance& inst,
                               std::span<const NodeId> seeds,
                               Direction direction,
                               const EstimatorConfig& cfg) {
  std::vector<NodeId> s = normalize_seeds(inst.graph(), seeds);
  if (!cfg.is_exact())
    return sample_spv_scores(inst, s, direction, cfg).estimate;

  const std::size_t t = inst.layout().parties();
  LiveEdgeEnumerator en(inst.graph(), cfg.max_enum_edges);
  std::vector<Rational> probs = en.activation_probabilities(s);
  std::vector<Score> deltas = spv_voter_deltas(inst, direction);
  std::vector<Rational> values = baseline_spv_scores(inst);
  const Rational scale(static_cast<long>(inst.scoring().scale()));
  for (std::size_t i = 0; i < t; ++i) {
    Rational gain = 0;
    for (std::size_t v = 0; v < inst.voters(); ++v)
      if (deltas[v * t + i] != 0)
        gain += probs[v] * Rational(static_cast<long>(deltas[v * t + i]));
    values[i] += gain / scale;
  }
  return exact_estimate(std::move(values));
}

std::optional<PartyId> strongest_opponent(std::span<const Rational> values) {
  std::optional<PartyId> best;
  for (PartyId i = 1; i < values.size(); ++i)
    if (!best || values[i] > values[*best]) best = i;
  return best;
}

ObjectiveValue apply_objective_formula(ObjectiveKind kind,
                                       std::span<const Rational> before,
                                       std::span<const Rational> after) {
  if (before.empty() || before.size() != after.size())
    throw invalid_argument("party vectors must be non-empty and equal length");
  ObjectiveValue out;
  out.best_opponent_before = strongest_opponent(before);
  out.best_opponent_after = strongest_opponent(after);
  Rational v = after[0] - before[0];
  if (is_margin(kind)) {
    if (out.best_opponent_after) v -= after[*out.best_opponent_after];
    if (out.best_opponent_before) v += before[*out.best_opponent_before];
  }
  out.value = direction_of(kind) == Direction::kConstructive ? v : Rational(-v);
  return out;
}

ObjectiveReport evaluate_multiwinner_objective(const ElectionInstance& inst,
                                               std::span<const NodeId> seeds,
                                               ObjectiveKind kind,
                                               const EstimatorConfig& cfg) {
  if (is_spv(kind))
    throw invalid_argument(std::string(to_string(kind)) +
                           " is not a multi-winner objective");
  std::vector<NodeId> s = normalize_seeds(inst.graph(), seeds);
  const Direction dir = direction_of(kind);
  if (cfg.is_exact())
    return make_report(kind, baseline_party_winners(inst),
                       expected_party_winners(inst, s, dir, cfg));
  Sampled sampled = sample_party_winners(inst, s, dir, cfg);
  ObjectiveReport rep =
      make_report(kind, baseline_party_winners(inst), sampled.estimate);
  rep.half_width = objective_half_width(kind, sampled, rep.best_opponent_after);
  return rep;
}

ObjectiveReport evaluate_spv_objective(const ElectionInstance& inst,
                                       std::span<const NodeId> seeds,
                                       ObjectiveKind kind,
                                       const EstimatorConfig& cfg) {
  if (!is_spv(kind))
    throw invalid_argument(std::string(to_string(kind)) +
                           " is not an SPV objective");
  std::vector<NodeId> s = normalize_seeds(inst.graph(), seeds);
  const Direction dir = direction_of(kind);
  if (cfg.is_exact())
    return make_report(kind, baseline_spv_scores(inst),
                       spv_party_scores(inst, s, dir, cfg));
  Sampled sampled = sample_spv_scores(inst, s, dir, cfg);
  ObjectiveReport rep =
      make_report(kind, baseline_spv_scores(inst), sampled.estimate);
  rep.half_width = objective_half_width(kind, sampled, rep.best_opponent_after);
  return rep;
}

ObjectiveReport evaluate_objective(const ElectionInstance& inst,
                                   std::span<const NodeId> seeds,
                                   ObjectiveKind kind,
                                   const EstimatorConfig& cfg) {
  return is_spv(kind) ? evaluate_spv_objective(inst, seeds, kind, cfg)
                      : evaluate_multiwinner_objective(inst, seeds, kind, cfg);
}

}  // namespace mwec
