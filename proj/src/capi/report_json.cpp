#include "report_json.hpp"

namespace mwec {

namespace {

const char* estimator_name(EstimatorMode mode) {
  return mode == EstimatorMode::kExact ? "exact" : "monte-carlo";
}

Json doubles(std::span<const Rational> values) {
  Json out = Json::array();
  for (const Rational& r : values) out.push_back(to_double(r));
  return out;
}

Json strings(std::span<const Rational> values) {
  Json out = Json::array();
  for (const Rational& r : values) out.push_back(to_string(r));
  return out;
}

// Parties are reported 1-based so the target party is party 1.
Json party(const std::optional<PartyId>& p) {
  return p ? Json(*p + 1) : Json(nullptr);
}

void add_estimator(Json& j, EstimatorMode mode, std::size_t samples,
                   std::uint64_t rng_seed) {
  j["estimator"] = estimator_name(mode);
  if (mode == EstimatorMode::kExact) {
    j["rng_seed"] = nullptr;
    j["samples"] = nullptr;
  } else {
    j["rng_seed"] = rng_seed;
    j["samples"] = samples;
  }
}

}  // namespace

Json to_json(const ObjectiveReport& rep) {
  Json j;
  j["kind"] = to_string(rep.kind);
  j["value"] = to_double(rep.value);
  j["half_width"] = rep.half_width;
  j["before"] = doubles(rep.before);
  j["after"] = doubles(rep.after);
  j["best_opponent_before"] = party(rep.best_opponent_before);
  j["best_opponent_after"] = party(rep.best_opponent_after);
  add_estimator(j, rep.mode, rep.samples, rep.rng_seed);
  if (rep.mode == EstimatorMode::kExact) {
    j["exact"] = {{"value", to_string(rep.value)},
                  {"before", strings(rep.before)},
                  {"after", strings(rep.after)}};
  } else {
    j["after_half_width"] = rep.after_half_width;
  }
  return j;
}

Json to_json(const SeedSelection& sel) {
  Json j;
  j["seeds"] = sel.seeds;
  j["sigma_trace"] = doubles(sel.sigma_trace);
  j["sigma"] = to_double(sel.sigma());
  j["half_width"] = sel.half_width;
  j["budget"] = sel.budget;
  j["lazy"] = sel.lazy;
  j["gain_evaluations"] = sel.gain_evaluations;
  add_estimator(j, sel.mode, sel.samples, sel.rng_seed);
  if (sel.mode == EstimatorMode::kExact)
    j["exact"] = {{"sigma_trace", strings(sel.sigma_trace)}};
  j["warnings"] = sel.warnings;
  return j;
}

Json to_json(const OracleResult& res) {
  Json j;
  j["objective_kind"] = res.objective_kind;
  j["best_seeds"] = res.best_seeds;
  j["best_value"] = to_double(res.best_value);
  j["evaluated_sets"] = res.evaluated_sets;
  j["exact"] = {{"best_value", to_string(res.best_value)}};
  return j;
}

Json to_json(const ActivationEstimate& est) {
  Json j;
  j["probs"] = est.probs;
  j["half_width"] = est.half_width;
  add_estimator(j, est.mode, est.samples, est.rng_seed);
  if (est.mode == EstimatorMode::kExact)
    j["exact"] = {{"probs", strings(est.exact)}};
  return j;
}

Json to_json(const ActivationSample& sample) {
  Json j;
  j["active"] = sample.active;
  j["steps"] = sample.steps;
  return j;
}

Json to_json(const ReductionInstance& red) {
  Json j;
  j["construction"] = to_string(red.construction);
  j["node_count"] = red.instance.voters();
  j["base_node_count"] = red.base_node_count;
  j["augmented_nodes"] = red.augmented_nodes;
  j["parties"] = red.instance.layout().parties();
  j["per_party"] = red.instance.layout().per_party();
  j["scoring"] = red.instance.scoring().describe();
  const double scale = static_cast<double>(red.instance.scoring().scale());
  j["gap"] = {{"j", red.gap.j},
              {"a", static_cast<double>(red.gap.a) / scale},
              {"b", static_cast<double>(red.gap.b) / scale}};
  j["baseline_winners"] = doubles(baseline_party_winners(red.instance));
  j["baseline_spv_scores"] = doubles(baseline_spv_scores(red.instance));
  return j;
}

}  // namespace mwec
