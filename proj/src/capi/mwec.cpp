#include "mwec/mwec.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "error.hpp"
#include "report_json.hpp"

struct mwec_graph {
  mwec::Graph graph;
};

struct mwec_instance {
  mwec::ElectionInstance inst;
  mwec_graph graph;  // handle view returned by mwec_instance_graph
};

namespace {

thread_local std::string g_last_error;

mwec_status status_of(mwec::ErrorCode code) {
  switch (code) {
    case mwec::ErrorCode::kParse:
      return MWEC_ERR_PARSE;
    case mwec::ErrorCode::kInvalidArgument:
      return MWEC_ERR_INVALID_ARGUMENT;
    case mwec::ErrorCode::kLimitExceeded:
      return MWEC_ERR_LIMIT_EXCEEDED;
    case mwec::ErrorCode::kIo:
      return MWEC_ERR_IO;
    case mwec::ErrorCode::kInternal:
      return MWEC_ERR_INTERNAL;
  }
  return MWEC_ERR_INTERNAL;
}

template <typename Fn>
mwec_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return MWEC_OK;
  } catch (const mwec::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MWEC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MWEC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return MWEC_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr)
    throw mwec::invalid_argument(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const mwec::Json& j, char** out) { *out = dup_string(j.dump(2)); }

mwec::EstimatorConfig to_config(const mwec_estimator* cfg) {
  mwec_estimator defaults;
  mwec_estimator_init(&defaults);
  if (cfg == nullptr) cfg = &defaults;
  mwec::EstimatorConfig out;
  out.mode = cfg->exact ? mwec::EstimatorMode::kExact
                        : mwec::EstimatorMode::kMonteCarlo;
  out.samples = cfg->samples;
  out.rng_seed = cfg->rng_seed;
  out.max_enum_edges = cfg->max_enum_edges;
  out.threads = cfg->threads == 0 ? 1 : cfg->threads;
  return out;
}

std::span<const mwec::NodeId> seed_span(const uint32_t* seeds,
                                        size_t count) {
  if (count > 0) require(seeds, "seeds");
  return {seeds, count};
}

mwec_instance* wrap(mwec::ElectionInstance inst) {
  auto* h = new mwec_instance{std::move(inst), {}};
  h->graph.graph = h->inst.graph();
  return h;
}

}  // namespace

extern "C" {

const char* mwec_version(void) { return "0.1.0"; }

const char* mwec_last_error(void) { return g_last_error.c_str(); }

const char* mwec_status_name(mwec_status status) {
  switch (status) {
    case MWEC_OK:
      return "ok";
    case MWEC_ERR_PARSE:
      return "parse error";
    case MWEC_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case MWEC_ERR_LIMIT_EXCEEDED:
      return "work limit exceeded";
    case MWEC_ERR_IO:
      return "i/o error";
    case MWEC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void mwec_string_free(char* s) { std::free(s); }

void mwec_estimator_init(mwec_estimator* cfg) {
  if (cfg == nullptr) return;
  cfg->exact = 0;
  cfg->samples = mwec::kDefaultSamples;
  cfg->rng_seed = 0;
  cfg->max_enum_edges = mwec::kDefaultEnumerationLimit;
  cfg->threads = 1;
}

void mwec_work_limits_init(mwec_work_limits* limits) {
  if (limits == nullptr) return;
  mwec::WorkLimits d;
  limits->max_nodes = d.max_nodes;
  limits->max_budget = d.max_budget;
  limits->max_edges = d.max_edges;
}

void mwec_random_options_init(mwec_random_options* opts) {
  if (opts == nullptr) return;
  mwec::RandomInstanceOptions d;
  opts->n = d.n;
  opts->t = d.t;
  opts->k = d.k;
  opts->edge_prob = d.edge_prob;
  opts->activation_prob = nullptr;
  opts->random_activation = 0;
  opts->scoring = nullptr;
  opts->rng_seed = 0;
}

mwec_status mwec_graph_parse(const char* text, mwec_graph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new mwec_graph{mwec::load_graph(text)};
  });
}

mwec_status mwec_graph_load(const char* path, mwec_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new mwec_graph{mwec::load_graph_file(path)};
  });
}

void mwec_graph_free(mwec_graph* g) { delete g; }

size_t mwec_graph_node_count(const mwec_graph* g) {
  return g ? g->graph.node_count() : 0;
}

size_t mwec_graph_edge_count(const mwec_graph* g) {
  return g ? g->graph.edge_count() : 0;
}

mwec_status mwec_graph_serialize(const mwec_graph* g, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup_string(g->graph.serialize());
  });
}

mwec_status mwec_instance_parse(const mwec_graph* g, const char* election_text,
                                mwec_instance** out) {
  return guarded([&] {
    require(g, "graph");
    require(election_text, "election_text");
    require(out, "out");
    *out = wrap(mwec::load_election(election_text, g->graph));
  });
}

mwec_status mwec_instance_load(const char* graph_path,
                               const char* election_path,
                               mwec_instance** out) {
  return guarded([&] {
    require(graph_path, "graph_path");
    require(election_path, "election_path");
    require(out, "out");
    mwec::Graph g = mwec::load_graph_file(graph_path);
    std::string text = mwec::read_text_file(election_path);
    *out = wrap(mwec::load_election(text, std::move(g)));
  });
}

void mwec_instance_free(mwec_instance* inst) { delete inst; }

const mwec_graph* mwec_instance_graph(const mwec_instance* inst) {
  return inst ? &inst->graph : nullptr;
}

mwec_status mwec_instance_serialize(const mwec_instance* inst,
                                    char** graph_text, char** election_text) {
  return guarded([&] {
    require(inst, "instance");
    require(graph_text, "graph_text");
    require(election_text, "election_text");
    std::string g = inst->inst.graph().serialize();
    std::string e = mwec::serialize_election(inst->inst);
    char* gs = dup_string(g);
    try {
      *election_text = dup_string(e);
    } catch (...) {
      std::free(gs);
      throw;
    }
    *graph_text = gs;
  });
}

mwec_status mwec_instance_write(const mwec_instance* inst,
                                const char* graph_path,
                                const char* election_path) {
  return guarded([&] {
    require(inst, "instance");
    require(graph_path, "graph_path");
    require(election_path, "election_path");
    mwec::write_text_file(graph_path, inst->inst.graph().serialize());
    mwec::write_text_file(election_path, mwec::serialize_election(inst->inst));
  });
}

mwec_status mwec_activation_probabilities(const mwec_graph* g,
                                          const uint32_t* seeds,
                                          size_t seed_count,
                                          const mwec_estimator* cfg,
                                          char** json) {
  return guarded([&] {
    require(g, "graph");
    require(json, "json");
    emit(mwec::to_json(mwec::activation_probabilities(
             g->graph, seed_span(seeds, seed_count), to_config(cfg))),
         json);
  });
}

mwec_status mwec_simulate(const mwec_graph* g, const uint32_t* seeds,
                          size_t seed_count, uint64_t rng_seed,
                          uint64_t sample_index, char** json) {
  return guarded([&] {
    require(g, "graph");
    require(json, "json");
    mwec::Rng rng = mwec::sample_stream(rng_seed, sample_index);
    mwec::Json j = mwec::to_json(
        mwec::simulate_icm(g->graph, seed_span(seeds, seed_count), rng));
    j["rng_seed"] = rng_seed;
    j["sample_index"] = sample_index;
    emit(j, json);
  });
}

mwec_status mwec_evaluate(const mwec_instance* inst, const char* objective,
                          const uint32_t* seeds, size_t seed_count,
                          const mwec_estimator* cfg, char** json) {
  return guarded([&] {
    require(inst, "instance");
    require(objective, "objective");
    require(json, "json");
    auto kind = mwec::parse_objective(objective);
    emit(mwec::to_json(mwec::evaluate_objective(
             inst->inst, seed_span(seeds, seed_count), kind, to_config(cfg))),
         json);
  });
}

mwec_status mwec_greedy(const mwec_instance* inst, const char* objective,
                        size_t budget, int lazy, const mwec_estimator* cfg,
                        char** json) {
  return guarded([&] {
    require(inst, "instance");
    require(objective, "objective");
    require(json, "json");
    auto kind = mwec::parse_objective(objective);
    const mwec::EstimatorConfig c = to_config(cfg);
    mwec::NodeWeights w =
        mwec::node_weights(inst->inst, mwec::direction_of(kind));
    mwec::SeedSelection sel =
        mwec::greedy_select(inst->inst.graph(), w, budget, c, lazy != 0);
    mwec::Json j;
    j["selection"] = mwec::to_json(sel);
    j["report"] =
        mwec::to_json(mwec::evaluate_objective(inst->inst, sel.seeds, kind, c));
    emit(j, json);
  });
}

mwec_status mwec_oracle(const mwec_instance* inst, const char* objective,
                        size_t budget, const mwec_work_limits* limits,
                        char** json) {
  return guarded([&] {
    require(inst, "instance");
    require(objective, "objective");
    require(json, "json");
    mwec::WorkLimits l;
    if (limits != nullptr) {
      l.max_nodes = limits->max_nodes;
      l.max_budget = limits->max_budget;
      l.max_edges = limits->max_edges;
    }
    auto kind = mwec::parse_objective(objective);
    emit(mwec::to_json(mwec::brute_force_optimum(inst->inst, budget, kind, l)),
         json);
  });
}

mwec_status mwec_gen_reduction(const char* kind, const mwec_graph* base,
                               const char* scoring, size_t t, size_t k,
                               size_t half_size, mwec_instance** out,
                               char** info) {
  return guarded([&] {
    require(kind, "kind");
    require(out, "out");
    const std::string which = kind;
    mwec::ReductionInstance red;
    if (which == "intuition") {
      red = mwec::gen_intuition_instance(half_size);
    } else if (which == "cmec-exceptional" || which == "cmec-general") {
      require(base, "base graph");
      require(scoring, "scoring");
      red = mwec::gen_cmec_reduction(
          base->graph,
          which == "cmec-exceptional" ? mwec::CmecCase::kExceptional
                                      : mwec::CmecCase::kGeneral,
          mwec::ScoringRule::parse(scoring, 6));
    } else if (which == "spv") {
      require(base, "base graph");
      require(scoring, "scoring");
      red = mwec::gen_spv_reduction(
          base->graph, mwec::ScoringRule::parse(scoring, t * k), t, k);
    } else {
      throw mwec::invalid_argument("unknown reduction kind '" + which + "'");
    }
    std::string info_text = mwec::to_json(red).dump(2);
    mwec_instance* h = wrap(std::move(red.instance));
    if (info != nullptr) {
      try {
        *info = dup_string(info_text);
      } catch (...) {
        delete h;
        throw;
      }
    }
    *out = h;
  });
}

mwec_status mwec_gen_random(const mwec_random_options* opts,
                            mwec_instance** out) {
  return guarded([&] {
    require(opts, "options");
    require(out, "out");
    mwec::RandomInstanceOptions o;
    o.n = opts->n;
    o.t = opts->t;
    o.k = opts->k;
    o.edge_prob = opts->edge_prob;
    if (opts->activation_prob != nullptr)
      o.activation_prob = mwec::Probability::parse(opts->activation_prob);
    o.random_activation = opts->random_activation != 0;
    if (opts->scoring != nullptr) o.scoring = opts->scoring;
    o.rng_seed = opts->rng_seed;
    *out = wrap(mwec::gen_random_instance(o));
  });
}

}  // extern "C"
