// mwec: command-line front end over the mwec C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mwec/mwec.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitLimit = 2;

// Failure carrying the process exit status.
struct Failure {
  int exit_code;
  std::string message;
};

void check(mwec_status st) {
  if (st == MWEC_OK) return;
  throw Failure{st == MWEC_ERR_LIMIT_EXCEEDED ? kExitLimit : kExitUsage,
                std::string(mwec_status_name(st)) + ": " + mwec_last_error()};
}

// Owns a string handed out by the C API.
class CString {
 public:
  CString() = default;
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  ~CString() { mwec_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

template <typename T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p_); }
  T** out() { return &p_; }
  T* get() const { return p_; }

 private:
  T* p_ = nullptr;
};

using Graph = Handle<mwec_graph, mwec_graph_free>;
using Instance = Handle<mwec_instance, mwec_instance_free>;

struct EstimatorFlags {
  std::size_t samples = 10000;
  std::uint64_t rng_seed = 0;
  bool exact = false;
  std::size_t max_enum_edges = 20;
  std::size_t threads = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--samples", samples, "Monte Carlo sample count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--rng-seed", rng_seed, "Monte Carlo master seed");
    cmd->add_flag("--exact", exact, "Exact live-edge enumeration");
    cmd->add_option("--max-enum-edges", max_enum_edges,
                    "Stochastic edge limit for exact enumeration");
    cmd->add_option("--threads", threads,
                    "Monte Carlo worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
  }

  mwec_estimator config() const {
    mwec_estimator cfg;
    mwec_estimator_init(&cfg);
    cfg.exact = exact ? 1 : 0;
    cfg.samples = samples;
    cfg.rng_seed = rng_seed;
    cfg.max_enum_edges = max_enum_edges;
    cfg.threads = threads;
    return cfg;
  }
};

struct Options {
  std::string graph_path;
  std::string election_path;
  std::string seeds_text;
  std::size_t budget = 0;
  std::optional<std::string> direction;
  std::string objective = "spv-dov-c";
  std::string output = "json";
  bool lazy = true;
  std::size_t max_brute_n = 12;
  std::size_t max_brute_budget = 3;
  std::size_t max_brute_edges = 16;
  EstimatorFlags est;

  // simulate
  std::uint64_t sample_index = 0;

  // generators
  std::string kind;
  std::string scoring;
  std::size_t t = 2;
  std::size_t k = 2;
  std::string base_path;
  std::size_t half_size = 2;
  std::string out_graph;
  std::string out_election;
  std::size_t n = 6;
  double edge_prob = 0.3;
  std::string activation_prob = "1";
  bool random_activation = false;
  std::uint64_t gen_seed = 0;
};

std::vector<std::uint32_t> parse_seeds(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    auto b = token.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    auto e = token.find_last_not_of(" \t");
    token = token.substr(b, e - b + 1);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(token, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != token.size() || token[0] == '-' || v > UINT32_MAX)
      throw Failure{kExitUsage, "malformed seed id '" + token + "'"};
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

// Accepts a full kind ("mov-c") or a stem ("mov") completed by --direction.
std::string resolve_objective(const Options& o) {
  std::string kind = o.objective;
  const bool has_suffix =
      kind.size() > 2 && (kind.ends_with("-c") || kind.ends_with("-d"));
  if (!has_suffix) {
    const std::string dir = o.direction.value_or("constructive");
    return kind + (dir == "destructive" ? "-d" : "-c");
  }
  if (o.direction) {
    const char want = *o.direction == "destructive" ? 'd' : 'c';
    if (kind.back() != want)
      throw Failure{kExitUsage, "--objective " + kind +
                                    " conflicts with --direction " +
                                    *o.direction};
  }
  return kind;
}

bool is_winner_objective(const std::string& kind) {
  return kind.rfind("mov-", 0) == 0 || kind.rfind("dow-", 0) == 0;
}

void load_instance(const Options& o, Instance& inst) {
  check(mwec_instance_load(o.graph_path.c_str(), o.election_path.c_str(),
                           inst.out()));
}

void render_text(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                  os);
    return;
  }
  os << prefix << ": ";
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      os << (i ? " " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
  } else if (j.is_string()) {
    os << j.get<std::string>();
  } else {
    os << j.dump();
  }
  os << "\n";
}

void print(const Options& o, const std::string& json_text) {
  if (o.output == "json") {
    std::cout << json_text << "\n";
    return;
  }
  render_text(Json::parse(json_text), "", std::cout);
}

void warn_nonlinear(const Options& o, const std::string& kind) {
  if (o.est.exact || !is_winner_objective(kind)) return;
  std::cerr << "warning: " << kind
            << " is estimated by counting winners per sample; its expectation "
               "is nonlinear in activation probabilities ("
            << o.est.samples << " samples)\n";
}

int run_evaluate(const Options& o) {
  Instance inst;
  load_instance(o, inst);
  const std::string kind = resolve_objective(o);
  const auto seeds = parse_seeds(o.seeds_text);
  const mwec_estimator cfg = o.est.config();
  warn_nonlinear(o, kind);
  CString out;
  check(mwec_evaluate(inst.get(), kind.c_str(), seeds.data(), seeds.size(),
                      &cfg, out.out()));
  print(o, out.str());
  return 0;
}

int run_greedy(const Options& o) {
  Instance inst;
  load_instance(o, inst);
  const std::string kind = resolve_objective(o);
  const mwec_estimator cfg = o.est.config();
  warn_nonlinear(o, kind);
  CString out;
  check(mwec_greedy(inst.get(), kind.c_str(), o.budget, o.lazy ? 1 : 0, &cfg,
                    out.out()));
  for (const auto& w : Json::parse(out.str())["selection"]["warnings"])
    std::cerr << "warning: " << w.get<std::string>() << "\n";
  print(o, out.str());
  return 0;
}

int run_oracle(const Options& o) {
  Instance inst;
  load_instance(o, inst);
  const std::string kind = resolve_objective(o);
  mwec_work_limits limits;
  mwec_work_limits_init(&limits);
  limits.max_nodes = o.max_brute_n;
  limits.max_budget = o.max_brute_budget;
  limits.max_edges = std::min(o.max_brute_edges, o.est.max_enum_edges);
  CString out;
  check(mwec_oracle(inst.get(), kind.c_str(), o.budget, &limits, out.out()));
  print(o, out.str());
  return 0;
}

int run_simulate(const Options& o) {
  Graph g;
  check(mwec_graph_load(o.graph_path.c_str(), g.out()));
  const auto seeds = parse_seeds(o.seeds_text);
  CString out;
  check(mwec_simulate(g.get(), seeds.data(), seeds.size(), o.est.rng_seed,
                      o.sample_index, out.out()));
  print(o, out.str());
  return 0;
}

void write_outputs(const Options& o, const Instance& inst) {
  if (o.out_graph.empty() || o.out_election.empty())
    throw Failure{kExitUsage, "--out-graph and --out-election are required"};
  check(mwec_instance_write(inst.get(), o.out_graph.c_str(),
                            o.out_election.c_str()));
}

int run_gen_reduction(const Options& o) {
  std::string kind = o.kind;
  std::string expect;
  if (kind == "spv-c1" || kind == "spv-c2") {
    expect = kind;
    kind = "spv";
  }
  Graph base;
  if (kind != "intuition") {
    if (o.base_path.empty())
      throw Failure{kExitUsage, "--base is required for " + o.kind};
    if (o.scoring.empty())
      throw Failure{kExitUsage, "--scoring is required for " + o.kind};
    check(mwec_graph_load(o.base_path.c_str(), base.out()));
  }
  Instance inst;
  CString info;
  check(mwec_gen_reduction(kind.c_str(), base.get(),
                           o.scoring.empty() ? nullptr : o.scoring.c_str(),
                           o.t, o.k, o.half_size, inst.out(), info.out()));
  Json j = Json::parse(info.str());
  if (!expect.empty() && j["construction"] != expect)
    throw Failure{kExitUsage, "scoring rule yields " +
                                  j["construction"].get<std::string>() +
                                  ", not the requested " + expect};
  write_outputs(o, inst);
  j["graph_path"] = o.out_graph;
  j["election_path"] = o.out_election;
  print(o, j.dump(2));
  return 0;
}

int run_gen_random(const Options& o) {
  mwec_random_options opts;
  mwec_random_options_init(&opts);
  opts.n = o.n;
  opts.t = o.t;
  opts.k = o.k;
  opts.edge_prob = o.edge_prob;
  opts.activation_prob = o.activation_prob.c_str();
  opts.random_activation = o.random_activation ? 1 : 0;
  opts.scoring = o.scoring.empty() ? "borda" : o.scoring.c_str();
  opts.rng_seed = o.gen_seed;
  Instance inst;
  check(mwec_gen_random(&opts, inst.out()));
  write_outputs(o, inst);
  Json j;
  j["node_count"] = mwec_graph_node_count(mwec_instance_graph(inst.get()));
  j["edge_count"] = mwec_graph_edge_count(mwec_instance_graph(inst.get()));
  j["graph_path"] = o.out_graph;
  j["election_path"] = o.out_election;
  print(o, j.dump(2));
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--output", o.output, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
}

void add_instance(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph", o.graph_path, "Graph file")->required();
  cmd->add_option("--election", o.election_path, "Election file")->required();
  cmd->add_option("--objective", o.objective,
                  "mov, dow, spv-mov or spv-dov, optionally suffixed -c/-d");
  cmd->add_option("--direction", o.direction, "Campaign direction")
      ->check(CLI::IsMember({"constructive", "destructive"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-winner election control via social influence"};
  app.require_subcommand(1);
  Options o;

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate an objective for given seeds");
  add_instance(evaluate, o);
  evaluate->add_option("--seeds", o.seeds_text, "Comma-separated seed ids")
      ->required();
  o.est.attach(evaluate);
  add_common(evaluate, o);

  auto* greedy = app.add_subcommand("greedy", "Greedy seed selection");
  add_instance(greedy, o);
  greedy->add_option("--budget", o.budget, "Number of seeds")->required();
  greedy->add_flag("--lazy,!--no-lazy", o.lazy, "Lazy gain re-evaluation");
  o.est.attach(greedy);
  add_common(greedy, o);

  auto* oracle = app.add_subcommand("oracle", "Exact brute-force optimum");
  add_instance(oracle, o);
  oracle->add_option("--budget", o.budget, "Maximum seed set size")->required();
  oracle->add_option("--max-brute-n", o.max_brute_n, "Node limit");
  oracle->add_option("--max-brute-budget", o.max_brute_budget, "Budget limit");
  oracle->add_option("--max-enum-edges", o.max_brute_edges,
                     "Stochastic edge limit");
  add_common(oracle, o);

  auto* simulate = app.add_subcommand("simulate", "One cascade realization");
  simulate->add_option("--graph", o.graph_path, "Graph file")->required();
  simulate->add_option("--seeds", o.seeds_text, "Comma-separated seed ids")
      ->required();
  simulate->add_option("--rng-seed", o.est.rng_seed, "Master seed");
  simulate->add_option("--sample-index", o.sample_index, "Stream index");
  add_common(simulate, o);

  auto* gen_reduction =
      app.add_subcommand("gen-reduction", "Write a reduction instance");
  gen_reduction
      ->add_option("--kind", o.kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"cmec-exceptional", "cmec-general", "intuition",
                             "spv", "spv-c1", "spv-c2"}));
  gen_reduction->add_option("--scoring", o.scoring, "Scoring rule");
  gen_reduction->add_option("--t", o.t, "Parties (spv)");
  gen_reduction->add_option("--k", o.k, "Candidates per party (spv)");
  gen_reduction->add_option("--base", o.base_path, "Base graph file");
  gen_reduction->add_option("--half-size", o.half_size, "Voters per side (intuition)");
  gen_reduction->add_option("--out-graph", o.out_graph, "Graph output path");
  gen_reduction->add_option("--out-election", o.out_election, "Election output path");
  add_common(gen_reduction, o);

  auto* gen_random = app.add_subcommand("gen-random", "Write a random instance");
  gen_random->add_option("--n", o.n, "Voters");
  gen_random->add_option("--t", o.t, "Parties");
  gen_random->add_option("--k", o.k, "Candidates per party");
  gen_random->add_option("--edge-prob", o.edge_prob, "Pair edge probability");
  gen_random->add_option("--activation-prob", o.activation_prob,
                         "Activation probability of every edge");
  gen_random->add_flag("--random-activation", o.random_activation,
                       "Draw each edge probability from {0.1..0.9}");
  gen_random->add_option("--scoring", o.scoring, "Scoring rule");
  gen_random->add_option("--rng-seed", o.gen_seed, "Generator seed");
  gen_random->add_option("--out-graph", o.out_graph, "Graph output path");
  gen_random->add_option("--out-election", o.out_election, "Election output path");
  add_common(gen_random, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*evaluate) return run_evaluate(o);
    if (*greedy) return run_greedy(o);
    if (*oracle) return run_oracle(o);
    if (*simulate) return run_simulate(o);
    if (*gen_reduction) return run_gen_reduction(o);
    if (*gen_random) return run_gen_random(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
