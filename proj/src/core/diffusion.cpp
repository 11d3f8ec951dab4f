#include "diffusion.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

#include "error.hpp"

namespace mwec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng sample_stream(std::uint64_t master, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(master) ^ splitmix64(~index)));
}

std::vector<NodeId> normalize_seeds(const Graph& g,
                                    std::span<const NodeId> seeds) {
  std::vector<NodeId> out(seeds.begin(), seeds.end());
  for (NodeId s : out)
    if (s >= g.node_count())
      throw invalid_argument("seed " + std::to_string(s) +
                             " out of range [0," +
                             std::to_string(g.node_count()) + ")");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ActivationSample simulate_icm(const Graph& g, std::span<const NodeId> seeds,
                              Rng& rng) {
  ActivationSample sample;
  std::vector<NodeId> frontier = normalize_seeds(g, seeds);
  std::vector<char> active(g.node_count(), 0);
  for (NodeId s : frontier) active[s] = 1;
  sample.active = frontier;
  if (!frontier.empty()) sample.steps = 1;

  std::vector<NodeId> next;
  while (!frontier.empty()) {
    next.clear();
    for (NodeId u : frontier) {
      for (const Arc& arc : g.out_neighbors(u)) {
        if (active[arc.target]) continue;
        bool fires = arc.prob.is_one();
        if (arc.prob.is_stochastic()) fires = uniform01(rng) < arc.prob.value();
        if (fires) {
          active[arc.target] = 1;
          next.push_back(arc.target);
        }
      }
    }
    std::sort(next.begin(), next.end());
    if (!next.empty()) ++sample.steps;
    sample.active.insert(sample.active.end(), next.begin(), next.end());
    frontier.swap(next);
  }
  std::sort(sample.active.begin(), sample.active.end());
  return sample;
}

LiveEdgeEnumerator::LiveEdgeEnumerator(const Graph& g, std::size_t limit)
    : graph_(&g), denominator_(1) {
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (g.edges()[e].prob.is_stochastic()) stochastic_.push_back(e);
  if (stochastic_.size() > limit || stochastic_.size() >= 63)
    throw LimitExceeded("exact enumeration needs " +
                        std::to_string(stochastic_.size()) +
                        " stochastic edges, limit is " + std::to_string(limit) +
                        "; use Monte Carlo estimation");
  for (std::size_t e : stochastic_) {
    const Decimal& d = g.edges()[e].prob.decimal();
    BigInt den(static_cast<long>(d.denominator()));
    BigInt num(static_cast<long>(d.mantissa()));
    keep_factor_.push_back(num);
    drop_factor_.push_back(den - num);
    denominator_ *= den;
  }
}

void LiveEdgeEnumerator::reach(std::span<const NodeId> seeds,
                               const std::vector<char>& live,
                               std::vector<char>& active,
                               std::vector<NodeId>& queue) const {
  active.assign(graph_->node_count(), 0);
  queue.clear();
  for (NodeId s : seeds) {
    if (!active[s]) {
      active[s] = 1;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Arc& arc : graph_->out_neighbors(queue[head])) {
      if (live[arc.edge_index] && !active[arc.target]) {
        active[arc.target] = 1;
        queue.push_back(arc.target);
      }
    }
  }
}

std::vector<WeightedActiveSet> LiveEdgeEnumerator::active_set_distribution(
    std::span<const NodeId> seeds) const {
  std::vector<NodeId> s = normalize_seeds(*graph_, seeds);
  std::unordered_map<NodeMask, BigInt> mass;
  std::vector<char> active;
  std::vector<NodeId> queue;
  NodeMask key(graph_->node_count());
  for_each([&](const std::vector<char>& live, const BigInt& weight) {
    reach(s, live, active, queue);
    for (std::size_t v = 0; v < active.size(); ++v) key[v] = active[v] != 0;
    mass[key] += weight;
  });
  std::map<NodeMask, BigInt> ordered(mass.begin(), mass.end());
  std::vector<WeightedActiveSet> out;
  out.reserve(ordered.size());
  for (auto& [mask, weight] : ordered)
    out.push_back(WeightedActiveSet{mask, make_rational(weight, denominator_)});
  return out;
}

std::vector<Rational> LiveEdgeEnumerator::activation_probabilities(
    std::span<const NodeId> seeds) const {
  std::vector<NodeId> s = normalize_seeds(*graph_, seeds);
  std::vector<BigInt> acc(graph_->node_count(), 0);
  std::vector<char> active;
  std::vector<NodeId> queue;
  for_each([&](const std::vector<char>& live, const BigInt& weight) {
    reach(s, live, active, queue);
    for (NodeId v : queue) acc[v] += weight;
  });
  std::vector<Rational> out;
  out.reserve(acc.size());
  for (const BigInt& a : acc) out.push_back(make_rational(a, denominator_));
  return out;
}

std::vector<LiveEdgeOutcome> enumerate_live_edges(const Graph& g,
                                                  std::size_t limit) {
  LiveEdgeEnumerator en(g, limit);
  std::vector<LiveEdgeOutcome> out;
  out.reserve(static_cast<std::size_t>(en.outcome_count()));
  en.for_each([&](const std::vector<char>& live, const BigInt& weight) {
    LiveEdgeOutcome o;
    for (std::size_t e = 0; e < live.size(); ++e)
      if (live[e]) o.kept_edges.push_back(e);
    o.probability = make_rational(weight, en.denominator());
    out.push_back(std::move(o));
  });
  return out;
}

double wilson_half_width(std::size_t hits, std::size_t n) {
  if (n == 0) return 0.0;
  constexpr double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  return z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) /
         (1.0 + z2 / nn);
}

double mean_half_width(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.959963984540054 * sd / std::sqrt(static_cast<double>(n));
}

ActivationEstimate activation_probabilities(const Graph& g,
                                            std::span<const NodeId> seeds,
                                            const EstimatorConfig& cfg) {
  std::vector<NodeId> s = normalize_seeds(g, seeds);
  ActivationEstimate est;
  est.mode = cfg.mode;
  const std::size_t n = g.node_count();

  if (cfg.is_exact()) {
    LiveEdgeEnumerator en(g, cfg.max_enum_edges);
    est.exact = en.activation_probabilities(s);
    est.probs.reserve(n);
    for (const Rational& p : est.exact) est.probs.push_back(to_double(p));
    est.half_width.assign(n, 0.0);
    return est;
  }

  if (cfg.samples == 0) throw invalid_argument("sample count must be positive");
  est.samples = cfg.samples;
  est.rng_seed = cfg.rng_seed;
  const std::size_t workers = worker_count(cfg);
  std::vector<std::vector<std::size_t>> counts(workers,
                                               std::vector<std::size_t>(n, 0));
  run_monte_carlo(g, s, cfg, workers,
                  [&](std::size_t, std::size_t worker,
                      const ActivationSample& sample) {
                    for (NodeId v : sample.active) ++counts[worker][v];
                  });
  est.probs.assign(n, 0.0);
  est.half_width.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t hits = 0;
    for (const auto& c : counts) hits += c[v];
    est.probs[v] =
        static_cast<double>(hits) / static_cast<double>(cfg.samples);
    est.half_width[v] = wilson_half_width(hits, cfg.samples);
  }
  return est;
}

}  // namespace mwec
