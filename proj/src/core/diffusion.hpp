#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "exact.hpp"
#include "graph.hpp"

namespace mwec {

inline constexpr std::size_t kDefaultEnumerationLimit = 20;
inline constexpr std::size_t kDefaultSamples = 10000;

enum class EstimatorMode { kMonteCarlo, kExact };

struct EstimatorConfig {
  EstimatorMode mode = EstimatorMode::kMonteCarlo;
  std::size_t samples = kDefaultSamples;
  std::uint64_t rng_seed = 0;
  std::size_t max_enum_edges = kDefaultEnumerationLimit;
  // Worker threads for Monte Carlo; results do not depend on this value.
  std::size_t threads = 1;

  static EstimatorConfig exact(std::size_t limit = kDefaultEnumerationLimit) {
    EstimatorConfig cfg;
    cfg.mode = EstimatorMode::kExact;
    cfg.max_enum_edges = limit;
    return cfg;
  }
  static EstimatorConfig monte_carlo(std::size_t samples, std::uint64_t seed) {
    EstimatorConfig cfg;
    cfg.samples = samples;
    cfg.rng_seed = seed;
    return cfg;
  }
  bool is_exact() const { return mode == EstimatorMode::kExact; }
};

using Rng = std::mt19937_64;

// Stream for sample `index` under `master`. Each sample owns its stream, so
// any partition of samples across workers consumes identical randomness.
Rng sample_stream(std::uint64_t master, std::uint64_t index);

// Uniform in [0,1) built from the top 53 bits; independent of the standard
// library's distribution implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

using NodeMask = std::vector<bool>;

struct ActivationSample {
  std::vector<NodeId> active;  // sorted ascending
  std::size_t steps = 0;       // index of the last step that activated a node
};

// Sorted, duplicate-free copy of seeds; throws if any id is out of range.
std::vector<NodeId> normalize_seeds(const Graph& g,
                                    std::span<const NodeId> seeds);

// One Independent Cascade realization. Within a step, newly active nodes
// fire in ascending id order and each tries its out-edges in insertion
// order; only stochastic edges consume randomness.
ActivationSample simulate_icm(const Graph& g, std::span<const NodeId> seeds,
                              Rng& rng);

struct LiveEdgeOutcome {
  std::vector<std::size_t> kept_edges;  // includes every p = 1 edge
  Rational probability;
};

// All 2^m live-edge outcomes over the m stochastic edges. Throws
// LimitExceeded when m > limit.
std::vector<LiveEdgeOutcome> enumerate_live_edges(
    const Graph& g, std::size_t limit = kDefaultEnumerationLimit);

struct WeightedActiveSet {
  NodeMask active;
  Rational probability;
};

// Streams live-edge outcomes without materializing them. Outcome weights are
// integer numerators over the shared denominator(): each stochastic edge
// p = num/10^d contributes num (kept) or 10^d - num (dropped).
class LiveEdgeEnumerator {
 public:
  LiveEdgeEnumerator(const Graph& g, std::size_t limit);

  std::size_t stochastic_edge_count() const { return stochastic_.size(); }
  std::uint64_t outcome_count() const {
    return std::uint64_t{1} << stochastic_.size();
  }
  const BigInt& denominator() const { return denominator_; }
  const Graph& graph() const { return *graph_; }

  // fn(live, weight): live[e] tells whether edge e is kept in this outcome.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    std::vector<char> live(graph_->edge_count(), 0);
    for (std::size_t e = 0; e < graph_->edge_count(); ++e)
      live[e] = graph_->edges()[e].prob.is_one() ? 1 : 0;
    std::vector<BigInt> partial(stochastic_.size() + 1);
    partial[0] = 1;
    visit(0, live, partial, fn);
  }

  // Reachable set from seeds in one outcome.
  void reach(std::span<const NodeId> seeds, const std::vector<char>& live,
             std::vector<char>& active, std::vector<NodeId>& queue) const;

  // Distinct eventual active sets with their exact probabilities, ordered by
  // mask for determinism.
  std::vector<WeightedActiveSet> active_set_distribution(
      std::span<const NodeId> seeds) const;

  std::vector<Rational> activation_probabilities(
      std::span<const NodeId> seeds) const;

 private:
  template <typename Fn>
  void visit(std::size_t depth, std::vector<char>& live,
             std::vector<BigInt>& partial, Fn& fn) const {
    if (depth == stochastic_.size()) {
      fn(static_cast<const std::vector<char>&>(live),
         static_cast<const BigInt&>(partial[depth]));
      return;
    }
    const std::size_t e = stochastic_[depth];
    live[e] = 1;
    partial[depth + 1] = partial[depth] * keep_factor_[depth];
    visit(depth + 1, live, partial, fn);
    live[e] = 0;
    partial[depth + 1] = partial[depth] * drop_factor_[depth];
    visit(depth + 1, live, partial, fn);
  }

  const Graph* graph_;
  std::vector<std::size_t> stochastic_;
  std::vector<BigInt> keep_factor_;
  std::vector<BigInt> drop_factor_;
  BigInt denominator_;
};

struct ActivationEstimate {
  std::vector<double> probs;
  std::vector<double> half_width;  // 95% Wilson half-width; 0 in exact mode
  std::vector<Rational> exact;     // filled in exact mode only
  EstimatorMode mode = EstimatorMode::kMonteCarlo;
  std::size_t samples = 0;
  std::uint64_t rng_seed = 0;
};

ActivationEstimate activation_probabilities(const Graph& g,
                                            std::span<const NodeId> seeds,
                                            const EstimatorConfig& cfg);

// Half-width of the 95% Wilson score interval for `hits` out of `n`.
double wilson_half_width(std::size_t hits, std::size_t n);

// 1.96 * sample standard deviation / sqrt(n).
double mean_half_width(std::span<const double> values);

// Runs cfg.samples ICM realizations, calling fn(sample_index, worker,
// sample). Samples are split into contiguous ranges, one per worker; fn must
// only write to per-sample or per-worker state.
template <typename Fn>
void run_monte_carlo(const Graph& g, std::span<const NodeId> seeds,
                     const EstimatorConfig& cfg, std::size_t workers, Fn&& fn) {
  const std::size_t total = cfg.samples;
  auto work = [&](std::size_t worker, std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      Rng rng = sample_stream(cfg.rng_seed, r);
      ActivationSample sample = simulate_icm(g, seeds, rng);
      fn(r, worker, static_cast<const ActivationSample&>(sample));
    }
  };
  if (workers <= 1 || total < 2) {
    work(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (total + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = std::min(total, w * chunk);
    std::size_t end = std::min(total, begin + chunk);
    if (begin == end) break;
    pool.emplace_back(work, w, begin, end);
  }
  for (auto& t : pool) t.join();
}

inline std::size_t worker_count(const EstimatorConfig& cfg) {
  return std::max<std::size_t>(1, std::min(cfg.threads, cfg.samples));
}

}  // namespace mwec
