#include "optimizer.hpp"

#include <queue>

#include "error.hpp"

namespace mwec {

Rational NodeWeights::value(std::size_t v) const {
  return make_rational(BigInt(static_cast<long>(w[v])),
                       BigInt(static_cast<long>(scale)));
}

NodeWeights node_weights(const ElectionInstance& inst, Direction direction) {
  const PartyLayout& layout = inst.layout();
  const ScoringRule& f = inst.scoring();
  const std::size_t m = layout.candidates();
  NodeWeights out;
  out.direction = direction;
  out.scale = f.scale();
  out.w.assign(inst.voters(), 0);
  for (std::size_t v = 0; v < inst.voters(); ++v) {
    auto ranks = inst.profile().ranks(v);
    Rank best_opponent = static_cast<Rank>(m + 1);
    Rank worst_opponent = 0;
    for (CandidateId c = 0; c < m; ++c) {
      if (layout.is_target(c)) continue;
      best_opponent = std::min(best_opponent, ranks[c]);
      worst_opponent = std::max(worst_opponent, ranks[c]);
    }
    Score total = 0;
    for (CandidateId c = 0; c < m; ++c) {
      if (!layout.is_target(c)) continue;
      const Rank r = ranks[c];
      if (direction == Direction::kConstructive) {
        if (best_opponent < r) total += f.at(r - 1) - f.at(r);
      } else {
        if (worst_opponent > r) total += f.at(r) - f.at(r + 1);
      }
    }
    out.w[v] = total;
  }
  return out;
}

SigmaEstimate sigma(const Graph& g, std::span<const NodeId> seeds,
                    const NodeWeights& w, const EstimatorConfig& cfg) {
  if (w.size() != g.node_count())
    throw invalid_argument("node weights do not match the graph");
  std::vector<NodeId> s = normalize_seeds(g, seeds);
  SigmaEstimate out;
  out.mode = cfg.mode;
  const Rational scale(static_cast<long>(w.scale));

  if (cfg.is_exact()) {
    LiveEdgeEnumerator en(g, cfg.max_enum_edges);
    std::vector<Rational> probs = en.activation_probabilities(s);
    Rational total = 0;
    for (std::size_t v = 0; v < probs.size(); ++v)
      if (w.w[v] != 0) total += probs[v] * Rational(static_cast<long>(w.w[v]));
    out.value = total / scale;
    return out;
  }

  if (cfg.samples == 0) throw invalid_argument("sample count must be positive");
  std::vector<std::int64_t> per_sample(cfg.samples, 0);
  run_monte_carlo(g, s, cfg, worker_count(cfg),
                  [&](std::size_t r, std::size_t,
                      const ActivationSample& sample) {
                    std::int64_t sum = 0;
                    for (NodeId v : sample.active) sum += w.w[v];
                    per_sample[r] = sum;
                  });
  BigInt total = 0;
  std::vector<double> x(cfg.samples);
  for (std::size_t r = 0; r < cfg.samples; ++r) {
    total += BigInt(static_cast<long>(per_sample[r]));
    x[r] = static_cast<double>(per_sample[r]) / static_cast<double>(w.scale);
  }
  out.value = make_rational(total, BigInt(static_cast<long>(cfg.samples))) / scale;
  out.half_width = mean_half_width(x);
  out.samples = cfg.samples;
  return out;
}

namespace {

// Fixed live-edge worlds shared by every gain evaluation: bitsets over the
// stochastic edges plus an integer weight per world (1 in Monte Carlo mode).
class WorldSet {
 public:
  WorldSet(const Graph& g, const EstimatorConfig& cfg) : g_(g) {
    slot_.assign(g.edge_count(), -1);
    std::vector<std::size_t> stochastic;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (g.edges()[e].prob.is_stochastic()) {
        slot_[e] = static_cast<int>(stochastic.size());
        stochastic.push_back(e);
      }
    }
    words_ = (stochastic.size() + 63) / 64;

    if (cfg.is_exact()) {
      exact_ = true;
      LiveEdgeEnumerator en(g, cfg.max_enum_edges);
      denominator_ = en.denominator();
      en.for_each([&](const std::vector<char>& live, const BigInt& weight) {
        std::size_t base = bits_.size();
        bits_.resize(base + words_, 0);
        for (std::size_t i = 0; i < stochastic.size(); ++i)
          if (live[stochastic[i]]) bits_[base + i / 64] |= std::uint64_t{1} << (i % 64);
        weight_.push_back(weight);
        ++count_;
      });
      return;
    }

    if (cfg.samples == 0) throw invalid_argument("sample count must be positive");
    count_ = cfg.samples;
    denominator_ = BigInt(static_cast<long>(count_));
    bits_.assign(count_ * words_, 0);
    for (std::size_t r = 0; r < count_; ++r) {
      Rng rng = sample_stream(cfg.rng_seed, r);
      for (std::size_t i = 0; i < stochastic.size(); ++i)
        if (uniform01(rng) < g.edges()[stochastic[i]].prob.value())
          bits_[r * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }

  std::size_t count() const { return count_; }
  bool exact() const { return exact_; }
  const BigInt& weight(std::size_t world) const { return weight_[world]; }
  const BigInt& denominator() const { return denominator_; }

  bool live(std::size_t world, const Arc& arc) const {
    if (arc.prob.is_one()) return true;
    if (arc.prob.is_zero()) return false;
    const auto i = static_cast<std::size_t>(slot_[arc.edge_index]);
    return (bits_[world * words_ + i / 64] >> (i % 64)) & 1U;
  }

 private:
  const Graph& g_;
  std::vector<int> slot_;
  std::size_t words_ = 0;
  std::size_t count_ = 0;
  bool exact_ = false;
  std::vector<std::uint64_t> bits_;
  std::vector<BigInt> weight_;
  BigInt denominator_ = 1;
};

class CoverageState {
 public:
  CoverageState(const Graph& g, const NodeWeights& w, const WorldSet& worlds)
      : g_(g),
        w_(w),
        worlds_(worlds),
        n_(g.node_count()),
        covered_(worlds.count() * n_, 0),
        world_value_(worlds.count(), 0),
        stamp_(n_, 0) {}

  // Σ_ω weight(ω) · (weight newly reached from x in ω), as an integer over
  // worlds.denominator() · w.scale.
  BigInt gain(NodeId x) {
    BigInt total = 0;
    std::int64_t unit_total = 0;
    for (std::size_t world = 0; world < worlds_.count(); ++world) {
      std::int64_t g = reach(world, x, false);
      if (g == 0) continue;
      if (worlds_.exact())
        total += worlds_.weight(world) * BigInt(static_cast<long>(g));
      else
        unit_total += g;
    }
    if (!worlds_.exact()) total = BigInt(static_cast<long>(unit_total));
    return total;
  }

  void add(NodeId x) {
    for (std::size_t world = 0; world < worlds_.count(); ++world)
      world_value_[world] += reach(world, x, true);
  }

  Rational value() const {
    BigInt total = 0;
    std::int64_t unit_total = 0;
    for (std::size_t world = 0; world < worlds_.count(); ++world) {
      if (worlds_.exact())
        total += worlds_.weight(world) * BigInt(static_cast<long>(world_value_[world]));
      else
        unit_total += world_value_[world];
    }
    if (!worlds_.exact()) total = BigInt(static_cast<long>(unit_total));
    return make_rational(total, worlds_.denominator() *
                                    BigInt(static_cast<long>(w_.scale)));
  }

  double half_width() const {
    if (worlds_.exact()) return 0.0;
    std::vector<double> x(world_value_.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = static_cast<double>(world_value_[i]) / static_cast<double>(w_.scale);
    return mean_half_width(x);
  }

 private:
  // Weight of nodes reachable from x in `world` that are not yet covered;
  // marks them covered when `commit` is set.
  std::int64_t reach(std::size_t world, NodeId x, bool commit) {
    std::uint8_t* cov = covered_.data() + world * n_;
    if (cov[x]) return 0;
    ++epoch_;
    queue_.clear();
    queue_.push_back(x);
    stamp_[x] = epoch_;
    std::int64_t sum = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      NodeId u = queue_[head];
      sum += w_.w[u];
      if (commit) cov[u] = 1;
      for (const Arc& arc : g_.out_neighbors(u)) {
        if (cov[arc.target] || stamp_[arc.target] == epoch_) continue;
        if (!worlds_.live(world, arc)) continue;
        stamp_[arc.target] = epoch_;
        queue_.push_back(arc.target);
      }
    }
    return sum;
  }

  const Graph& g_;
  const NodeWeights& w_;
  const WorldSet& worlds_;
  std::size_t n_;
  std::vector<std::uint8_t> covered_;
  std::vector<std::int64_t> world_value_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> queue_;
};

struct HeapEntry {
  BigInt gain;
  NodeId id;
  std::size_t round;
};

// std::priority_queue keeps the largest element on top, so "less" means a
// smaller gain, or an equal gain with a larger id.
struct HeapLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.id > b.id;
  }
};

}  // namespace

SeedSelection greedy_select(const Graph& g, const NodeWeights& w,
                            std::size_t budget, const EstimatorConfig& cfg,
                            bool lazy) {
  if (w.size() != g.node_count())
    throw invalid_argument("node weights do not match the graph");
  SeedSelection sel;
  sel.mode = cfg.mode;
  sel.lazy = lazy;
  const std::size_t n = g.node_count();
  if (budget > n) {
    sel.warnings.push_back("budget " + std::to_string(budget) +
                           " exceeds node count " + std::to_string(n) +
                           "; clamped to " + std::to_string(n));
    budget = n;
  }
  sel.budget = budget;
  if (!cfg.is_exact()) {
    sel.samples = cfg.samples;
    sel.rng_seed = cfg.rng_seed;
  }

  WorldSet worlds(g, cfg);
  CoverageState state(g, w, worlds);
  std::vector<char> chosen(n, 0);

  auto select = [&](NodeId x) {
    chosen[x] = 1;
    state.add(x);
    sel.seeds.push_back(x);
    sel.sigma_trace.push_back(state.value());
  };

  if (lazy) {
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap;
    if (budget > 0) {
      for (NodeId v = 0; v < n; ++v) {
        heap.push(HeapEntry{state.gain(v), v, 0});
        ++sel.gain_evaluations;
      }
    }
    for (std::size_t round = 0; round < budget; ++round) {
      while (true) {
        HeapEntry top = heap.top();
        heap.pop();
        if (top.round == round) {
          select(top.id);
          break;
        }
        top.gain = state.gain(top.id);
        top.round = round;
        ++sel.gain_evaluations;
        heap.push(std::move(top));
      }
    }
  } else {
    for (std::size_t round = 0; round < budget; ++round) {
      bool found = false;
      NodeId best_id = 0;
      BigInt best_gain = 0;
      for (NodeId v = 0; v < n; ++v) {
        if (chosen[v]) continue;
        BigInt gv = state.gain(v);
        ++sel.gain_evaluations;
        if (!found || gv > best_gain) {
          found = true;
          best_id = v;
          best_gain = gv;
        }
      }
      select(best_id);
    }
  }
  sel.half_width = state.half_width();
  return sel;
}

}  // namespace mwec
