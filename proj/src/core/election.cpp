#include "election.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "text.hpp"

namespace mwec {

const char* to_string(Direction d) {
  return d == Direction::kConstructive ? "constructive" : "destructive";
}

Direction parse_direction(std::string_view text) {
  if (text == "constructive" || text == "c") return Direction::kConstructive;
  if (text == "destructive" || text == "d") return Direction::kDestructive;
  throw invalid_argument("unknown direction '" + std::string(text) + "'");
}

PartyLayout::PartyLayout(std::size_t parties, std::size_t per_party)
    : parties_(parties), per_party_(per_party) {
  if (parties == 0 || per_party == 0)
    throw invalid_argument("party count and candidates per party must be >= 1");
  if (parties * per_party < 2)
    throw invalid_argument("an election needs at least two candidates");
}

// ---------------------------------------------------------------------------
// Scoring rules

ScoringRule::ScoringRule(ScoringKind kind, std::vector<Score> values,
                         int digits, std::size_t approval_count)
    : kind_(kind),
      values_(std::move(values)),
      scale_(pow10(digits)),
      digits_(digits),
      approval_count_(approval_count) {
  if (values_.size() < 2)
    throw invalid_argument("scoring rule needs at least two ranks");
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] > values_[i - 1])
      throw invalid_argument("scoring rule must be non-increasing (f(" +
                             std::to_string(i + 1) + ") > f(" +
                             std::to_string(i) + "))");
  if (values_.front() == values_.back())
    throw invalid_argument("scoring rule must not be constant");
}

ScoringRule ScoringRule::make(ScoringKind kind, std::size_t m,
                              std::size_t approval_count) {
  if (m < 2) throw invalid_argument("scoring rule needs m >= 2");
  std::vector<Score> v(m, 0);
  switch (kind) {
    case ScoringKind::kPlurality:
      v[0] = 1;
      break;
    case ScoringKind::kApproval:
      if (approval_count == 0 || approval_count >= m)
        throw invalid_argument("approval count must be in [1, m)");
      std::fill(v.begin(), v.begin() + static_cast<long>(approval_count), 1);
      break;
    case ScoringKind::kBorda:
      for (std::size_t i = 0; i < m; ++i) v[i] = static_cast<Score>(m - 1 - i);
      break;
    case ScoringKind::kVeto:
      std::fill(v.begin(), v.end() - 1, 1);
      break;
    case ScoringKind::kExplicit:
      throw invalid_argument("explicit scoring rules need values");
  }
  return ScoringRule(kind, std::move(v), 0, approval_count);
}

ScoringRule ScoringRule::from_decimals(const std::vector<Decimal>& values) {
  int digits = 0;
  for (const Decimal& d : values) digits = std::max(digits, d.digits());
  std::vector<Score> v;
  v.reserve(values.size());
  for (const Decimal& d : values) v.push_back(d.scaled_to(digits));
  return ScoringRule(ScoringKind::kExplicit, std::move(v), digits, 0);
}

ScoringRule ScoringRule::parse(std::string_view text, std::size_t m) {
  std::string cleaned(text);
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  auto tok = split_whitespace(cleaned);
  if (tok.empty()) throw invalid_argument("empty scoring rule");
  const std::string_view name = tok[0];
  auto expect_args = [&](std::size_t n) {
    if (tok.size() != n + 1)
      throw invalid_argument("scoring '" + std::string(name) + "' takes " +
                             std::to_string(n) + " argument(s)");
  };
  if (name == "plurality") {
    expect_args(0);
    return make(ScoringKind::kPlurality, m);
  }
  if (name == "borda") {
    expect_args(0);
    return make(ScoringKind::kBorda, m);
  }
  if (name == "veto" || name == "anti-plurality") {
    expect_args(0);
    return make(ScoringKind::kVeto, m);
  }
  if (name == "approval") {
    expect_args(1);
    return make(ScoringKind::kApproval, m,
                parse_index(tok[1], 0, "approval count"));
  }
  if (name == "explicit") {
    if (tok.size() != m + 1)
      throw invalid_argument("explicit scoring needs exactly " +
                             std::to_string(m) + " values, got " +
                             std::to_string(tok.size() - 1));
    std::vector<Decimal> values;
    for (std::size_t i = 1; i < tok.size(); ++i)
      values.push_back(Decimal::parse(tok[i]));
    return from_decimals(values);
  }
  throw invalid_argument("unknown scoring rule '" + std::string(name) + "'");
}

std::string ScoringRule::describe() const {
  switch (kind_) {
    case ScoringKind::kPlurality:
      return "plurality";
    case ScoringKind::kBorda:
      return "borda";
    case ScoringKind::kVeto:
      return "veto";
    case ScoringKind::kApproval:
      return "approval " + std::to_string(approval_count_);
    case ScoringKind::kExplicit:
      break;
  }
  std::string out = "explicit";
  for (Score s : values_) out += " " + Decimal(s, digits_).to_string();
  return out;
}

GapIndex min_gap_index(const ScoringRule& f) {
  for (Rank j = 2; j <= f.size(); ++j)
    if (f.at(j - 1) > f.at(j)) return GapIndex{j, f.at(j - 1), f.at(j)};
  throw Error(ErrorCode::kInternal, "valid scoring rule without a gap");
}

// ---------------------------------------------------------------------------
// Permutations

RankVector ranks_from_order(std::span<const CandidateId> order) {
  const std::size_t m = order.size();
  RankVector ranks(m, 0);
  for (std::size_t r = 0; r < m; ++r) {
    CandidateId c = order[r];
    if (c >= m || ranks[c] != 0)
      throw invalid_argument("preference list is not a permutation of 0.." +
                             std::to_string(m - 1));
    ranks[c] = static_cast<Rank>(r + 1);
  }
  return ranks;
}

Ordering order_from_ranks(std::span<const Rank> ranks) {
  const std::size_t m = ranks.size();
  Ordering order(m, 0);
  std::vector<char> used(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    Rank r = ranks[c];
    if (r < 1 || r > m || used[r - 1])
      throw invalid_argument("rank vector is not a permutation of 1.." +
                             std::to_string(m));
    used[r - 1] = 1;
    order[r - 1] = static_cast<CandidateId>(c);
  }
  return order;
}

PreferenceProfile::PreferenceProfile(std::size_t candidates,
                                     const std::vector<Ordering>& orders)
    : voters_(orders.size()), candidates_(candidates) {
  order_.reserve(voters_ * candidates_);
  rank_.reserve(voters_ * candidates_);
  for (std::size_t v = 0; v < voters_; ++v) {
    if (orders[v].size() != candidates_)
      throw invalid_argument("voter " + std::to_string(v) + " ranks " +
                             std::to_string(orders[v].size()) +
                             " candidates, expected " +
                             std::to_string(candidates_));
    RankVector r = ranks_from_order(orders[v]);
    order_.insert(order_.end(), orders[v].begin(), orders[v].end());
    rank_.insert(rank_.end(), r.begin(), r.end());
  }
}

RankVector apply_update(std::span<const Rank> ranks, const PartyLayout& layout,
                        Direction direction) {
  const std::size_t m = ranks.size();
  if (m != layout.candidates())
    throw invalid_argument("rank vector length does not match the layout");
  const Ordering order = order_from_ranks(ranks);
  auto target_at = [&](std::size_t rank) {
    return rank >= 1 && rank <= m && layout.is_target(order[rank - 1]);
  };

  Rank best_opponent = static_cast<Rank>(m + 1);
  Rank worst_opponent = 0;
  for (CandidateId c = 0; c < m; ++c) {
    if (layout.is_target(c)) continue;
    best_opponent = std::min(best_opponent, ranks[c]);
    worst_opponent = std::max(worst_opponent, ranks[c]);
  }

  RankVector out(ranks.begin(), ranks.end());
  for (CandidateId c = 0; c < m; ++c) {
    const Rank r = ranks[c];
    if (direction == Direction::kConstructive) {
      if (layout.is_target(c)) {
        if (best_opponent < r) out[c] = r - 1;
      } else if (target_at(r + 1)) {
        // Targets ranked below c with no opponent between them and c.
        Rank run = 0;
        while (target_at(r + 1 + run)) ++run;
        out[c] = r + run;
      }
    } else {
      if (layout.is_target(c)) {
        if (worst_opponent > r) out[c] = r + 1;
      } else if (r >= 2 && target_at(r - 1)) {
        Rank run = 0;
        while (r >= 2 + run && target_at(r - 1 - run)) ++run;
        out[c] = r - run;
      }
    }
  }

  try {
    (void)order_from_ranks(out);
  } catch (const Error&) {
    throw Error(ErrorCode::kInternal, "preference update broke bijectivity");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instances and files

ElectionInstance::ElectionInstance(Graph graph, PartyLayout layout,
                                   ScoringRule scoring,
                                   PreferenceProfile profile)
    : graph_(std::move(graph)),
      layout_(layout),
      scoring_(std::move(scoring)),
      profile_(std::move(profile)) {
  if (scoring_.size() != layout_.candidates())
    throw invalid_argument("scoring rule has " +
                           std::to_string(scoring_.size()) +
                           " ranks but there are " +
                           std::to_string(layout_.candidates()) +
                           " candidates");
  if (profile_.candidates() != layout_.candidates())
    throw invalid_argument("profile candidate count does not match layout");
  if (profile_.voters() != graph_.node_count())
    throw invalid_argument("election has " + std::to_string(profile_.voters()) +
                           " voters but the graph has " +
                           std::to_string(graph_.node_count()) + " nodes");
}

ElectionData parse_election(std::string_view text) {
  enum class State { kParties, kScoring, kVoters } state = State::kParties;
  std::size_t t = 0, k = 0;
  ElectionData data;
  std::size_t m = 0;

  for_each_content_line(text, [&](std::size_t line_no,
                                  const std::vector<std::string_view>& tok) {
    switch (state) {
      case State::kParties:
        if (tok.size() != 3 || tok[0] != "parties")
          throw ParseError(line_no, "expected 'parties <t> <k>'");
        t = parse_index(tok[1], line_no, "party count");
        k = parse_index(tok[2], line_no, "candidates per party");
        try {
          data.layout = PartyLayout(t, k);
        } catch (const Error& e) {
          throw ParseError(line_no, e.what());
        }
        m = data.layout.candidates();
        state = State::kScoring;
        return;
      case State::kScoring: {
        if (tok[0] != "scoring" || tok.size() < 2)
          throw ParseError(line_no, "expected 'scoring <rule>'");
        std::string rule;
        for (std::size_t i = 1; i < tok.size(); ++i) {
          if (i > 1) rule += ' ';
          rule += tok[i];
        }
        try {
          data.scoring = ScoringRule::parse(rule, m);
        } catch (const Error& e) {
          throw ParseError(line_no, e.what());
        }
        state = State::kVoters;
        return;
      }
      case State::kVoters: {
        if (tok.size() != m)
          throw ParseError(line_no, "voter line lists " +
                                        std::to_string(tok.size()) +
                                        " candidates, expected " +
                                        std::to_string(m));
        Ordering order;
        order.reserve(m);
        for (auto s : tok)
          order.push_back(
              static_cast<CandidateId>(parse_index(s, line_no, "candidate id")));
        try {
          (void)ranks_from_order(order);
        } catch (const Error& e) {
          throw ParseError(line_no, e.what());
        }
        data.orders.push_back(std::move(order));
        return;
      }
    }
  });
  if (state == State::kParties) throw ParseError(0, "missing 'parties' line");
  if (state == State::kScoring) throw ParseError(0, "missing 'scoring' line");
  return data;
}

ElectionInstance bind_election(Graph graph, const ElectionData& data) {
  return ElectionInstance(std::move(graph), data.layout, data.scoring,
                          PreferenceProfile(data.layout.candidates(),
                                            data.orders));
}

ElectionInstance load_election(std::string_view text, Graph graph) {
  return bind_election(std::move(graph), parse_election(text));
}

std::string serialize_election(const ElectionInstance& inst) {
  std::ostringstream out;
  out << "parties " << inst.layout().parties() << " "
      << inst.layout().per_party() << "\n";
  out << "scoring " << inst.scoring().describe() << "\n";
  for (std::size_t v = 0; v < inst.voters(); ++v) {
    auto order = inst.profile().order(v);
    for (std::size_t r = 0; r < order.size(); ++r)
      out << (r ? " " : "") << order[r];
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Scores and winners

std::vector<Score> candidate_scores(const ElectionInstance& inst,
                                    const NodeMask& active,
                                    Direction direction) {
  const std::size_t m = inst.layout().candidates();
  if (active.size() != inst.voters())
    throw invalid_argument("active mask length does not match voter count");
  std::vector<Score> scores(m, 0);
  for (std::size_t v = 0; v < inst.voters(); ++v) {
    auto ranks = inst.profile().ranks(v);
    if (active[v]) {
      RankVector updated = apply_update(ranks, inst.layout(), direction);
      for (CandidateId c = 0; c < m; ++c) scores[c] += inst.scoring().at(updated[c]);
    } else {
      for (CandidateId c = 0; c < m; ++c) scores[c] += inst.scoring().at(ranks[c]);
    }
  }
  return scores;
}

ScoreTable::ScoreTable(const ElectionInstance& inst, Direction direction)
    : candidates_(inst.layout().candidates()),
      baseline_(candidates_, 0),
      delta_(inst.voters() * candidates_, 0) {
  const ScoringRule& f = inst.scoring();
  for (std::size_t v = 0; v < inst.voters(); ++v) {
    auto ranks = inst.profile().ranks(v);
    RankVector updated = apply_update(ranks, inst.layout(), direction);
    for (CandidateId c = 0; c < candidates_; ++c) {
      baseline_[c] += f.at(ranks[c]);
      delta_[v * candidates_ + c] = f.at(updated[c]) - f.at(ranks[c]);
    }
  }
}

std::vector<Score> ScoreTable::scores(std::span<const NodeId> active) const {
  std::vector<Score> s = baseline_;
  for (NodeId v : active)
    for (CandidateId c = 0; c < candidates_; ++c)
      s[c] += delta_[v * candidates_ + c];
  return s;
}

WinnerResult determine_winners(std::span<const Score> scores, std::size_t t,
                               std::size_t k) {
  const std::size_t m = t * k;
  if (scores.size() != m)
    throw invalid_argument("score vector length must be t*k");
  WinnerResult res;
  res.order.resize(m);
  std::iota(res.order.begin(), res.order.end(), CandidateId{0});
  // Flat ids already encode (party, index) lexicographically.
  std::sort(res.order.begin(), res.order.end(),
            [&](CandidateId a, CandidateId b) {
              if (scores[a] != scores[b]) return scores[a] > scores[b];
              return a < b;
            });
  res.y.assign(m, 0);
  res.party_winners.assign(t, 0);
  for (std::size_t pos = 0; pos < m; ++pos) {
    CandidateId c = res.order[pos];
    res.y[c] = m - 1 - pos;
    if (res.y[c] >= (t - 1) * k) {
      res.winners.push_back(c);
      ++res.party_winners[c / k];
    }
  }
  return res;
}

std::vector<Score> party_totals(std::span<const Score> scores,
                                const PartyLayout& layout) {
  std::vector<Score> out(layout.parties(), 0);
  for (CandidateId c = 0; c < scores.size(); ++c)
    out[layout.party_of(c)] += scores[c];
  return out;
}

}  // namespace mwec
