// Deterministic biased opponents. Each one sees the true matrix, its own
// tie-breaking order, and the full history, and picks the next action.
//
// Two evaluation paths exist for every strategy: a pure function that
// recomputes the choice from the raw history (the reference), and an
// incremental OpponentSession that carries per-action tallies between
// rounds. The session is a cache of the history, never extra state; the
// test suite checks the two paths agree round for round.

#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <string>

#include "biasbreaker/game.hpp"

namespace biasbreaker {

enum class TiePolicy { kShift, kStay };

enum class OpponentKind {
  kMyopicBest,
  kMyopicWorst,
  kGambler,
  kWsls,
  kFollowLeader,
  kHighestAvg,
};

struct OpponentSpec {
  OpponentKind kind = OpponentKind::kMyopicBest;
  TiePolicy tie = TiePolicy::kShift;          // wsls only
  std::optional<int> window;                   // follow_leader only; nullopt = unlimited
  ActionOrdering omega;

  std::string label() const {
    switch (kind) {
      case OpponentKind::kMyopicBest: return "mbr";
      case OpponentKind::kMyopicWorst: return "mwr";
      case OpponentKind::kGambler: return "gambler";
      case OpponentKind::kWsls:
        return tie == TiePolicy::kShift ? "wsls:shift" : "wsls:stay";
      case OpponentKind::kFollowLeader:
        return window ? "ftl:" + std::to_string(*window) : "ftl";
      case OpponentKind::kHighestAvg: return "hap";
    }
    return "?";
  }
};

namespace detail {

// Earliest action in omega among those maximizing score(b).
template <typename Score>
int omega_argmax(const ActionOrdering& omega, Score&& score) {
  int best = omega.at(0);
  auto best_s = score(best);
  for (int k = 1; k < omega.size(); ++k) {
    const int b = omega.at(k);
    auto s = score(b);
    if (s > best_s) {
      best = b;
      best_s = s;
    }
  }
  return best;
}

// Exact average comparison for (sum, count) pairs; count 0 means the
// initialization value 0. Cross-multiplied, no floating point.
struct AvgValue {
  long long sum = 0;
  long long count = 0;
  friend bool operator>(const AvgValue& a, const AvgValue& b) {
    const long long ca = a.count == 0 ? 1 : a.count;
    const long long cb = b.count == 0 ? 1 : b.count;
    const long long sa = a.count == 0 ? 0 : a.sum;
    const long long sb = b.count == 0 ? 0 : b.sum;
    return sa * cb > sb * ca;
  }
};

template <typename Value>
int omega_argmax_value(const ActionOrdering& omega, Value&& value) {
  int best = omega.at(0);
  auto best_v = value(best);
  for (int k = 1; k < omega.size(); ++k) {
    const int b = omega.at(k);
    auto v = value(b);
    if (v > best_v) {
      best = b;
      best_v = v;
    }
  }
  return best;
}

}  // namespace detail

inline int mbr_choose(const GameMatrix& m, const ActionOrdering& omega,
                      const History& h) {
  if (h.empty()) return omega.first();
  const int target = h.back().ours;
  return detail::omega_argmax(omega,
                              [&](int b) { return m.payoff(b, target); });
}

inline int mwr_choose(const GameMatrix& m, const ActionOrdering& omega,
                      const History& h) {
  if (h.empty()) return omega.first();
  const int target = h.back().ours;
  return detail::omega_argmax(omega,
                              [&](int b) { return -m.payoff(b, target); });
}

inline int gambler_choose(const GameMatrix& m, const ActionOrdering& omega,
                          const History& h) {
  std::vector<int> counts(m.n(), 0);
  for (const Round& r : h) ++counts[r.ours];
  // Most overdue target first, then best response, both by omega.
  const int target =
      detail::omega_argmax(omega, [&](int b) { return -counts[b]; });
  return detail::omega_argmax(omega,
                              [&](int b) { return m.payoff(b, target); });
}

inline int wsls_choose(const GameMatrix& m, const ActionOrdering& omega,
                       const History& h, TiePolicy tie) {
  if (h.empty()) return omega.first();
  const int prev = h.back().theirs;
  const int v = m.payoff(prev, h.back().ours);
  const bool stay = v == 1 || (v == 0 && tie == TiePolicy::kStay);
  return stay ? prev : omega.successor(prev);
}

inline int ftl_choose(const GameMatrix& m, const ActionOrdering& omega,
                      const History& h, std::optional<int> window) {
  const std::size_t len =
      window ? std::min<std::size_t>(h.size(), static_cast<std::size_t>(*window))
             : h.size();
  if (len == 0) return omega.first();
  std::vector<long long> score(m.n(), 0);
  for (std::size_t k = h.size() - len; k < h.size(); ++k)
    for (int b = 0; b < m.n(); ++b) score[b] += m.payoff(b, h[k].ours);
  return detail::omega_argmax(omega, [&](int b) { return score[b]; });
}

inline int hap_choose(const GameMatrix& m, const ActionOrdering& omega,
                      const History& h) {
  std::vector<detail::AvgValue> avg(m.n());
  for (const Round& r : h) {
    avg[r.theirs].sum += m.payoff(r.theirs, r.ours);
    avg[r.theirs].count += 1;
  }
  return detail::omega_argmax_value(omega, [&](int b) { return avg[b]; });
}

inline int opponent_choose(const OpponentSpec& spec, const GameMatrix& m,
                           const History& h) {
  switch (spec.kind) {
    case OpponentKind::kMyopicBest: return mbr_choose(m, spec.omega, h);
    case OpponentKind::kMyopicWorst: return mwr_choose(m, spec.omega, h);
    case OpponentKind::kGambler: return gambler_choose(m, spec.omega, h);
    case OpponentKind::kWsls: return wsls_choose(m, spec.omega, h, spec.tie);
    case OpponentKind::kFollowLeader:
      return ftl_choose(m, spec.omega, h, spec.window);
    case OpponentKind::kHighestAvg: return hap_choose(m, spec.omega, h);
  }
  throw std::logic_error("unknown opponent kind");
}

/// Incremental evaluator; one per match, fed every round in order.
class OpponentSession {
 public:
  OpponentSession(OpponentSpec spec, const GameMatrix& game)
      : spec_(std::move(spec)), game_(game) {
    const int n = game_.n();
    if (spec_.omega.size() != n)
      throw std::invalid_argument("ordering size does not match game");
    if (spec_.kind == OpponentKind::kFollowLeader && spec_.window &&
        *spec_.window < 1)
      throw std::invalid_argument("follow-leader window must be >= 1");
    our_counts_.assign(n, 0);
    net_scores_.assign(n, 0);
    avg_.assign(n, {});
  }

  int choose() const {
    const ActionOrdering& omega = spec_.omega;
    switch (spec_.kind) {
      case OpponentKind::kMyopicBest:
        if (!last_) return omega.first();
        return detail::omega_argmax(
            omega, [&](int b) { return game_.payoff(b, last_->ours); });
      case OpponentKind::kMyopicWorst:
        if (!last_) return omega.first();
        return detail::omega_argmax(
            omega, [&](int b) { return -game_.payoff(b, last_->ours); });
      case OpponentKind::kGambler: {
        const int target = detail::omega_argmax(
            omega, [&](int b) { return -our_counts_[b]; });
        return detail::omega_argmax(
            omega, [&](int b) { return game_.payoff(b, target); });
      }
      case OpponentKind::kWsls: {
        if (!last_) return omega.first();
        const int v = game_.payoff(last_->theirs, last_->ours);
        const bool stay =
            v == 1 || (v == 0 && spec_.tie == TiePolicy::kStay);
        return stay ? last_->theirs : omega.successor(last_->theirs);
      }
      case OpponentKind::kFollowLeader:
        if (rounds_seen_ == 0) return omega.first();
        return detail::omega_argmax(omega,
                                    [&](int b) { return net_scores_[b]; });
      case OpponentKind::kHighestAvg:
        return detail::omega_argmax_value(omega,
                                          [&](int b) { return avg_[b]; });
    }
    throw std::logic_error("unknown opponent kind");
  }

  void observe(int ours, int theirs) {
    const Round r{ours, theirs};
    last_ = r;
    ++our_counts_[ours];
    ++rounds_seen_;
    for (int b = 0; b < game_.n(); ++b) net_scores_[b] += game_.payoff(b, ours);
    if (spec_.kind == OpponentKind::kFollowLeader && spec_.window) {
      window_buf_.push_back(r);
      if (static_cast<int>(window_buf_.size()) > *spec_.window) {
        const Round old = window_buf_.front();
        window_buf_.erase(window_buf_.begin());
        for (int b = 0; b < game_.n(); ++b)
          net_scores_[b] -= game_.payoff(b, old.ours);
      }
    }
    avg_[theirs].sum += game_.payoff(theirs, ours);
    avg_[theirs].count += 1;
  }

  const OpponentSpec& spec() const { return spec_; }

 private:
  OpponentSpec spec_;
  const GameMatrix& game_;
  std::optional<Round> last_;
  std::vector<int> our_counts_;
  std::vector<long long> net_scores_;   // windowed when a window is set
  std::vector<Round> window_buf_;
  std::vector<detail::AvgValue> avg_;
  long long rounds_seen_ = 0;
};

}  // namespace biasbreaker
