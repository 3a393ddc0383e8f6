// Consistent-hypothesis baseline: track the lexicographically first
// (matrix, ordering) pair that explains every opponent action under
// myopic-best-response behavior, predict with it, and answer with that
// matrix's best response. It never reads the true game; the matrices here
// are its own candidate hypotheses. Looks optimal, provably is not: two
// consistent matrices can disagree on exactly the payoffs being earned.

#pragma once

#include <memory>
#include <utility>

#include "biasbreaker/game.hpp"
#include "biasbreaker/halving.hpp"
#include "biasbreaker/observation.hpp"
#include "biasbreaker/opponents.hpp"

namespace biasbreaker {

class LexBaseline : public Exploiter {
 public:
  using Pair = std::pair<GameMatrix, ActionOrdering>;

  explicit LexBaseline(std::vector<Pair> hypotheses)
      : hyps_(std::move(hypotheses)) {
    if (hyps_.empty()) throw std::invalid_argument("empty hypothesis list");
    std::sort(hyps_.begin(), hyps_.end(), [](const Pair& a, const Pair& b) {
      if (a.first.lex_less(b.first)) return true;
      if (b.first.lex_less(a.first)) return false;
      return a.second.order() < b.second.order();
    });
    alive_.assign(hyps_.size(), true);
    n_ = hyps_.front().first.n();
  }

  /// Every permissible matrix of size n crossed with every ordering.
  static LexBaseline full_enumeration(int n) {
    if (n > 3)
      throw std::invalid_argument(
          "full hypothesis enumeration is guarded at n <= 3");
    std::vector<Pair> hyps;
    for (const GameMatrix& m : HalvingSpace::all_antisymmetric(n)) {
      if (!m.validate_permissible().ok()) continue;
      for (const ActionOrdering& o : HalvingSpace::all_orderings(n))
        hyps.push_back({m, o});
    }
    return LexBaseline(std::move(hyps));
  }

  /// The two six-action expansions, every ordering reachable.
  static LexBaseline counterexample_pair() {
    std::vector<Pair> hyps;
    for (const GameMatrix& m : {m_lex_game(), m_star_game()})
      for (const ActionOrdering& o : HalvingSpace::all_orderings(6))
        hyps.push_back({m, o});
    return LexBaseline(std::move(hyps));
  }

  std::string name() const override { return "lex-baseline"; }

  // Payoff this round should earn if the current hypothesis were the game.
  int last_anticipated() const { return anticipated_; }
  const Pair& current_hypothesis() const { return hyps_[current_]; }

  Decision decide(const Observation& obs) override {
    const int t = obs.rounds();
    while (cursor_ < t) {
      // Drop hypotheses that would have played differently this round.
      for (std::size_t k = 0; k < hyps_.size(); ++k) {
        if (!alive_[k]) continue;
        if (mbr_choose(hyps_[k].first, hyps_[k].second, hist_) !=
            obs.theirs[cursor_])
          alive_[k] = false;
      }
      hist_.push_back({obs.ours[cursor_], obs.theirs[cursor_]});
      ++cursor_;
    }
    current_ = 0;
    while (current_ < hyps_.size() && !alive_[current_]) ++current_;
    if (current_ == hyps_.size())
      throw ModelMismatch(
          "hypothesis space exhausted: opponent is not a myopic best "
          "responder over any candidate game");
    const GameMatrix& m = hyps_[current_].first;
    const int pred = mbr_choose(m, hyps_[current_].second, hist_);
    // Best response under the hypothesis; among equals prefer the highest
    // index, which keeps the play inside the expansion half of the
    // counterexample construction.
    int act = 0;
    for (int b = 0; b < n_; ++b)
      if (m.payoff(b, pred) >= m.payoff(act, pred)) act = b;
    anticipated_ = m.payoff(act, pred);
    return {act, pred, {"consistent", t + 1}};
  }

 private:
  std::vector<Pair> hyps_;
  std::vector<bool> alive_;
  std::size_t current_ = 0;
  History hist_;
  int cursor_ = 0;
  int n_ = 0;
  int anticipated_ = 0;
};

}  // namespace biasbreaker
