// Majority-vote prediction over every (strategy, matrix, ordering) triple
// still consistent with the observed play. Each wrong prediction discards
// at least half of the surviving triples, so mistakes are bounded by
// log2 of the initial space. The matrices enumerated are candidate
// hypotheses, never the real game; the true triple is never eliminated.

#pragma once

#include <vector>

#include "biasbreaker/game.hpp"
#include "biasbreaker/opponents.hpp"

namespace biasbreaker {

struct StrategyFamilyEntry {
  OpponentKind kind;
  TiePolicy tie = TiePolicy::kShift;
  std::optional<int> window;
};

struct Hypothesis {
  StrategyFamilyEntry strategy;
  GameMatrix matrix;
  ActionOrdering omega;
};

class HalvingSpace {
 public:
  // Enumerates all antisymmetric zero-diagonal sign tables (3^(n(n-1)/2))
  // crossed with all n! orderings and the given strategies. The default
  // guard refuses n > 3; pass allow_large for bigger spaces.
  HalvingSpace(const std::vector<StrategyFamilyEntry>& family, int n,
               bool allow_large = false) {
    if (n < 3)
      throw std::invalid_argument(
          "no permissible game exists for n < 3; cannot build a space");
    if (n > 3 && !allow_large)
      throw std::invalid_argument(
          "hypothesis enumeration guard: n > 3 requires allow_large");
    if (family.empty()) throw std::invalid_argument("empty strategy family");

    std::vector<GameMatrix> matrices = all_antisymmetric(n);
    std::vector<ActionOrdering> orderings = all_orderings(n);
    entries_.reserve(family.size() * matrices.size() * orderings.size());
    for (const auto& s : family)
      for (const auto& m : matrices)
        for (const auto& o : orderings)
          entries_.push_back(Hypothesis{s, m, o});
  }

  std::size_t size() const { return entries_.size(); }

  int predict(const History& h) const {
    if (entries_.empty())
      throw ModelMismatchHalving(
          "hypothesis space is empty: opponent not in the family");
    const int n = entries_.front().matrix.n();
    std::vector<int> votes(n, 0);
    for (const Hypothesis& hyp : entries_) ++votes[choice(hyp, h)];
    int best = 0;
    for (int a = 1; a < n; ++a)
      if (votes[a] > votes[best]) best = a;
    return best;
  }

  /// Keep only hypotheses whose prediction for this round was `observed`.
  void update(const History& h, int observed) {
    std::vector<Hypothesis> next;
    next.reserve(entries_.size());
    for (const Hypothesis& hyp : entries_)
      if (choice(hyp, h) == observed) next.push_back(hyp);
    entries_ = std::move(next);
  }

  bool contains(const StrategyFamilyEntry& s, const GameMatrix& m,
                const ActionOrdering& o) const {
    for (const Hypothesis& hyp : entries_)
      if (hyp.strategy.kind == s.kind && hyp.strategy.tie == s.tie &&
          hyp.strategy.window == s.window && hyp.matrix == m && hyp.omega == o)
        return true;
    return false;
  }

  class ModelMismatchHalving : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  static int choice(const Hypothesis& hyp, const History& h) {
    OpponentSpec spec;
    spec.kind = hyp.strategy.kind;
    spec.tie = hyp.strategy.tie;
    spec.window = hyp.strategy.window;
    spec.omega = hyp.omega;
    return opponent_choose(spec, hyp.matrix, h);
  }

  static std::vector<GameMatrix> all_antisymmetric(int n) {
    const int slots = n * (n - 1) / 2;
    long long total = 1;
    for (int k = 0; k < slots; ++k) total *= 3;
    std::vector<GameMatrix> out;
    out.reserve(static_cast<std::size_t>(total));
    for (long long code = 0; code < total; ++code) {
      std::vector<std::int8_t> cells(static_cast<std::size_t>(n) * n, 0);
      long long c = code;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const int v = static_cast<int>(c % 3) - 1;
          c /= 3;
          cells[i * n + j] = static_cast<std::int8_t>(v);
          cells[j * n + i] = static_cast<std::int8_t>(-v);
        }
      out.push_back(GameMatrix(n, std::move(cells)));
    }
    return out;
  }

  static std::vector<ActionOrdering> all_orderings(int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<ActionOrdering> out;
    do {
      out.push_back(ActionOrdering(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }

 private:
  std::vector<Hypothesis> entries_;
};

}  // namespace biasbreaker
