// Symmetric zero-sum matrix games with payoffs in {-1, 0, +1}.
//
// A game is "playable" here when every action beats at least one other
// action and loses to at least one other action; such games are the only
// ones the exploitation algorithms are guaranteed to win under. Matrices
// that are merely antisymmetric (hypothesis enumeration needs those) are
// still constructible; the beats/loses clauses are checked separately by
// validate_permissible().

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace biasbreaker {

// Draw uniformly from [0, m) using raw mt19937 output with rejection.
// std::uniform_int_distribution is not bit-stable across standard
// libraries; this is, and seeds must reproduce byte-identical artifacts.
inline std::uint32_t uniform_below(std::mt19937& rng, std::uint32_t m) {
  const std::uint64_t span = std::uint64_t{1} << 32;
  const std::uint32_t limit = static_cast<std::uint32_t>(span - span % m);
  std::uint32_t v = rng();
  if (limit != 0)  // zero means m divides 2^32 and no draw is biased
    while (v >= limit) v = rng();
  return v % m;
}

/// Fixed tie-breaking order over actions (the opponent's private ordering).
class ActionOrdering {
 public:
  ActionOrdering() = default;

  explicit ActionOrdering(std::vector<int> order) : order_(std::move(order)) {
    const int n = static_cast<int>(order_.size());
    std::vector<bool> seen(n, false);
    for (int a : order_) {
      if (a < 0 || a >= n || seen[a])
        throw std::invalid_argument("ordering is not a permutation of 0.." +
                                    std::to_string(n - 1));
      seen[a] = true;
    }
    rank_.assign(n, 0);
    for (int k = 0; k < n; ++k) rank_[order_[k]] = k;
  }

  static ActionOrdering identity(int n) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    return ActionOrdering(std::move(o));
  }

  static ActionOrdering random(int n, std::uint32_t seed) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    std::mt19937 rng(seed);
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(uniform_below(rng, static_cast<std::uint32_t>(i + 1)));
      std::swap(o[i], o[j]);
    }
    return ActionOrdering(std::move(o));
  }

  int size() const { return static_cast<int>(order_.size()); }
  int at(int k) const { return order_[k]; }
  int first() const { return order_.front(); }
  // 0-based position of an action within the ordering.
  int rank_of(int action) const { return rank_[action]; }
  int successor(int action) const {
    return order_[(rank_[action] + 1) % size()];
  }
  const std::vector<int>& order() const { return order_; }

  bool operator==(const ActionOrdering& o) const { return order_ == o.order_; }

 private:
  std::vector<int> order_;
  std::vector<int> rank_;
};

/// One round of simultaneous play, from the exploiter's side of the table.
struct Round {
  int ours;
  int theirs;
  bool operator==(const Round&) const = default;
};

/// Append-only record of the rounds played so far.
using History = std::vector<Round>;

struct ValidationIssue {
  std::string what;
  bool operator==(const ValidationIssue&) const = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Antisymmetric n x n payoff table over {-1, 0, +1}, row player's view.
class GameMatrix {
 public:
  GameMatrix(int n, std::vector<std::int8_t> cells,
             std::vector<std::string> action_names = {})
      : n_(n), cells_(std::move(cells)), names_(std::move(action_names)) {
    if (n_ < 3)
      throw std::invalid_argument(
          "no permissible game exists for n < 3 (got n = " +
          std::to_string(n_) + ")");
    if (static_cast<int>(cells_.size()) != n_ * n_)
      throw std::invalid_argument("payoff table is not n x n");
    if (!names_.empty() && static_cast<int>(names_.size()) != n_)
      throw std::invalid_argument("action name list does not have n entries");
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const int v = cells_[i * n_ + j];
        if (v < -1 || v > 1)
          throw std::invalid_argument("payoffs[" + std::to_string(i) + "][" +
                                      std::to_string(j) +
                                      "] entry out of domain {-1,0,1}");
      }
      if (cells_[i * n_ + i] != 0)
        throw std::invalid_argument("payoffs[" + std::to_string(i) + "][" +
                                    std::to_string(i) + "] diagonal not zero");
    }
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (cells_[i * n_ + j] != -cells_[j * n_ + i])
          throw std::invalid_argument("antisymmetry violated at payoffs[" +
                                      std::to_string(i) + "][" +
                                      std::to_string(j) + "]");
  }

  int n() const { return n_; }

  int payoff(int row, int col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_)
      throw std::out_of_range("action index out of range");
    return cells_[row * n_ + col];
  }

  const std::vector<std::string>& action_names() const { return names_; }

  std::string action_label(int a) const {
    if (!names_.empty()) return names_[a];
    return "a" + std::to_string(a);
  }

  /// Wins and losses swapped; used by the indistinguishability demo.
  GameMatrix reversed() const {
    std::vector<std::int8_t> c(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i)
      c[i] = static_cast<std::int8_t>(-cells_[i]);
    return GameMatrix(n_, std::move(c), names_);
  }

  ValidationReport validate_permissible() const {
    ValidationReport rep;
    for (int i = 0; i < n_; ++i) {
      bool beats_one = false, loses_one = false;
      for (int j = 0; j < n_; ++j) {
        if (cells_[i * n_ + j] == 1) beats_one = true;
        if (cells_[i * n_ + j] == -1) loses_one = true;
      }
      if (!beats_one)
        rep.issues.push_back({"action " + std::to_string(i) +
                              " has no winning action (beats nothing)"});
      if (!loses_one)
        rep.issues.push_back({"action " + std::to_string(i) +
                              " is unbeatable (loses to nothing)"});
    }
    return rep;
  }

  bool operator==(const GameMatrix& o) const {
    return n_ == o.n_ && cells_ == o.cells_;
  }

  // Row-major entry order with -1 < 0 < +1; total order used by the
  // consistent-hypothesis baseline.
  bool lex_less(const GameMatrix& o) const { return cells_ < o.cells_; }

  const std::vector<std::int8_t>& cells() const { return cells_; }

 private:
  int n_;
  std::vector<std::int8_t> cells_;
  std::vector<std::string> names_;
};

inline int payoff(const GameMatrix& m, int i, int j) { return m.payoff(i, j); }

/// Canonical rock-paper-scissors.
inline GameMatrix rps_game() {
  return GameMatrix(3,
                    {0, -1, 1,
                     1, 0, -1,
                     -1, 1, 0},
                    {"R", "P", "S"});
}

namespace detail {
inline const std::vector<std::string>& six_names() {
  static const std::vector<std::string> names = {"R", "P",  "S",
                                                 "R'", "P'", "S'"};
  return names;
}
}  // namespace detail

// Two 6x6 expansions of rock-paper-scissors that induce identical
// myopic-best-response behavior under the identity ordering but disagree
// on the cross payoffs; playing "optimally" against the wrong one loses.
inline GameMatrix m_star_game() {
  return GameMatrix(6,
                    {0, -1, 1, 1, 0, 0,
                     1, 0, -1, 1, 1, 0,
                     -1, 1, 0, 0, 1, 1,
                     -1, -1, 0, 0, -1, 1,
                     0, -1, -1, 1, 0, -1,
                     0, 0, -1, -1, 1, 0},
                    detail::six_names());
}

inline GameMatrix m_lex_game() {
  return GameMatrix(6,
                    {0, -1, 1, 1, 0, -1,
                     1, 0, -1, -1, 1, 0,
                     -1, 1, 0, 0, -1, 1,
                     -1, 1, 0, 0, -1, 1,
                     0, -1, 1, 1, 0, -1,
                     1, 0, -1, -1, 1, 0},
                    detail::six_names());
}

inline GameMatrix builtin_game(const std::string& name) {
  if (name == "rps") return rps_game();
  if (name == "m_star") return m_star_game();
  if (name == "m_lex") return m_lex_game();
  throw std::invalid_argument("unknown builtin game: " + name);
}

/// Uniform draw over permissible games: sample each upper-triangle entry
/// from {-1,0,1}, reflect antisymmetrically, reject until permissible.
inline GameMatrix generate_permissible(int n, std::uint32_t seed) {
  if (n < 3)
    throw std::invalid_argument("no permissible game exists for n < 3");
  std::mt19937 rng(seed);
  while (true) {
    std::vector<std::int8_t> cells(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int v = static_cast<int>(uniform_below(rng, 3)) - 1;
        cells[i * n + j] = static_cast<std::int8_t>(v);
        cells[j * n + i] = static_cast<std::int8_t>(-v);
      }
    }
    GameMatrix g(n, std::move(cells));
    if (g.validate_permissible().ok()) return g;
  }
}

}  // namespace biasbreaker
