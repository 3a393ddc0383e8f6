// Payoff-table estimator behind the retrospective-score predictions.
//
// Two cooperating parts, both payoff-blind:
//
//  - A central-cut ellipsoid over the n^2 table entries. Every round the
//    opponent's choice certifies linear rank constraints ("the chosen
//    action's retrospective score beats every other action's"); any
//    constraint the current center violates becomes a cut, and a
//    prediction mistake always produces at least one. Volume shrinks by
//    the standard factor per cut, so consistency violations are finite.
//
//  - A lattice readout. Payoffs live on {-1,0,1}, so the candidate tables
//    are enumerable for small n. The readout filters candidates through
//    the constraint store, exact-checks the few survivors against the
//    whole history (the chosen action must sit in each survivor's argmax
//    set), and has each survivor learn the opponent's tie order from its
//    own tie rounds. The true table can never be eliminated; wrong ones
//    die on the first round that exposes them, by argmax mismatch or by
//    an order contradiction.
//
// Score modes: net sums weighted by our play counts (follow-the-leader
// modeling, optionally windowed) or per-action averages (highest-average
// modeling).

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "biasbreaker/observation.hpp"

namespace biasbreaker {

enum class ScoreMode { kNet, kAvg };

/// One revealed inequality: weights . x >= margin holds at any table
/// consistent with the opponent's comparisons.
struct MistakeConstraint {
  std::vector<double> weights;  // length n*n, row-major
  double margin = 0.0;
  bool degenerate = false;  // avg mode with an unplayed action's row
  int predicted = -1;
  int actual = -1;
};

class PredictorFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Shared per-round tallies: our play counts over the relevant window plus
// the joint (their action, our action) counts. Candidate-independent, so
// one pass serves every candidate table.
struct RoundCounts {
  std::vector<long long> ours;   // n, windowed
  std::vector<long long> joint;  // n*n, [theirs][ours]
  std::vector<long long> den;    // n, opponent play counts

  RoundCounts(int n, std::optional<int> window, std::span<const int> our_s,
              std::span<const int> their_s)
      : ours(n, 0), joint(static_cast<std::size_t>(n) * n, 0), den(n, 0) {
    const std::size_t len =
        window ? std::min<std::size_t>(our_s.size(),
                                       static_cast<std::size_t>(*window))
               : our_s.size();
    for (std::size_t k = our_s.size() - len; k < our_s.size(); ++k)
      ++ours[our_s[k]];
    for (std::size_t k = 0; k < their_s.size(); ++k) {
      ++joint[their_s[k] * n + our_s[k]];
      ++den[their_s[k]];
    }
  }
};

// Exact retrospective scores of an integer candidate table.
// net mode: score_i = sum_j counts[j] * B[i][j] over the window.
// avg mode: score_i = (sum over rounds opponent played i of B[i][ours]) /
//           (times played), with the unplayed value pinned to exactly 0.
struct ExactScores {
  std::vector<long long> num;
  std::vector<long long> den;  // all 1 in net mode

  bool less(int a, int b) const { return num[a] * den[b] < num[b] * den[a]; }
  bool equal(int a, int b) const { return num[a] * den[b] == num[b] * den[a]; }

  std::vector<int> top_set() const {
    int best = 0;
    for (int i = 1; i < static_cast<int>(num.size()); ++i)
      if (less(best, i)) best = i;
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(num.size()); ++i)
      if (equal(i, best)) out.push_back(i);
    return out;
  }
};

inline ExactScores exact_scores(const std::int8_t* table, int n,
                                ScoreMode mode, const RoundCounts& counts) {
  ExactScores s;
  s.num.assign(n, 0);
  s.den.assign(n, 1);
  if (mode == ScoreMode::kNet) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s.num[i] += counts.ours[j] * table[i * n + j];
  } else {
    for (int i = 0; i < n; ++i) {
      if (counts.den[i] > 0) {
        for (int j = 0; j < n; ++j)
          s.num[i] += counts.joint[i * n + j] * table[i * n + j];
        s.den[i] = counts.den[i];
      }
    }
  }
  return s;
}

}  // namespace detail

/// Consistent-candidate readout over the payoff lattice. Inactive for
/// large n (the enumeration guard); callers fall back to raw scores.
///
/// The prediction contract that keeps the oracle honest: the answer is
/// the raw-score maximum over the survivors' pooled proposals, and the
/// true table always proposes the opponent's actual choice (it never
/// dies, its recorded order edges are genuine, and the actual choice is
/// the order minimum of its argmax set). A wrong answer therefore
/// out-scores the actual one at the center, which leaves the mistake
/// constraint violated there — the ellipsoid always has a cut.
class LatticeReadout {
 public:
  static constexpr long long kMaxCandidates = 60000;
  // The readout only speaks once the survivors are few; before that the
  // raw center is the better-behaved predictor.
  static constexpr long long kSpeakThreshold = 64;

  LatticeReadout(int n, ScoreMode mode, std::optional<int> window, double tol)
      : n_(n), mode_(mode), window_(window), tol_(tol) {
    const int slots = n * (n - 1) / 2;
    long long total = 1;
    for (int k = 0; k < slots && total <= kMaxCandidates; ++k) total *= 3;
    if (total > kMaxCandidates) return;  // stays inactive
    count_ = total;
    alive_count_ = total;
    cells_.resize(static_cast<std::size_t>(total) * n * n);
    alive_.assign(total, true);
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      std::int8_t* b = &cells_[static_cast<std::size_t>(code) * n * n];
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const int v = static_cast<int>(c % 3) - 1;
          c /= 3;
          b[i * n + j] = static_cast<std::int8_t>(v);
          b[j * n + i] = static_cast<std::int8_t>(-v);
        }
    }
  }

  bool enabled() const { return count_ > 0; }
  long long alive_count() const { return alive_count_; }
  bool speaking() const {
    return enabled() && alive_count_ <= kSpeakThreshold && alive_count_ > 0;
  }

  /// Drop candidates violating stored constraints beyond the tolerance
  /// the tie perturbation allows the true table.
  void filter(const std::vector<MistakeConstraint>& store) {
    if (!enabled()) return;
    for (; filtered_ < store.size(); ++filtered_) {
      const MistakeConstraint& c = store[filtered_];
      if (c.degenerate) continue;
      for (long long k = 0; k < count_; ++k) {
        if (!alive_[k]) continue;
        const std::int8_t* b = cells(k);
        double v = 0.0;
        for (int x = 0; x < n_ * n_; ++x) v += c.weights[x] * b[x];
        if (v < -tol_) kill(k);
      }
    }
  }

  /// Feed one completed round (prefix = both streams before it). Once few
  /// candidates remain, every round exact-checks all of them: the chosen
  /// action must sit in each survivor's argmax set, and each survivor
  /// books the implied tie-order edges in its own ledger.
  void note_round(const Observation& prefix, int actual) {
    if (!enabled()) return;
    if (prefix.ours.size() > all_ours_.size())
      all_ours_.push_back(prefix.ours.back());
    all_theirs_.push_back(actual);
    sweep();
  }

  /// Pooled prediction, or -1 to fall back to raw scores.
  ///
  /// Each survivor proposes the actions in its own argmax set that its
  /// own learned tie order does not rule out; the answer is the raw-score
  /// maximum over the pooled proposals. The true table always proposes
  /// the opponent's actual choice (its edges are genuine order facts and
  /// the actual choice is the order minimum of its argmax set), so a
  /// wrong answer out-scores the actual one at the center and the
  /// resulting mistake constraint is always available as a cut.
  int predict(const Observation& obs, const std::vector<double>& raw_norm) {
    if (!speaking() || swept_ < all_theirs_.size()) return -1;
    const detail::RoundCounts counts(n_, window_, obs.ours, obs.theirs);
    std::vector<bool> pool(n_, false);
    bool any = false;
    for (long long k = 0; k < count_; ++k) {
      if (!alive_[k]) continue;
      const detail::ExactScores s =
          detail::exact_scores(cells(k), n_, mode_, counts);
      const std::vector<int> top = s.top_set();
      const std::vector<char>& order = ledger(k);
      for (int x : top) {
        bool ruled_out = false;
        for (int y : top)
          if (y != x && order[y * n_ + x]) ruled_out = true;
        if (!ruled_out) {
          pool[x] = true;
          any = true;
        }
      }
    }
    if (!any) return -1;
    int best = -1;
    for (int x = 0; x < n_; ++x)
      if (pool[x] && (best < 0 || raw_norm[x] > raw_norm[best])) best = x;
    return best;
  }

 private:
  const std::int8_t* cells(long long k) const {
    return &cells_[static_cast<std::size_t>(k) * n_ * n_];
  }

  void kill(long long k) {
    if (alive_[k]) --alive_count_;
    alive_[k] = false;
  }

  // Exact-check all survivors against rounds not yet swept. Each
  // survivor's argmax set must contain the action actually played, and
  // each survivor records the implied tie-order edges in its own ledger;
  // a ledger contradiction (cycle) is proof against that survivor. Runs
  // only below the speak threshold; crossing it replays history once.
  void sweep() {
    if (alive_count_ > kSpeakThreshold) return;
    for (; swept_ < all_theirs_.size(); ++swept_) {
      const int actual = all_theirs_[swept_];
      const detail::RoundCounts counts(
          n_, window_,
          std::span<const int>(all_ours_.data(),
                               std::min(all_ours_.size(), swept_)),
          std::span<const int>(all_theirs_.data(), swept_));
      for (long long k = 0; k < count_; ++k) {
        if (!alive_[k]) continue;
        const detail::ExactScores s =
            detail::exact_scores(cells(k), n_, mode_, counts);
        const std::vector<int> top = s.top_set();
        bool found = false;
        for (int x : top) found = found || x == actual;
        if (!found) {
          kill(k);
          continue;
        }
        std::vector<char>& order = ledger(k);
        bool contradiction = false;
        for (int x : top)
          if (x != actual && !add_edge(order, actual, x)) contradiction = true;
        if (contradiction) kill(k);
      }
    }
  }

  // a precedes b in this ledger's tie order; false when that would close
  // a cycle, which no genuine fixed order can
  bool add_edge(std::vector<char>& order, int a, int b) {
    if (order[b * n_ + a]) return false;
    if (order[a * n_ + b]) return true;
    order[a * n_ + b] = 1;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j && (i == a || order[i * n_ + a]) &&
            (j == b || order[b * n_ + j]))
          order[i * n_ + j] = 1;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j)
        if (order[i * n_ + j] && order[j * n_ + i]) return false;
    return true;
  }

  std::vector<char>& ledger(long long k) {
    auto [it, fresh] = ledgers_.try_emplace(k);
    if (fresh) it->second.assign(static_cast<std::size_t>(n_) * n_, 0);
    return it->second;
  }

  int n_;
  ScoreMode mode_;
  std::optional<int> window_;
  double tol_;
  long long count_ = 0;
  long long alive_count_ = 0;
  std::vector<std::int8_t> cells_;
  std::vector<bool> alive_;
  std::size_t filtered_ = 0;
  std::map<long long, std::vector<char>> ledgers_;  // per-survivor orders
  std::vector<int> all_ours_;    // our action stream, one entry per round
  std::vector<int> all_theirs_;  // opponent stream; entry u is round u
  std::size_t swept_ = 0;
};

class EllipsoidPredictor {
 public:
  // horizon: configured match length; pins the constraint margin.
  EllipsoidPredictor(int n, ScoreMode mode, long long horizon,
                     std::optional<int> window = std::nullopt)
      : n_(n),
        d_(n * n),
        mode_(mode),
        window_(window),
        horizon_(horizon),
        readout_(n, mode, window,
                 mode == ScoreMode::kNet
                     ? 1.0 / static_cast<double>(window ? *window : horizon)
                     : 1.0 / (static_cast<double>(horizon) * horizon)) {
    center_.assign(d_, 0.0);
    shape_.assign(static_cast<std::size_t>(d_) * d_, 0.0);
    // Ball of radius n holds every payoff table with entries in [-1, 1].
    for (int i = 0; i < d_; ++i) shape_[i * d_ + i] = static_cast<double>(n) * n;
    const double denom = static_cast<double>(n_) * n_ - n_;
    if (mode_ == ScoreMode::kNet)
      margin_ = 1.0 / (2.0 * static_cast<double>(horizon) * denom);
    else
      margin_ = 1.0 / (2.0 * static_cast<double>(horizon) *
                       static_cast<double>(horizon) * denom);
    log_volume_ = log_det_shape_half();
    volume_trail_.push_back(log_volume_);
  }

  int n() const { return n_; }
  int dimension() const { return d_; }
  ScoreMode mode() const { return mode_; }
  std::optional<int> window() const { return window_; }
  double margin() const { return margin_; }
  int mistake_count() const { return mistakes_; }
  const std::vector<MistakeConstraint>& constraints() const {
    return constraints_;
  }
  const std::vector<double>& center() const { return center_; }
  // Log of sqrt(det shape); volume differs by a dimension constant only.
  double log_volume() const { return log_volume_; }
  // log_volume at start, then after each mistake's cuts.
  const std::vector<double>& volume_trail() const { return volume_trail_; }
  long long cut_count() const { return cuts_; }
  long long lattice_alive() const { return readout_.alive_count(); }

  /// Modeled retrospective score of each action at the current center.
  std::vector<double> scores(const Observation& obs) const {
    std::vector<double> s(n_, 0.0);
    if (mode_ == ScoreMode::kNet) {
      const std::vector<double> counts = net_counts(obs);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) s[i] += counts[j] * center_[i * n_ + j];
    } else {
      for (int i = 0; i < n_; ++i) {
        const std::vector<double> row = avg_row(obs, i);
        double v = 0.0;
        for (int j = 0; j < n_; ++j) v += row[j] * center_[i * n_ + j];
        s[i] = v;  // zero row => initialization value 0
      }
    }
    return s;
  }

  /// Raw center scores rescaled to the constraint normalization, so a
  /// score difference compares directly against the margin.
  std::vector<double> normalized_scores(const Observation& obs) const {
    std::vector<double> s = scores(obs);
    if (mode_ == ScoreMode::kNet) {
      const std::vector<double> counts = net_counts(obs);
      double total = 0.0;
      for (double v : counts) total += v;
      if (total > 0.0)
        for (double& v : s) v /= total;
    }
    return s;
  }

  /// Next-action prediction: the lattice readout once the candidate pool
  /// is small, the raw center argmax otherwise. Ties fall to the lowest
  /// index.
  int predict(const Observation& obs) {
    readout_.filter(constraints_);
    const std::vector<double> raw = normalized_scores(obs);
    const int from_lattice = readout_.predict(obs, raw);
    if (from_lattice >= 0) return from_lattice;
    int best = 0;
    for (int i = 1; i < n_; ++i)
      if (raw[i] > raw[best]) best = i;
    return best;
  }

  /// Build the constraint induced by ranking `actual` above `predicted`,
  /// given the history the opponent responded to.
  MistakeConstraint make_constraint(const Observation& obs, int predicted,
                                    int actual) const {
    MistakeConstraint c;
    c.weights.assign(d_, 0.0);
    c.margin = margin_;
    c.predicted = predicted;
    c.actual = actual;
    if (mode_ == ScoreMode::kNet) {
      // Normalize by the window mass so every constraint carries the same
      // scale and the margin keeps its meaning as the match grows.
      std::vector<double> counts = net_counts(obs);
      double total = 0.0;
      for (double v : counts) total += v;
      if (total > 0.0)
        for (double& v : counts) v /= total;
      for (int j = 0; j < n_; ++j) {
        c.weights[actual * n_ + j] += counts[j];
        c.weights[predicted * n_ + j] -= counts[j];
      }
    } else {
      const std::vector<double> ra = avg_row(obs, actual);
      const std::vector<double> rp = avg_row(obs, predicted);
      bool zero_a = true, zero_p = true;
      for (int j = 0; j < n_; ++j) {
        if (ra[j] != 0.0) zero_a = false;
        if (rp[j] != 0.0) zero_p = false;
        c.weights[actual * n_ + j] += ra[j];
        c.weights[predicted * n_ + j] -= rp[j];
      }
      c.degenerate = zero_a || zero_p;
    }
    return c;
  }

  double violation(const MistakeConstraint& c) const {
    double v = 0.0;
    for (int k = 0; k < d_; ++k) v += c.weights[k] * center_[k];
    return v;
  }

  static bool has_weight(const MistakeConstraint& c) {
    for (double w : c.weights)
      if (w != 0.0) return true;
    return false;
  }

  static double snap(double v) {
    if (v > 0.5) return 1.0;
    if (v < -0.5) return -1.0;
    return 0.0;
  }

  /// One central cut toward {x : weights.x >= margin}.
  void apply_cut(const MistakeConstraint& c) {
    // g = shape * w, s = w' shape w
    std::vector<double> g(d_, 0.0);
    for (int i = 0; i < d_; ++i) {
      double acc = 0.0;
      const double* row = &shape_[static_cast<std::size_t>(i) * d_];
      for (int j = 0; j < d_; ++j) acc += row[j] * c.weights[j];
      g[i] = acc;
    }
    double s = 0.0;
    for (int i = 0; i < d_; ++i) s += c.weights[i] * g[i];
    if (!(s > 1e-30))
      throw PredictorFault("ellipsoid conditioning fault: w'Pw too small");
    const double sq = std::sqrt(s);
    const double dd = static_cast<double>(d_);
    for (int i = 0; i < d_; ++i) center_[i] += g[i] / (sq * (dd + 1.0));
    const double scale = dd * dd / (dd * dd - 1.0);
    const double corr = 2.0 / (dd + 1.0) / s;
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j)
        shape_[static_cast<std::size_t>(i) * d_ + j] =
            scale * (shape_[static_cast<std::size_t>(i) * d_ + j] -
                     corr * g[i] * g[j]);
    // re-symmetrize against drift
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j) {
        const double m = 0.5 * (shape_[static_cast<std::size_t>(i) * d_ + j] +
                                shape_[static_cast<std::size_t>(j) * d_ + i]);
        shape_[static_cast<std::size_t>(i) * d_ + j] = m;
        shape_[static_cast<std::size_t>(j) * d_ + i] = m;
      }
    log_volume_ = log_det_shape_half();
    ++cuts_;
  }

  /// Record a prediction mistake: store its constraint, harvest the full
  /// rank information of the round, cut until the center satisfies every
  /// stored constraint, and log the volume for the per-mistake audit.
  void on_mistake(const Observation& obs, int predicted, int actual) {
    MistakeConstraint c = make_constraint(obs, predicted, actual);
    constraints_.push_back(std::move(c));
    ++mistakes_;
    harvest(obs, actual);
    settle();
    volume_trail_.push_back(log_volume_);
    readout_.note_round(obs, actual);
  }

  /// Feed a correctly-predicted round: same harvest, no mistake entry.
  void observe_round(const Observation& obs, int actual) {
    harvest(obs, actual);
    settle();
    readout_.note_round(obs, actual);
  }

  // Total central cuts the feasibility argument permits before the
  // ellipsoid volume drops below any inner ball of the margin's radius.
  long long cut_budget() const {
    const double r_outer = static_cast<double>(n_);
    const double r_inner = margin_ / 2.0;
    const double per_cut = 1.0 / (2.0 * (static_cast<double>(d_) + 1.0));
    const double total =
        static_cast<double>(d_) * std::log(r_outer / r_inner) / per_cut;
    return static_cast<long long>(total) + 16;
  }

 private:
  // The chosen action outranks every other; store whichever of those
  // inequalities the center does not already satisfy.
  void harvest(const Observation& obs, int actual) {
    for (int b = 0; b < n_; ++b) {
      if (b == actual) continue;
      MistakeConstraint c = make_constraint(obs, b, actual);
      if (c.degenerate || !has_weight(c)) continue;
      if (violation(c) >= c.margin) continue;
      constraints_.push_back(std::move(c));
    }
  }

  void settle() {
    const long long budget_left = cut_budget() - cuts_;
    long long used = 0;
    bool any = true;
    while (any) {
      any = false;
      for (const MistakeConstraint& k : constraints_) {
        if (!has_weight(k) || k.degenerate || violation(k) >= k.margin)
          continue;
        apply_cut(k);
        any = true;
        if (++used >= budget_left)
          throw PredictorFault("ellipsoid cut budget exhausted");
      }
    }
  }

  std::vector<double> net_counts(const Observation& obs) const {
    std::vector<double> counts(n_, 0.0);
    const std::size_t len =
        window_ ? std::min<std::size_t>(obs.ours.size(),
                                        static_cast<std::size_t>(*window_))
                : obs.ours.size();
    for (std::size_t k = obs.ours.size() - len; k < obs.ours.size(); ++k)
      counts[obs.ours[k]] += 1.0;
    return counts;
  }

  // Row of joint-count weights for action i, normalized to sum 1; all
  // zeros when the opponent has not played i.
  std::vector<double> avg_row(const Observation& obs, int i) const {
    std::vector<double> row(n_, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < obs.theirs.size(); ++k) {
      if (obs.theirs[k] != i) continue;
      row[obs.ours[k]] += 1.0;
      total += 1.0;
    }
    if (total > 0.0)
      for (double& v : row) v /= total;
    return row;
  }

  // log sqrt(det(shape)) via Cholesky; also the SPD check.
  double log_det_shape_half() const {
    std::vector<double> a = shape_;
    double acc = 0.0;
    for (int i = 0; i < d_; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = a[static_cast<std::size_t>(i) * d_ + j];
        for (int k = 0; k < j; ++k)
          s -= a[static_cast<std::size_t>(i) * d_ + k] *
               a[static_cast<std::size_t>(j) * d_ + k];
        if (i == j) {
          if (!(s > 0.0))
            throw PredictorFault("ellipsoid shape lost positive definiteness");
          a[static_cast<std::size_t>(i) * d_ + i] = std::sqrt(s);
          acc += std::log(a[static_cast<std::size_t>(i) * d_ + i]);
        } else {
          a[static_cast<std::size_t>(i) * d_ + j] =
              s / a[static_cast<std::size_t>(j) * d_ + j];
        }
      }
    }
    return acc;
  }

  int n_;
  int d_;
  ScoreMode mode_;
  std::optional<int> window_;
  long long horizon_;
  LatticeReadout readout_;
  double margin_ = 0.0;
  std::vector<double> center_;
  std::vector<double> shape_;
  std::vector<MistakeConstraint> constraints_;
  int mistakes_ = 0;
  long long cuts_ = 0;
  double log_volume_ = 0.0;
  std::vector<double> volume_trail_;
};

}  // namespace biasbreaker
