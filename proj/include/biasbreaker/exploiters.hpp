// Payoff-blind exploitation agents. Every agent sees only the Observation
// (action streams and n) and keeps whatever tables it can infer from the
// opponent's behavior alone.
//
// This header must not include game.hpp or opponents.hpp; the agents here
// are on the blind side of the information firewall.

#pragma once

#include <algorithm>
#include <cassert>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "biasbreaker/ellipsoid.hpp"
#include "biasbreaker/observation.hpp"

namespace biasbreaker {

// ---------------------------------------------------------------------------
// Myopic best responder: n+1 learning rounds, then respond one step ahead.

class BeatMyopicBest : public Exploiter {
 public:
  explicit BeatMyopicBest(int n) : n_(n), table_(n, -1) {}

  std::string name() const override { return "beat-mbr"; }
  const std::vector<int>* response_table() const override { return &table_; }

  Decision decide(const Observation& obs) override {
    const int t = obs.rounds();
    // Opponent's action in round u answers our action in round u-1.
    for (int u = 1; u <= std::min(t - 1, n_); ++u)
      table_[obs.ours[u - 1]] = obs.theirs[u];
    if (t < n_) return {t, std::nullopt, {"learn", t + 1}};
    if (t == n_) return {0, std::nullopt, {"learn", t + 1}};
    const int pred = table_[obs.ours[t - 1]];
    return {table_[pred], pred, {"exploit", t - n_}};
  }

 private:
  int n_;
  std::vector<int> table_;
};

// ---------------------------------------------------------------------------
// Gambler's-fallacy opponent: starve one action of plays, then pin the
// opponent to one counter forever.

class BeatGambler : public Exploiter {
 public:
  explicit BeatGambler(int n) : n_(n), table_(n, -1) {}

  std::string name() const override { return "beat-gambler"; }
  const std::vector<int>* response_table() const override { return &table_; }

  Decision decide(const Observation& obs) override {
    const int t = obs.rounds();
    if (t >= n_) {
      br_last_ = obs.theirs[n_ - 1];  // answer to the only unplayed action
      table_[n_ - 1] = br_last_;
    }
    if (t >= 2 * n_) {
      br_counter_ = obs.theirs[2 * n_ - 1];
      table_[br_last_] = br_counter_;
    }
    if (t < n_) return {t, std::nullopt, {"learn-last", t + 1}};
    if (t < 2 * n_) {
      // All actions again, with the recorded answer moved to the back so
      // it is freshly underplayed in round 2n.
      int k = t - n_;
      int a = k;
      if (k == br_last_) a = n_ - 1;
      else if (k == n_ - 1) a = br_last_;
      return {a, std::nullopt, {"learn-counter", k + 1}};
    }
    if (t < 3 * n_ - 1)
      return {t - 2 * n_, std::nullopt, {"starve", t - 2 * n_ + 1}};
    return {br_counter_, br_last_, {"exploit", t - (3 * n_ - 1) + 1}};
  }

 private:
  int n_;
  std::vector<int> table_;
  int br_last_ = -1;
  int br_counter_ = -1;
};

// ---------------------------------------------------------------------------
// Win-stay lose-shift, tie treated as a loss. Learn the shift order, then
// a winning answer per action, then ride the predictable shifts.

class BeatWslsShift : public Exploiter {
 public:
  explicit BeatWslsShift(int n)
      : n_(n), table_(n, -1), seen_(n, false), hold_seen_(n, false) {}

  std::string name() const override { return "beat-wsls-shift"; }
  const std::vector<int>* response_table() const override { return &table_; }

  Decision decide(const Observation& obs) override {
    const int t = obs.rounds();
    if (phase_ == Phase::kOrder) {
      if (t >= 1) note_order(obs.theirs[t - 1]);
      if (static_cast<int>(order_.size()) == n_) {
        phase_ = Phase::kProbe;
        hold_ = 0;
        begin_hold(t);
      } else {
        const int a = succ_ptr_;
        succ_ptr_ = (succ_ptr_ + 1) % n_;
        return {a, std::nullopt, {"order", t + 1}};
      }
    }
    if (phase_ == Phase::kProbe) {
      if (t - 1 >= hold_start_) {
        const int o = obs.theirs[t - 1];
        if (!hold_seen_[o]) {
          hold_seen_[o] = true;
          ++hold_distinct_;
        }
        const bool pair =
            t - 2 >= hold_start_ && obs.theirs[t - 2] == o;
        if (pair || hold_distinct_ == n_) {
          table_[hold_] = o;
          ++hold_;
          if (hold_ == n_) {
            phase_ = Phase::kRide;
            // Opponent just won; it will repeat once more.
            return {table_[o], o, {"strike", 1}};
          }
          begin_hold(t);
        }
      }
      return {hold_, std::nullopt, {"probe", t - hold_start_ + 1}};
    }
    const int pred = successor(obs.theirs[t - 1]);
    return {table_[pred], pred, {"ride", ++ride_round_}};
  }

 private:
  enum class Phase { kOrder, kProbe, kRide };

  void note_order(int o) {
    if (!seen_[o]) {
      seen_[o] = true;
      order_.push_back(o);
    }
  }

  void begin_hold(int round) {
    hold_start_ = round;
    std::fill(hold_seen_.begin(), hold_seen_.end(), false);
    hold_distinct_ = 0;
  }

  int successor(int action) const {
    for (int k = 0; k < n_; ++k)
      if (order_[k] == action) return order_[(k + 1) % n_];
    throw ModelMismatch("action missing from recorded order");
  }

  int n_;
  Phase phase_ = Phase::kOrder;
  std::vector<int> table_;
  std::vector<int> order_;
  std::vector<bool> seen_;
  int succ_ptr_ = 0;
  int hold_ = 0;
  int hold_start_ = 0;
  std::vector<bool> hold_seen_;
  int hold_distinct_ = 0;
  int ride_round_ = 0;
};

// ---------------------------------------------------------------------------
// Win-stay lose-shift, tie treated as a win. The opponent shifts only on a
// loss, so every observed shift hands us a confirmed winning answer.

class BeatWslsStay : public Exploiter {
 public:
  explicit BeatWslsStay(int n) : n_(n), table_(n, -1), seen_(n, false) {}

  std::string name() const override { return "beat-wsls-stay"; }
  const std::vector<int>* response_table() const override { return &table_; }

  Decision decide(const Observation& obs) override {
    const int t = obs.rounds();
    if (phase_ == Phase::kForce) {
      if (t >= 1) note_order(obs.theirs[t - 1]);
      if (t >= 2 && obs.theirs[t - 1] != obs.theirs[t - 2]) {
        table_[obs.theirs[t - 2]] = obs.ours[t - 2];
        ++switches_;
        if (switches_ == n_) {
          phase_ = Phase::kSettle;
          settle_action_ = obs.ours[t - 1];
          settle_base_ = t - 1;
        }
      }
      if (phase_ == Phase::kForce) {
        const int a = succ_ptr_;
        succ_ptr_ = (succ_ptr_ + 1) % n_;
        return {a, std::nullopt, {"force", t + 1}};
      }
    }
    if (phase_ == Phase::kSettle) {
      if (t - 2 >= settle_base_ && obs.theirs[t - 1] == obs.theirs[t - 2]) {
        phase_ = Phase::kRide;
        const int b = obs.theirs[t - 1];
        return {table_[b], b, {"strike", 1}};
      }
      return {settle_action_, std::nullopt, {"settle", t - settle_base_}};
    }
    const int pred = successor(obs.theirs[t - 1]);
    return {table_[pred], pred, {"ride", ++ride_round_}};
  }

 private:
  enum class Phase { kForce, kSettle, kRide };

  void note_order(int o) {
    if (!seen_[o]) {
      seen_[o] = true;
      order_.push_back(o);
    }
  }

  int successor(int action) const {
    for (int k = 0; k < static_cast<int>(order_.size()); ++k)
      if (order_[k] == action) return order_[(k + 1) % order_.size()];
    throw ModelMismatch("action missing from recorded order");
  }

  int n_;
  Phase phase_ = Phase::kForce;
  std::vector<int> table_;
  std::vector<int> order_;
  std::vector<bool> seen_;
  int succ_ptr_ = 0;
  int switches_ = 0;
  int settle_action_ = 0;
  int settle_base_ = 0;
  int ride_round_ = 0;
};

// ---------------------------------------------------------------------------
// Follow-the-leader (net retrospective score). Escalating blocks force a
// winning answer per action; afterwards the ellipsoid estimate predicts.

class BeatFollowLeader : public Exploiter {
 public:
  // window empty: unlimited-history opponent, blocks grow 1, 3, 9, ...
  // window r: limited-history opponent, every block is r rounds.
  BeatFollowLeader(int n, long long horizon,
                   std::optional<int> window = std::nullopt)
      : n_(n),
        window_(window),
        table_(n, -1),
        predictor_(n, ScoreMode::kNet, horizon, window) {
    long long start = 0;
    for (int i = 0; i < n_; ++i) {
      long long len = 1;
      if (window_) {
        len = *window_;
      } else {
        for (int k = 0; k < i; ++k) len *= 3;
      }
      starts_.push_back(start);
      lens_.push_back(len);
      start += len;
    }
    phase1_rounds_ = start + 1;  // one extra play of the last action
  }

  std::string name() const override {
    return window_ ? "beat-ftl:" + std::to_string(*window_) : "beat-ftl";
  }
  const std::vector<int>* response_table() const override { return &table_; }
  const EllipsoidPredictor* predictor() const override { return &predictor_; }
  long long learning_rounds() const { return phase1_rounds_; }

  Decision decide(const Observation& obs) override {
    const long long t = obs.rounds();
    for (int i = 0; i < n_; ++i) {
      const long long rec = starts_[i] + lens_[i];
      if (table_[i] < 0 && t - 1 >= rec) table_[i] = obs.theirs[rec];
    }
    // Feed every newly visible round to the estimator, oldest first;
    // rounds we predicted and got wrong become oracle mistakes.
    while (feedback_cursor_ < t) {
      const long long u = feedback_cursor_++;
      Observation prefix{obs.ours.subspan(0, u), obs.theirs.subspan(0, u),
                         n_};
      if (u >= phase1_rounds_ &&
          pred_log_[u - phase1_rounds_] != obs.theirs[u])
        predictor_.on_mistake(prefix, pred_log_[u - phase1_rounds_],
                              obs.theirs[u]);
      else
        predictor_.observe_round(prefix, obs.theirs[u]);
    }
    if (t < phase1_rounds_) {
      int block = n_ - 1;
      for (int i = 0; i < n_; ++i)
        if (t < starts_[i] + lens_[i]) {
          block = i;
          break;
        }
      return {block, std::nullopt, {"learn", static_cast<int>(t + 1)}};
    }
    const int pred = predictor_.predict(obs);
    pred_log_.push_back(pred);
    return {table_[pred], pred,
            {"predict", static_cast<int>(t - phase1_rounds_ + 1)}};
  }

 private:
  int n_;
  std::optional<int> window_;
  std::vector<int> table_;
  EllipsoidPredictor predictor_;
  std::vector<long long> starts_;
  std::vector<long long> lens_;
  long long phase1_rounds_ = 0;
  long long feedback_cursor_ = 0;
  std::vector<int> pred_log_;
};

// ---------------------------------------------------------------------------
// Highest-average-payoff opponent. Force it off each action in its order
// by out-waiting the action's accumulated score, then predict with the
// average-score ellipsoid.

class BeatHighestAvg : public Exploiter {
 public:
  BeatHighestAvg(int n, long long horizon)
      : n_(n),
        table_(n, -1),
        opp_counts_(n, 0),
        predictor_(n, ScoreMode::kAvg, horizon) {}

  std::string name() const override { return "beat-hap"; }
  const std::vector<int>* response_table() const override { return &table_; }
  const EllipsoidPredictor* predictor() const override { return &predictor_; }

  Decision decide(const Observation& obs) override {
    const long long t = obs.rounds();
    if (phase_ != Phase::kPredict && t >= 1) {
      const int latest = obs.theirs[t - 1];
      ++opp_counts_[latest];
      if (t >= 2 && latest != obs.theirs[t - 2]) {
        table_[obs.theirs[t - 2]] = obs.ours[t - 2];
        ++switches_;
        if (phase_ == Phase::kForce1 && switches_ == n_ - 1)
          phase_ = Phase::kForce2;
        else if (phase_ == Phase::kForce2)
          phase_ = Phase::kPredict;
        // A switch keeps our current action and refreshes its budget.
        // If the opponent keeps fleeing after single rounds, the pointer
        // stays put, so every newcomer meets the same action of ours;
        // that is what keeps some abandoned action above average -1 and
        // the final action forceable.
        played_ = 0;
        cap_ = hold_budget(latest);
      } else if (t >= 2 && played_ >= cap_) {
        // Advance only on a confirmed non-switch round; an exhausted
        // budget still waits out the one-round observation lag.
        pointer_ = (pointer_ + 1) % n_;
        played_ = 0;
        cap_ = hold_budget(latest);
      }
    }
    while (feedback_cursor_ < t) {
      const long long u = feedback_cursor_++;
      Observation prefix{obs.ours.subspan(0, u), obs.theirs.subspan(0, u),
                         n_};
      if (predict_base_ >= 0 && u >= predict_base_ &&
          pred_log_[u - predict_base_] != obs.theirs[u])
        predictor_.on_mistake(prefix, pred_log_[u - predict_base_],
                              obs.theirs[u]);
      else
        predictor_.observe_round(prefix, obs.theirs[u]);
    }
    switch (phase_) {
      case Phase::kForce1:
        ++played_;
        return {pointer_, std::nullopt, {"force1", static_cast<int>(t + 1)}};
      case Phase::kForce2:
        ++played_;
        return {pointer_, std::nullopt, {"force2", ++force2_round_}};
      case Phase::kPredict: {
        if (predict_base_ < 0) predict_base_ = t;
        const int pred = predictor_.predict(obs);
        pred_log_.push_back(pred);
        return {table_[pred], pred,
                {"predict", static_cast<int>(t - predict_base_ + 1)}};
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  enum class Phase { kForce1, kForce2, kPredict };

  // Plays budgeted for the current action: enough to outlast whatever
  // score the opponent's current action has banked.
  long long hold_budget(int opp_current) const {
    const long long c = opp_counts_[opp_current];
    return phase_ == Phase::kForce2 ? 3 * std::max<long long>(1, c) : c + 1;
  }

  int n_;
  Phase phase_ = Phase::kForce1;
  std::vector<int> table_;
  std::vector<long long> opp_counts_;
  EllipsoidPredictor predictor_;
  int pointer_ = 0;
  long long cap_ = 1;
  long long played_ = 0;
  int switches_ = 0;
  int force2_round_ = 0;
  long long predict_base_ = -1;
  long long feedback_cursor_ = 0;
  std::vector<int> pred_log_;
};

// ---------------------------------------------------------------------------
// Generic best-response learner for opponents that answer any action
// played "enough" times in a row.

class GenericBrLearner : public Exploiter {
 public:
  struct ConstantRule {
    int c;
  };
  struct MultipleRule {
    int b;
  };

  GenericBrLearner(int n, ConstantRule rule) : n_(n), table_(n, -1) {
    long long start = 0;
    for (int i = 0; i < n_; ++i) {
      starts_.push_back(start);
      lens_.push_back(rule.c);
      start += rule.c;
    }
    phase1_rounds_ = start + 1;
    label_ = "generic-br:" + std::to_string(rule.c);
  }

  GenericBrLearner(int n, MultipleRule rule) : n_(n), table_(n, -1) {
    long long start = 0;
    for (int i = 0; i < n_; ++i) {
      const long long len = i == 0 ? rule.b : rule.b * start;
      starts_.push_back(start);
      lens_.push_back(len);
      start += len;
    }
    phase1_rounds_ = start + 1;
    label_ = "generic-br:x" + std::to_string(rule.b);
  }

  std::string name() const override { return label_; }
  const std::vector<int>* response_table() const override { return &table_; }
  long long learning_rounds() const { return phase1_rounds_; }

  Decision decide(const Observation& obs) override {
    const long long t = obs.rounds();
    for (int i = 0; i < n_; ++i) {
      const long long rec = starts_[i] + lens_[i];
      if (table_[i] < 0 && t - 1 >= rec) table_[i] = obs.theirs[rec];
    }
    if (t < phase1_rounds_) {
      int block = n_ - 1;
      for (int i = 0; i < n_; ++i)
        if (t < starts_[i] + lens_[i]) {
          block = i;
          break;
        }
      return {block, std::nullopt, {"learn", static_cast<int>(t + 1)}};
    }
    // Answer whatever the opponent just played.
    return {table_[obs.theirs[t - 1]], std::nullopt,
            {"respond", static_cast<int>(t - phase1_rounds_ + 1)}};
  }

 private:
  int n_;
  std::vector<int> table_;
  std::vector<long long> starts_;
  std::vector<long long> lens_;
  long long phase1_rounds_ = 0;
  std::string label_;
};

// ---------------------------------------------------------------------------
// Tie-policy probe for a win-stay lose-shift opponent of unknown variant,
// followed by the matching beater. The probe engineers a round both sides
// play the same action (a guaranteed tie) and reads the opponent's next
// move. Worst case n+1 rounds:
//   - the opponent walks into our fixed action: tie on the spot;
//   - it parks on some b (played twice): we copy b, forcing the tie;
//   - it shows n-1 distinct actions without parking: only its own copy of
//     our action remains, so we copy the freshest action preemptively; if
//     the opponent still moves off it, only tie-shift explains the move.

class WslsAutoExploiter : public Exploiter {
 public:
  explicit WslsAutoExploiter(int n) : n_(n) {}

  std::string name() const override { return "wsls-auto"; }
  const std::vector<int>* response_table() const override {
    return delegate_ ? delegate_->response_table() : nullptr;
  }

  bool policy_known() const { return delegate_ != nullptr; }
  bool policy_is_stay() const { return policy_stay_; }
  int probe_rounds() const { return probe_rounds_; }

  Decision decide(const Observation& obs) override {
    const int t = obs.rounds();
    if (!delegate_) {
      if (reveal_at_ >= 0 && t - 1 >= reveal_at_) {
        resolve(obs.theirs[reveal_at_] == reveal_stay_action_, t);
      } else if (t >= 1 && obs.ours[t - 1] == obs.theirs[t - 1]) {
        // Guaranteed tie last round; the next action tells the policy.
        reveal_at_ = t;
        reveal_stay_action_ = obs.theirs[t - 1];
        return {obs.theirs[t - 1], std::nullopt, {"probe", t + 1}};
      } else if (t >= 2 && obs.theirs[t - 1] == obs.theirs[t - 2] &&
                 obs.ours[t - 1] == obs.ours[t - 2]) {
        // Parked on b under an unchanged matchup: it will repeat; copy it.
        return {obs.theirs[t - 1], std::nullopt, {"probe", t + 1}};
      } else if (t == n_ - 1 && all_ours_base(obs) && distinct_theirs(obs) == t) {
        // Deep walk: every action except ours shown once. Copy the
        // freshest; if the opponent still leaves it for our base action,
        // that departure is only consistent with shift-on-tie.
        preempted_ = true;
        return {obs.theirs[t - 1], std::nullopt, {"probe", t + 1}};
      } else if (preempted_ && t == n_ && reveal_at_ < 0) {
        if (obs.theirs[t - 1] == base_)
          resolve(false, t);
        else
          throw ModelMismatch("probe: behavior fits neither tie policy");
      } else if (t > n_) {
        throw ModelMismatch("probe: behavior fits neither tie policy");
      }
      if (!delegate_) return {base_, std::nullopt, {"probe", t + 1}};
    }
    Observation rest{obs.ours.subspan(probe_rounds_),
                     obs.theirs.subspan(probe_rounds_), obs.n};
    return delegate_->decide(rest);
  }

 private:
  void resolve(bool stay, int now) {
    policy_stay_ = stay;
    probe_rounds_ = now;
    if (stay)
      delegate_ = std::make_unique<BeatWslsStay>(n_);
    else
      delegate_ = std::make_unique<BeatWslsShift>(n_);
  }

  bool all_ours_base(const Observation& obs) const {
    for (int a : obs.ours)
      if (a != base_) return false;
    return true;
  }

  int distinct_theirs(const Observation& obs) const {
    std::vector<bool> seen(n_, false);
    int d = 0;
    for (int o : obs.theirs)
      if (o != base_ && !seen[o]) {
        seen[o] = true;
        ++d;
      }
    return d;
  }

  int n_;
  int base_ = 0;
  int reveal_at_ = -1;
  int reveal_stay_action_ = -1;
  bool preempted_ = false;
  bool policy_stay_ = false;
  int probe_rounds_ = -1;
  std::unique_ptr<Exploiter> delegate_;
};

}  // namespace biasbreaker
