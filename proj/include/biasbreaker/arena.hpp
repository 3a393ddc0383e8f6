// Match runner and referee. Enforces the information model (the opponent
// sees everything, the exploiter sees actions only), keeps the full
// per-round transcript, checks theorem-shaped bounds, and audits learned
// tables and predictor feasibility against the ground truth the exploiter
// never saw.

#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "biasbreaker/ellipsoid.hpp"
#include "biasbreaker/exploiters.hpp"
#include "biasbreaker/game.hpp"
#include "biasbreaker/observation.hpp"
#include "biasbreaker/opponents.hpp"

namespace biasbreaker {

struct TranscriptRow {
  int round = 0;  // 1-based
  int ours = 0;
  int theirs = 0;
  int payoff = 0;
  std::string phase;
  std::optional<int> predicted;
  bool prediction_correct = false;
};

struct AuditResult {
  bool checked = false;
  bool ok = true;
  std::string detail;
};

struct MatchTranscript {
  int n = 0;
  int rounds_requested = 0;
  std::vector<TranscriptRow> rows;
  long long wins = 0, ties = 0, losses = 0;
  bool aborted = false;
  std::string fault;
  std::string predictor_diag;  // estimator dump, when the agent ran one
  AuditResult table_audit;
  AuditResult feasibility_audit;

  long long nonwins() const { return ties + losses; }

  long long nonwins_at_or_after(int round_1based) const {
    long long k = 0;
    for (const TranscriptRow& r : rows)
      if (r.round >= round_1based && r.payoff != 1) ++k;
    return k;
  }

  long long nonwins_between(int lo, int hi) const {
    long long k = 0;
    for (const TranscriptRow& r : rows)
      if (r.round >= lo && r.round <= hi && r.payoff != 1) ++k;
    return k;
  }
};

/// Runs a full match. The exploiter's observation is rebuilt each round
/// from plain action vectors; nothing payoff-shaped crosses that line.
inline MatchTranscript run_match(const GameMatrix& game,
                                 const OpponentSpec& opp_spec,
                                 Exploiter& exploiter, int rounds) {
  MatchTranscript tr;
  tr.n = game.n();
  tr.rounds_requested = rounds;
  OpponentSession opp(opp_spec, game);
  std::vector<int> ours, theirs;
  ours.reserve(rounds);
  theirs.reserve(rounds);
  for (int t = 0; t < rounds; ++t) {
    Observation obs{std::span<const int>(ours), std::span<const int>(theirs),
                    game.n()};
    Decision dec;
    try {
      dec = exploiter.decide(obs);
    } catch (const std::exception& e) {
      tr.aborted = true;
      tr.fault = e.what();
      break;
    }
    if (dec.action < 0 || dec.action >= game.n())
      throw std::logic_error("exploiter produced an out-of-range action");
    const int their_action = opp.choose();
    const int pay = game.payoff(dec.action, their_action);
    // zero-sum bookkeeping, every round
    if (pay + game.payoff(their_action, dec.action) != 0)
      throw std::logic_error("zero-sum bookkeeping violated");
    TranscriptRow row;
    row.round = t + 1;
    row.ours = dec.action;
    row.theirs = their_action;
    row.payoff = pay;
    row.phase = dec.phase.tag;
    row.predicted = dec.predicted;
    row.prediction_correct = dec.predicted && *dec.predicted == their_action;
    tr.rows.push_back(std::move(row));
    if (pay > 0) ++tr.wins;
    else if (pay == 0) ++tr.ties;
    else ++tr.losses;
    ours.push_back(dec.action);
    theirs.push_back(their_action);
    opp.observe(dec.action, their_action);
  }
  if (const EllipsoidPredictor* pred = exploiter.predictor()) {
    std::ostringstream diag;
    diag << "estimator: mistakes=" << pred->mistake_count()
         << " cuts=" << pred->cut_count()
         << " log_volume=" << pred->log_volume() << " center=[";
    const std::vector<double>& c = pred->center();
    for (std::size_t k = 0; k < c.size(); ++k)
      diag << (k ? "," : "") << std::setprecision(4) << c[k];
    diag << "]";
    tr.predictor_diag = diag.str();
  }
  return tr;
}

// --------------------------------------------------------------------------
// Ground-truth audits. These run on the referee's side of the firewall.

/// Every learned (action -> response) entry must actually win.
inline AuditResult audit_response_table(const Exploiter& ex,
                                        const GameMatrix& game) {
  AuditResult res;
  const std::vector<int>* table = ex.response_table();
  if (!table) return res;
  res.checked = true;
  for (int a = 0; a < game.n(); ++a) {
    const int b = (*table)[a];
    if (b < 0) continue;
    if (game.payoff(b, a) != 1) {
      res.ok = false;
      res.detail = "entry " + std::to_string(a) + " -> " + std::to_string(b) +
                   " does not win";
      return res;
    }
  }
  return res;
}

/// The true matrix, nudged by the rank perturbation that realizes the
/// opponent's tie-breaking, must satisfy every constraint the predictor
/// emitted. r is the opponent's comparison span: the window if it has one,
/// otherwise the match length.
inline AuditResult audit_predictor_feasibility(const EllipsoidPredictor& pred,
                                               const GameMatrix& game,
                                               const ActionOrdering& omega,
                                               long long rounds) {
  AuditResult res;
  res.checked = true;
  const int n = game.n();
  const double span = pred.window()
                          ? static_cast<double>(*pred.window())
                          : static_cast<double>(rounds);
  std::vector<double> ghost(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double rank = static_cast<double>(omega.rank_of(i) + 1);
    double delta = 0.0;
    if (pred.mode() == ScoreMode::kNet)
      delta = 1.0 / (rank * span);
    else
      delta = 1.0 / (rank * span * span);
    for (int j = 0; j < n; ++j)
      ghost[i * n + j] = static_cast<double>(game.payoff(i, j)) + delta;
  }
  for (std::size_t k = 0; k < pred.constraints().size(); ++k) {
    const MistakeConstraint& c = pred.constraints()[k];
    if (c.degenerate) continue;
    double v = 0.0;
    for (std::size_t idx = 0; idx < ghost.size(); ++idx)
      v += c.weights[idx] * ghost[idx];
    if (v < c.margin) {
      res.ok = false;
      res.detail = "constraint " + std::to_string(k) +
                   " infeasible at perturbed truth (value " +
                   std::to_string(v) + " < margin " + std::to_string(c.margin) +
                   ")";
      return res;
    }
  }
  return res;
}

// --------------------------------------------------------------------------
// Bound verification.

struct BoundSpec {
  enum class Kind { kSuffixAllWins, kTotalNonwinsLe, kPhaseCoupled };
  Kind kind = Kind::kTotalNonwinsLe;
  long long value = 0;       // from_round (1-based) or cap
  std::string phase_tag;     // kPhaseCoupled: rounds with this tag
};

struct BoundReport {
  bool pass = true;
  int first_violating_round = 0;
  std::string detail;
};

inline BoundReport verify_bound(const MatchTranscript& tr,
                                const BoundSpec& bound) {
  BoundReport rep;
  switch (bound.kind) {
    case BoundSpec::Kind::kSuffixAllWins:
      for (const TranscriptRow& r : tr.rows)
        if (r.round >= bound.value && r.payoff != 1) {
          rep.pass = false;
          rep.first_violating_round = r.round;
          rep.detail = "non-win at round " + std::to_string(r.round) +
                       " (all rounds from " + std::to_string(bound.value) +
                       " must win)";
          return rep;
        }
      return rep;
    case BoundSpec::Kind::kTotalNonwinsLe: {
      long long seen = 0;
      for (const TranscriptRow& r : tr.rows)
        if (r.payoff != 1 && ++seen > bound.value) {
          rep.pass = false;
          rep.first_violating_round = r.round;
          rep.detail = "non-wins exceed " + std::to_string(bound.value) +
                       " at round " + std::to_string(r.round);
          return rep;
        }
      return rep;
    }
    case BoundSpec::Kind::kPhaseCoupled:
      for (const TranscriptRow& r : tr.rows) {
        if (r.phase != bound.phase_tag || r.payoff == 1) continue;
        if (!r.predicted || r.prediction_correct) {
          rep.pass = false;
          rep.first_violating_round = r.round;
          rep.detail = "unflagged non-win in phase '" + bound.phase_tag +
                       "' at round " + std::to_string(r.round);
          return rep;
        }
      }
      return rep;
  }
  return rep;
}

// --------------------------------------------------------------------------
// Transcript formats. CSV columns are a stability surface; text is not.

inline std::string transcript_to_csv(const MatchTranscript& tr) {
  std::ostringstream out;
  out << "round,our_action,opp_action,payoff,phase,predicted,correct\n";
  for (const TranscriptRow& r : tr.rows) {
    out << r.round << ',' << r.ours << ',' << r.theirs << ',' << r.payoff
        << ',' << r.phase << ',';
    if (r.predicted) out << *r.predicted;
    out << ',';
    if (r.predicted) out << (r.prediction_correct ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

inline std::string transcript_to_text(const MatchTranscript& tr,
                                      const GameMatrix& game) {
  std::ostringstream out;
  for (const TranscriptRow& r : tr.rows) {
    out << std::setw(5) << r.round << "  we=" << game.action_label(r.ours)
        << " opp=" << game.action_label(r.theirs) << " payoff=" << std::showpos
        << r.payoff << std::noshowpos << "  [" << r.phase << "]";
    if (r.predicted) {
      out << " predicted=" << game.action_label(*r.predicted)
          << (r.prediction_correct ? " hit" : " miss");
    }
    out << '\n';
  }
  out << "wins=" << tr.wins << " ties=" << tr.ties << " losses=" << tr.losses
      << '\n';
  if (!tr.predictor_diag.empty()) out << tr.predictor_diag << '\n';
  if (tr.aborted) out << "aborted: " << tr.fault << '\n';
  return out.str();
}

/// Parse the CSV produced above; used by replay checks.
inline MatchTranscript transcript_from_csv(const std::string& text) {
  MatchTranscript tr;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "round,our_action,opp_action,payoff,phase,predicted,correct")
    throw std::runtime_error("bad transcript header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TranscriptRow r;
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    r.round = std::stoi(field);
    std::getline(ls, field, ',');
    r.ours = std::stoi(field);
    std::getline(ls, field, ',');
    r.theirs = std::stoi(field);
    std::getline(ls, field, ',');
    r.payoff = std::stoi(field);
    std::getline(ls, r.phase, ',');
    std::getline(ls, field, ',');
    if (!field.empty()) r.predicted = std::stoi(field);
    std::getline(ls, field, ',');
    if (!field.empty()) r.prediction_correct = field == "1";
    if (r.payoff > 0) ++tr.wins;
    else if (r.payoff == 0) ++tr.ties;
    else ++tr.losses;
    tr.rows.push_back(std::move(r));
  }
  tr.rounds_requested = static_cast<int>(tr.rows.size());
  return tr;
}

/// Replays the transcript's exploiter actions against a fresh opponent and
/// checks the opponent's actions reproduce exactly.
inline bool replay_matches(const MatchTranscript& tr, const GameMatrix& game,
                           const OpponentSpec& opp_spec) {
  OpponentSession opp(opp_spec, game);
  for (const TranscriptRow& r : tr.rows) {
    if (opp.choose() != r.theirs) return false;
    opp.observe(r.ours, r.theirs);
  }
  return true;
}

// --------------------------------------------------------------------------
// Small deterministic parallel map; BIASBREAKER_THREADS caps the pool.

inline int thread_cap() {
  if (const char* env = std::getenv("BIASBREAKER_THREADS")) {
    const int k = std::atoi(env);
    if (k >= 1) return k;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename Result>
std::vector<Result> parallel_map(int count,
                                 const std::function<Result(int)>& fn) {
  std::vector<Result> results(count);
  const int workers = std::min(count, thread_cap());
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        results[i] = fn(i);
    });
  for (std::thread& th : pool) th.join();
  return results;
}

}  // namespace biasbreaker
