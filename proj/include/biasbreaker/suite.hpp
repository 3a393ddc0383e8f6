// The built-in verification plan. One item per guarantee the engine makes:
// per-algorithm win bounds at desk scale, predictor properties, the
// consistency counterexample, and infrastructure checks. `verify --suite
// default` and the acceptance binary both run exactly this table.

#pragma once

#include <cmath>
#include <fstream>
#include <set>

#include "biasbreaker/arena.hpp"
#include "biasbreaker/game.hpp"
#include "biasbreaker/halving.hpp"
#include "biasbreaker/lex_baseline.hpp"
#include "biasbreaker/specs.hpp"

namespace biasbreaker {

struct SuiteOptions {
  int trials = 20;
  std::uint32_t base_seed = 0;
  int n_lo = 3;
  int n_hi = 8;
};

struct ItemResult {
  std::string id;
  std::string name;
  bool pass = true;
  std::string detail;  // first failure
};

/// Plays a fixed action script; drives predictor checks and twin matches.
class ScriptedExploiter : public Exploiter {
 public:
  explicit ScriptedExploiter(std::vector<int> script)
      : script_(std::move(script)) {}

  static ScriptedExploiter random_script(int n, int rounds,
                                         std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<int> s(rounds);
    for (int& a : s) a = static_cast<int>(uniform_below(rng, n));
    return ScriptedExploiter(std::move(s));
  }

  std::string name() const override { return "script"; }

  Decision decide(const Observation& obs) override {
    const int t = obs.rounds();
    if (t >= static_cast<int>(script_.size()))
      throw std::logic_error("script exhausted");
    return {script_[t], std::nullopt, {"script", t + 1}};
  }

  const std::vector<int>& script() const { return script_; }

 private:
  std::vector<int> script_;
};

namespace suite_detail {

inline GameMatrix game_for(int n, std::uint32_t seed) {
  return generate_permissible(n, seed);
}

inline ActionOrdering omega_for(int n, std::uint32_t seed) {
  return ActionOrdering::random(n, seed ^ 0x9E3779B9u);
}

struct Instance {
  int n;
  std::uint32_t seed;
};

inline std::vector<Instance> instances(const SuiteOptions& opt, int lo,
                                       int hi) {
  std::vector<Instance> out;
  for (int n = std::max(lo, opt.n_lo); n <= std::min(hi, opt.n_hi); ++n)
    for (int s = 0; s < opt.trials; ++s)
      out.push_back({n, opt.base_seed + static_cast<std::uint32_t>(s)});
  return out;
}

inline void merge(ItemResult& item, bool ok, const std::string& detail) {
  if (!ok && item.pass) {
    item.pass = false;
    item.detail = detail;
  }
}

inline std::string tag(const Instance& in) {
  return "n=" + std::to_string(in.n) + " seed=" + std::to_string(in.seed);
}

// Failed rows leave their transcript behind for inspection.
inline std::pair<bool, std::string> fail_dump(const MatchTranscript& tr,
                                              const std::string& where,
                                              const std::string& detail) {
  std::string name = "verify_fail_" + where + ".csv";
  for (char& ch : name)
    if (ch == ' ' || ch == '=' || ch == ':') ch = '_';
  std::ofstream out(name);
  if (out) out << transcript_to_csv(tr);
  return {false, where + ": " + detail};
}

}  // namespace suite_detail

// ---------------------------------------------------------------------------

inline ItemResult check_myopic_best(const SuiteOptions& opt) {
  using namespace suite_detail;
  ItemResult item{"1", "myopic best responder: all wins from round n+2", true,
                  ""};
  const auto ins = instances(opt, 3, 8);
  auto results = parallel_map<std::pair<bool, std::string>>(
      static_cast<int>(ins.size()), [&](int i) -> std::pair<bool, std::string> {
        const Instance in = ins[i];
        GameMatrix g = game_for(in.n, in.seed);
        OpponentSpec opp{OpponentKind::kMyopicBest, TiePolicy::kShift,
                         std::nullopt, omega_for(in.n, in.seed)};
        BeatMyopicBest ex(in.n);
        MatchTranscript tr = run_match(g, opp, ex, 1000);
        BoundReport rep = verify_bound(
            tr, {BoundSpec::Kind::kSuffixAllWins, in.n + 2, ""});
        if (!rep.pass) return fail_dump(tr, "c1 " + tag(in), rep.detail);
        AuditResult audit = audit_response_table(ex, g);
        if (!audit.ok) return fail_dump(tr, "c1 " + tag(in), audit.detail);
        return {true, ""};
      });
  for (const auto& [ok, detail] : results) merge(item, ok, detail);
  return item;
}

inline ItemResult check_gambler(const SuiteOptions& opt) {
  using namespace suite_detail;
  ItemResult item{"2", "gambler's fallacy: all wins from round 3n", true, ""};
  const auto ins = instances(opt, 3, 8);
  auto results = parallel_map<std::pair<bool, std::string>>(
      static_cast<int>(ins.size()), [&](int i) -> std::pair<bool, std::string> {
        const Instance in = ins[i];
        GameMatrix g = game_for(in.n, in.seed);
        OpponentSpec opp{OpponentKind::kGambler, TiePolicy::kShift,
                         std::nullopt, omega_for(in.n, in.seed)};
        BeatGambler ex(in.n);
        MatchTranscript tr = run_match(g, opp, ex, 1000);
        BoundReport rep =
            verify_bound(tr, {BoundSpec::Kind::kSuffixAllWins, 3 * in.n, ""});
        if (!rep.pass) return fail_dump(tr, "c2 " + tag(in), rep.detail);
        AuditResult audit = audit_response_table(ex, g);
        if (!audit.ok) return fail_dump(tr, "c2 " + tag(in), audit.detail);
        return {true, ""};
      });
  for (const auto& [ok, detail] : results) merge(item, ok, detail);
  return item;
}

inline ItemResult check_wsls(const SuiteOptions& opt, TiePolicy policy) {
  using namespace suite_detail;
  const bool shift = policy == TiePolicy::kShift;
  ItemResult item{shift ? "3" : "4",
                  shift ? "wsls tie-shift: non-wins <= 2n^2-2n+1"
                        : "wsls tie-stay: non-wins <= n^2-n+2",
                  true, ""};
  const auto ins = instances(opt, 3, 8);
  auto results = parallel_map<std::pair<bool, std::string>>(
      static_cast<int>(ins.size()), [&](int i) -> std::pair<bool, std::string> {
        const Instance in = ins[i];
        GameMatrix g = game_for(in.n, in.seed);
        OpponentSpec opp{OpponentKind::kWsls, policy, std::nullopt,
                         omega_for(in.n, in.seed)};
        std::unique_ptr<Exploiter> ex;
        if (policy == TiePolicy::kShift)
          ex = std::make_unique<BeatWslsShift>(in.n);
        else
          ex = std::make_unique<BeatWslsStay>(in.n);
        MatchTranscript tr = run_match(g, opp, *ex, 1000);
        const long long cap = policy == TiePolicy::kShift
                                  ? 2LL * in.n * in.n - 2 * in.n + 1
                                  : 1LL * in.n * in.n - in.n + 2;
        BoundReport rep =
            verify_bound(tr, {BoundSpec::Kind::kTotalNonwinsLe, cap, ""});
        if (!rep.pass)
          return fail_dump(tr, (shift ? "c3 " : "c4 ") + tag(in), rep.detail);
        AuditResult audit = audit_response_table(*ex, g);
        if (!audit.ok)
          return fail_dump(tr, (shift ? "c3 " : "c4 ") + tag(in), audit.detail);
        return {true, ""};
      });
  for (const auto& [ok, detail] : results) merge(item, ok, detail);
  return item;
}

namespace suite_detail {

// Shared by the two follow-the-leader items and the averaging item.
inline std::pair<bool, std::string> predictor_match_checks(
    const MatchTranscript& tr, const Exploiter& ex,
    const EllipsoidPredictor& pred, const GameMatrix& g,
    const ActionOrdering& omega, long long phase1_expected,
    const char* learn_tag, int rounds) {
  if (tr.aborted) return {false, "match aborted: " + tr.fault};
  long long learn_rounds = 0;
  for (const TranscriptRow& r : tr.rows)
    if (r.phase == learn_tag ||
        (std::string(learn_tag) == "force" &&
         (r.phase == "force1" || r.phase == "force2")))
      ++learn_rounds;
  if (phase1_expected >= 0 && learn_rounds != phase1_expected)
    return {false, "learning phase lasted " + std::to_string(learn_rounds) +
                       " rounds, expected " + std::to_string(phase1_expected)};
  BoundReport coupled =
      verify_bound(tr, {BoundSpec::Kind::kPhaseCoupled, 0, "predict"});
  if (!coupled.pass) return {false, coupled.detail};
  const long long late = tr.nonwins_between(rounds / 2 + 1, rounds);
  if (late != 0)
    return {false, "non-wins in settled half: " + std::to_string(late)};
  // Volume must fall by the central-cut factor at every mistake.
  const double d = static_cast<double>(g.n()) * g.n();
  const double per_mistake = -1.0 / (2.0 * (d + 1.0));
  const auto& trail = pred.volume_trail();
  for (std::size_t k = 1; k < trail.size(); ++k)
    if (!(trail[k] - trail[k - 1] <= per_mistake + 1e-9))
      return {false, "volume ratio bound violated at mistake " +
                         std::to_string(k)};
  AuditResult tbl = audit_response_table(ex, g);
  if (!tbl.ok) return {false, tbl.detail};
  AuditResult feas = audit_predictor_feasibility(pred, g, omega, rounds);
  if (!feas.ok) return {false, feas.detail};
  return {true, ""};
}

}  // namespace suite_detail

inline ItemResult check_follow_leader(const SuiteOptions& opt) {
  using namespace suite_detail;
  ItemResult item{"5", "follow-the-leader: escalating blocks + estimator",
                  true, ""};
  const auto ins = instances(opt, 3, 5);
  const int rounds = 3000;
  auto results = parallel_map<std::pair<bool, std::string>>(
      static_cast<int>(ins.size()), [&](int i) -> std::pair<bool, std::string> {
        const Instance in = ins[i];
        GameMatrix g = game_for(in.n, in.seed);
        ActionOrdering omega = omega_for(in.n, in.seed);
        OpponentSpec opp{OpponentKind::kFollowLeader, TiePolicy::kShift,
                         std::nullopt, omega};
        BeatFollowLeader ex(in.n, rounds);
        MatchTranscript tr = run_match(g, opp, ex, rounds);
        long long phase1 = 1;
        for (int k = 0, p = 1; k < in.n; ++k, p *= 3) phase1 += p;
        auto [ok, detail] = predictor_match_checks(
            tr, ex, *ex.predictor(), g, omega, phase1, "learn", rounds);
        if (!ok) return fail_dump(tr, "c5 " + tag(in), detail);
        return {true, ""};
      });
  for (const auto& [ok, detail] : results) merge(item, ok, detail);
  return item;
}

inline ItemResult check_follow_leader_limited(const SuiteOptions& opt) {
  using namespace suite_detail;
  ItemResult item{"6", "limited-history follow-the-leader: n*r+1 blocks",
                  true, ""};
  std::vector<std::pair<Instance, int>> jobs;
  for (const Instance& in : instances(opt, 3, 5))
    for (int r : {1, 3, 5}) jobs.push_back({in, r});
  const int rounds = 3000;
  auto results = parallel_map<std::pair<bool, std::string>>(
      static_cast<int>(jobs.size()), [&](int i) -> std::pair<bool, std::string> {
        const auto [in, r] = jobs[i];
        GameMatrix g = game_for(in.n, in.seed);
        ActionOrdering omega = omega_for(in.n, in.seed);
        OpponentSpec opp{OpponentKind::kFollowLeader, TiePolicy::kShift, r,
                         omega};
        BeatFollowLeader ex(in.n, rounds, r);
        MatchTranscript tr = run_match(g, opp, ex, rounds);
        auto [ok, detail] = predictor_match_checks(
            tr, ex, *ex.predictor(), g, omega, 1LL * in.n * r + 1, "learn",
            rounds);
        if (!ok)
          return fail_dump(tr, "c6 " + tag(in) + " r" + std::to_string(r),
                           detail);
        return {true, ""};
      });
  for (const auto& [ok, detail] : results) merge(item, ok, detail);
  return item;
}

inline ItemResult check_highest_avg(const SuiteOptions& opt) {
  using namespace suite_detail;
  ItemResult item{"7", "highest average payoff: forced walk + estimator",
                  true, ""};
  const auto ins = instances(opt, 3, 4);
  const int rounds = 3000;
  auto results = parallel_map<std::pair<bool, std::string>>(
      static_cast<int>(ins.size()), [&](int i) -> std::pair<bool, std::string> {
        const Instance in = ins[i];
        GameMatrix g = game_for(in.n, in.seed);
        ActionOrdering omega = omega_for(in.n, in.seed);
        OpponentSpec opp{OpponentKind::kHighestAvg, TiePolicy::kShift,
                         std::nullopt, omega};
        BeatHighestAvg ex(in.n, rounds);
        MatchTranscript tr = run_match(g, opp, ex, rounds);
        // The opponent must walk through its tie order during learning.
        std::vector<int> adopted;
        for (const TranscriptRow& r : tr.rows) {
          if (r.phase != "force1" && r.phase != "force2") break;
          if (std::find(adopted.begin(), adopted.end(), r.theirs) ==
              adopted.end())
            adopted.push_back(r.theirs);
        }
        if (adopted != omega.order())
          return fail_dump(tr, "c7 " + tag(in),
                           "learning-phase switch order is not the "
                           "opponent's tie order");
        auto [ok, detail] = predictor_match_checks(
            tr, ex, *ex.predictor(), g, omega, -1, "force", rounds);
        if (!ok) return fail_dump(tr, "c7 " + tag(in), detail);
        return {true, ""};
      });
  for (const auto& [ok, detail] : results) merge(item, ok, detail);
  return item;
}

inline ItemResult check_halving(const SuiteOptions& opt) {
  using namespace suite_detail;
  ItemResult item{"8", "halving predictor: log2 mistake cap, truth survives",
                  true, ""};
  struct Job {
    std::vector<StrategyFamilyEntry> family;
    StrategyFamilyEntry truth;
    std::uint32_t seed;
  };
  const StrategyFamilyEntry mbr{OpponentKind::kMyopicBest, TiePolicy::kShift,
                                std::nullopt};
  const StrategyFamilyEntry gam{OpponentKind::kGambler, TiePolicy::kShift,
                                std::nullopt};
  std::vector<Job> jobs;
  const int per = std::max(1, opt.trials / 2);
  for (int s = 0; s < per; ++s) {
    const std::uint32_t seed = opt.base_seed + static_cast<std::uint32_t>(s);
    jobs.push_back({{mbr}, mbr, seed});
    jobs.push_back({{gam}, gam, seed});
    jobs.push_back({{mbr, gam}, mbr, seed});
    jobs.push_back({{mbr, gam}, gam, seed});
  }
  auto results = parallel_map<std::pair<bool, std::string>>(
      static_cast<int>(jobs.size()), [&](int i) -> std::pair<bool, std::string> {
        const Job& job = jobs[i];
        const int n = 3;
        GameMatrix g = game_for(n, job.seed);
        ActionOrdering omega = omega_for(n, job.seed);
        HalvingSpace space(job.family, n);
        const long long cap = static_cast<long long>(
            std::ceil(std::log2(static_cast<double>(space.size()))));
        OpponentSpec opp{job.truth.kind, job.truth.tie, job.truth.window,
                         omega};
        OpponentSession session(opp, g);
        ScriptedExploiter script =
            ScriptedExploiter::random_script(n, 500, job.seed * 7919u + 17u);
        History hist;
        long long mistakes = 0;
        for (int t = 0; t < 500; ++t) {
          const int guess = space.predict(hist);
          const int actual = session.choose();
          if (guess != actual) ++mistakes;
          space.update(hist, actual);
          if (!space.contains(job.truth, g, omega))
            return {false, "true triple eliminated at round " +
                               std::to_string(t + 1)};
          const int ours = script.script()[t];
          hist.push_back({ours, actual});
          session.observe(ours, actual);
        }
        if (mistakes > cap)
          return {false, "mistakes " + std::to_string(mistakes) +
                             " exceed cap " + std::to_string(cap)};
        return {true, ""};
      });
  for (const auto& [ok, detail] : results) merge(item, ok, detail);
  return item;
}

/// The transcript criterion 9 freezes: 60 rounds of the six-action
/// counterexample, cycling (S',R), (P',S), (R',P) with payoffs 0,-1,-1.
inline std::string counterexample_expected_csv(int rounds = 60) {
  std::ostringstream out;
  out << "round,our_action,opp_action,payoff,phase,predicted,correct\n";
  const int ours[3] = {5, 4, 3};
  const int theirs[3] = {0, 2, 1};
  const int pay[3] = {0, -1, -1};
  for (int t = 0; t < rounds; ++t) {
    const int k = t % 3;
    out << t + 1 << ',' << ours[k] << ',' << theirs[k] << ',' << pay[k]
        << ",consistent," << theirs[k] << ",1\n";
  }
  return out.str();
}

inline MatchTranscript run_counterexample(int rounds = 60) {
  GameMatrix truth = m_star_game();
  OpponentSpec opp{OpponentKind::kMyopicBest, TiePolicy::kShift, std::nullopt,
                   ActionOrdering::identity(6)};
  LexBaseline ex = LexBaseline::counterexample_pair();
  return run_match(truth, opp, ex, rounds);
}

inline ItemResult check_counterexample(const SuiteOptions&) {
  ItemResult item{"9", "consistent-hypothesis baseline loses the cycle", true,
                  ""};
  MatchTranscript tr = run_counterexample(60);
  const std::string got = transcript_to_csv(tr);
  const std::string want = counterexample_expected_csv(60);
  if (got != want) {
    item.pass = false;
    item.detail = "transcript differs from the frozen counterexample cycle";
  }
  return item;
}

inline ItemResult check_indistinguishable(const SuiteOptions& opt) {
  using namespace suite_detail;
  ItemResult item{"10", "best/worst responder twins produce equal streams",
                  true, ""};
  auto results = parallel_map<std::pair<bool, std::string>>(
      10, [&](int k) -> std::pair<bool, std::string> {
        const std::uint32_t seed =
            opt.base_seed + static_cast<std::uint32_t>(k);
        ActionOrdering omega = omega_for(3, seed);
        GameMatrix rps = rps_game();
        GameMatrix rev = rps.reversed();
        ScriptedExploiter a =
            ScriptedExploiter::random_script(3, 200, seed * 31 + 5);
        ScriptedExploiter b(a.script());
        OpponentSpec best{OpponentKind::kMyopicBest, TiePolicy::kShift,
                          std::nullopt, omega};
        OpponentSpec worst{OpponentKind::kMyopicWorst, TiePolicy::kShift,
                           std::nullopt, omega};
        MatchTranscript t1 = run_match(rps, best, a, 200);
        MatchTranscript t2 = run_match(rev, worst, b, 200);
        for (int t = 0; t < 200; ++t)
          if (t1.rows[t].theirs != t2.rows[t].theirs)
            return {false, "streams diverge at round " + std::to_string(t + 1) +
                               " (script " + std::to_string(k) + ")"};
        return {true, ""};
      });
  for (const auto& [ok, detail] : results) merge(item, ok, detail);
  return item;
}

inline ItemResult check_generic_learner(const SuiteOptions& opt) {
  using namespace suite_detail;
  ItemResult item{"11", "generic learner: c-repeat rule masters any action",
                  true, ""};
  std::vector<std::pair<Instance, int>> jobs;
  for (const Instance& in : instances(opt, 3, 8))
    for (int r : {1, 3, 5}) jobs.push_back({in, r});
  auto results = parallel_map<std::pair<bool, std::string>>(
      static_cast<int>(jobs.size()), [&](int i) -> std::pair<bool, std::string> {
        const auto [in, r] = jobs[i];
        GameMatrix g = game_for(in.n, in.seed);
        OpponentSpec opp{OpponentKind::kFollowLeader, TiePolicy::kShift, r,
                         omega_for(in.n, in.seed)};
        GenericBrLearner ex(in.n, GenericBrLearner::ConstantRule{r});
        const long long learn = ex.learning_rounds();
        MatchTranscript tr =
            run_match(g, opp, ex, static_cast<int>(learn) + 50);
        const std::vector<int>& table = *ex.response_table();
        for (int a = 0; a < in.n; ++a)
          if (table[a] < 0)
            return {false, tag(in) + ": unlearned entry " + std::to_string(a)};
        AuditResult audit = audit_response_table(ex, g);
        if (!audit.ok) return {false, tag(in) + ": " + audit.detail};
        const long long cap = 1LL * r * in.n + 1;
        if (tr.nonwins_between(1, static_cast<int>(learn)) > cap)
          return {false, tag(in) + ": learning-phase non-wins exceed " +
                             std::to_string(cap)};
        return {true, ""};
      });
  for (const auto& [ok, detail] : results) merge(item, ok, detail);
  return item;
}

inline ItemResult check_wsls_auto(const SuiteOptions& opt) {
  using namespace suite_detail;
  ItemResult item{"12", "tie-policy probe + delegated beater", true, ""};
  std::vector<std::pair<Instance, TiePolicy>> jobs;
  for (const Instance& in : instances(opt, 3, 8)) {
    jobs.push_back({in, TiePolicy::kShift});
    jobs.push_back({in, TiePolicy::kStay});
  }
  auto results = parallel_map<std::pair<bool, std::string>>(
      static_cast<int>(jobs.size()), [&](int i) -> std::pair<bool, std::string> {
        const auto [in, policy] = jobs[i];
        GameMatrix g = game_for(in.n, in.seed);
        OpponentSpec opp{OpponentKind::kWsls, policy, std::nullopt,
                         omega_for(in.n, in.seed)};
        WslsAutoExploiter ex(in.n);
        MatchTranscript tr = run_match(g, opp, ex, 1000);
        if (tr.aborted) return {false, tag(in) + ": " + tr.fault};
        if (!ex.policy_known())
          return {false, tag(in) + ": probe never resolved"};
        if (ex.policy_is_stay() != (policy == TiePolicy::kStay))
          return {false, tag(in) + ": probe returned the wrong policy"};
        if (ex.probe_rounds() > in.n + 1)
          return fail_dump(tr, "c12 " + tag(in),
                           "probe used " + std::to_string(ex.probe_rounds()) +
                               " rounds");
        const long long base = policy == TiePolicy::kShift
                                   ? 2LL * in.n * in.n - 2 * in.n + 1
                                   : 1LL * in.n * in.n - in.n + 2;
        BoundReport rep = verify_bound(
            tr, {BoundSpec::Kind::kTotalNonwinsLe, base + in.n + 1, ""});
        if (!rep.pass) return fail_dump(tr, "c12 " + tag(in), rep.detail);
        return {true, ""};
      });
  for (const auto& [ok, detail] : results) merge(item, ok, detail);
  return item;
}

inline ItemResult check_infrastructure(const SuiteOptions& opt) {
  using namespace suite_detail;
  ItemResult item{"13", "generator validity, enumeration oracle, replay",
                  true, ""};
  // Generator validity, 1000 draws per size.
  for (int n = opt.n_lo; n <= opt.n_hi && item.pass; ++n)
    for (int s = 0; s < 1000; ++s) {
      GameMatrix g = generate_permissible(
          n, opt.base_seed + static_cast<std::uint32_t>(s));
      if (!g.validate_permissible().ok()) {
        merge(item, false,
              "generator produced a non-permissible game at n=" +
                  std::to_string(n) + " seed=" + std::to_string(s));
        break;
      }
    }
  // Exhaustive n=3 oracle: the accepted set is exactly the two 3-cycles,
  // meaning no zero entries and every action beating exactly one other.
  if (item.pass) {
    int accepted = 0;
    for (const GameMatrix& m : HalvingSpace::all_antisymmetric(3)) {
      const bool valid = m.validate_permissible().ok();
      bool cycle = true;
      for (int i = 0; i < 3; ++i) {
        int wins = 0;
        for (int j = 0; j < 3; ++j) {
          if (i != j && m.payoff(i, j) == 0) cycle = false;
          if (m.payoff(i, j) == 1) ++wins;
        }
        if (wins != 1) cycle = false;
      }
      if (valid != cycle) {
        merge(item, false, "n=3 enumeration disagrees with the cycle oracle");
        break;
      }
      if (valid) ++accepted;
    }
    if (item.pass && accepted != 2)
      merge(item, false, "n=3 permissible count is not 2");
  }
  // Replay determinism and per-round bookkeeping across opponent kinds.
  if (item.pass) {
    const std::vector<std::string> opps = {"mbr",   "mwr",       "gambler",
                                           "wsls:shift", "wsls:stay", "ftl",
                                           "ftl:3", "hap"};
    for (const std::string& o : opps) {
      GameMatrix g = game_for(4, opt.base_seed + 3);
      OpponentSpec spec = parse_opponent(o, 4);
      spec.omega = omega_for(4, opt.base_seed + 3);
      ScriptedExploiter ex =
          ScriptedExploiter::random_script(4, 300, opt.base_seed + 11);
      ScriptedExploiter ex2(ex.script());
      MatchTranscript tr = run_match(g, spec, ex, 300);
      MatchTranscript tr2 = run_match(g, spec, ex2, 300);
      if (transcript_to_csv(tr) != transcript_to_csv(tr2)) {
        merge(item, false, "match is not deterministic for opponent " + o);
        break;
      }
      MatchTranscript parsed = transcript_from_csv(transcript_to_csv(tr));
      if (!replay_matches(parsed, g, spec)) {
        merge(item, false, "replay diverged for opponent " + o);
        break;
      }
      for (const TranscriptRow& r : tr.rows)
        if (r.payoff != g.payoff(r.ours, r.theirs) ||
            r.payoff + g.payoff(r.theirs, r.ours) != 0) {
          merge(item, false, "bookkeeping mismatch for opponent " + o);
          break;
        }
      if (!item.pass) break;
    }
  }
  return item;
}

inline std::vector<ItemResult> run_default_suite(const SuiteOptions& opt) {
  std::vector<ItemResult> out;
  out.push_back(check_myopic_best(opt));
  out.push_back(check_gambler(opt));
  out.push_back(check_wsls(opt, TiePolicy::kShift));
  out.push_back(check_wsls(opt, TiePolicy::kStay));
  out.push_back(check_follow_leader(opt));
  out.push_back(check_follow_leader_limited(opt));
  out.push_back(check_highest_avg(opt));
  out.push_back(check_halving(opt));
  out.push_back(check_counterexample(opt));
  out.push_back(check_indistinguishable(opt));
  out.push_back(check_generic_learner(opt));
  out.push_back(check_wsls_auto(opt));
  out.push_back(check_infrastructure(opt));
  return out;
}

}  // namespace biasbreaker
