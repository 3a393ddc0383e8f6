#include <catch2/catch.hpp>

#include <fstream>

#include "biasbreaker/arena.hpp"
#include "biasbreaker/game_io.hpp"
#include "biasbreaker/specs.hpp"
#include "biasbreaker/suite.hpp"

using namespace biasbreaker;

TEST_CASE("zero-sum bookkeeping and counters") {
  GameMatrix g = rps_game();
  OpponentSpec o = parse_opponent("mbr", 3);
  BeatMyopicBest ex(3);
  MatchTranscript tr = run_match(g, o, ex, 100);
  CHECK(tr.wins + tr.ties + tr.losses == 100);
  CHECK(tr.wins == 96);  // four opening ties, then all wins
  for (const TranscriptRow& r : tr.rows) {
    CHECK(r.payoff == g.payoff(r.ours, r.theirs));
    CHECK(r.payoff + g.payoff(r.theirs, r.ours) == 0);
  }
}

TEST_CASE("identical configuration reproduces the transcript") {
  GameMatrix g = generate_permissible(5, 123);
  OpponentSpec o = parse_opponent("hap@4,3,2,1,0", 5);
  BeatHighestAvg e1(5, 500), e2(5, 500);
  CHECK(transcript_to_csv(run_match(g, o, e1, 500)) ==
        transcript_to_csv(run_match(g, o, e2, 500)));
}

TEST_CASE("bound verifiers catch sabotage") {
  GameMatrix g = rps_game();
  OpponentSpec o = parse_opponent("mbr", 3);
  BeatMyopicBest ex(3);
  MatchTranscript tr = run_match(g, o, ex, 50);
  CHECK(verify_bound(tr, {BoundSpec::Kind::kSuffixAllWins, 5, ""}).pass);
  CHECK(verify_bound(tr, {BoundSpec::Kind::kTotalNonwinsLe, 4, ""}).pass);

  MatchTranscript bad = tr;
  bad.rows[20].payoff = 0;  // flip one win
  BoundReport rep = verify_bound(bad, {BoundSpec::Kind::kSuffixAllWins, 5, ""});
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_violating_round == 21);
  CHECK_FALSE(
      verify_bound(bad, {BoundSpec::Kind::kTotalNonwinsLe, 4, ""}).pass);

  // an unpredicted non-win breaks phase coupling
  MatchTranscript coupled = tr;
  coupled.rows[30].payoff = -1;
  coupled.rows[30].phase = "predict";
  coupled.rows[30].predicted = std::nullopt;
  CHECK_FALSE(
      verify_bound(coupled, {BoundSpec::Kind::kPhaseCoupled, 0, "predict"})
          .pass);
}

TEST_CASE("table audit catches a sabotaged entry") {
  GameMatrix g = rps_game();
  OpponentSpec o = parse_opponent("gambler", 3);
  BeatGambler ex(3);
  run_match(g, o, ex, 30);
  CHECK(audit_response_table(ex, g).ok);

  struct Liar : Exploiter {
    std::vector<int> table = {1, 2, 1};  // claims S -> P, which loses
    Decision decide(const Observation&) override {
      return {0, std::nullopt, {}};
    }
    std::string name() const override { return "liar"; }
    const std::vector<int>* response_table() const override { return &table; }
  } liar;
  AuditResult audit = audit_response_table(liar, g);
  CHECK(audit.checked);
  CHECK_FALSE(audit.ok);
  CHECK(audit.detail.find("2 -> 1") != std::string::npos);
}

TEST_CASE("csv transcripts round-trip and replay") {
  GameMatrix g = generate_permissible(4, 77);
  OpponentSpec o = parse_opponent("wsls:stay@2,0,3,1", 4);
  BeatWslsStay ex(4);
  MatchTranscript tr = run_match(g, o, ex, 200);
  const std::string csv = transcript_to_csv(tr);
  MatchTranscript back = transcript_from_csv(csv);
  CHECK(transcript_to_csv(back) == csv);
  CHECK(back.wins == tr.wins);
  CHECK(replay_matches(back, g, o));
  // a tampered transcript no longer replays
  MatchTranscript bad = back;
  bad.rows[50].theirs = (bad.rows[50].theirs + 1) % 4;
  CHECK_FALSE(replay_matches(bad, g, o));
}

TEST_CASE("counterexample transcript is frozen byte for byte") {
  MatchTranscript tr = run_counterexample(60);
  const std::string got = transcript_to_csv(tr);
  CHECK(got == counterexample_expected_csv(60));
  // and against the stored golden file
  std::ifstream golden(std::string(BB_SOURCE_DIR) +
                       "/tests/data/counterexample_60.csv");
  REQUIRE(golden);
  std::ostringstream buf;
  buf << golden.rdbuf();
  CHECK(got == buf.str());
}

TEST_CASE("exploiter headers stay behind the information firewall") {
  // The blind-side headers must not pull in the game or opponent models.
  const std::vector<std::string> blind = {"exploiters.hpp", "observation.hpp",
                                          "ellipsoid.hpp"};
  const std::vector<std::string> banned = {"game.hpp", "opponents.hpp",
                                           "arena.hpp", "halving.hpp",
                                           "lex_baseline.hpp", "game_io.hpp"};
  for (const std::string& header : blind) {
    std::ifstream in(std::string(BB_SOURCE_DIR) + "/include/biasbreaker/" +
                     header);
    REQUIRE(in);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find("#include") == std::string::npos) continue;
      for (const std::string& bad : banned)
        CHECK(line.find(bad) == std::string::npos);
    }
  }
}

TEST_CASE("match faults abort with a partial transcript") {
  struct Crasher : Exploiter {
    Decision decide(const Observation& obs) override {
      if (obs.rounds() == 10) throw ModelMismatch("gave up");
      return {0, std::nullopt, {}};
    }
    std::string name() const override { return "crasher"; }
  } crasher;
  GameMatrix g = rps_game();
  MatchTranscript tr = run_match(g, parse_opponent("mbr", 3), crasher, 50);
  CHECK(tr.aborted);
  CHECK(tr.fault == "gave up");
  CHECK(tr.rows.size() == 10);
}

TEST_CASE("suffix bounds are monotone under extension") {
  GameMatrix g = generate_permissible(4, 5);
  OpponentSpec o = parse_opponent("mbr@1,3,0,2", 4);
  BeatMyopicBest e1(4), e2(4);
  MatchTranscript short_run = run_match(g, o, e1, 200);
  MatchTranscript long_run = run_match(g, o, e2, 800);
  const BoundSpec bound{BoundSpec::Kind::kSuffixAllWins, 6, ""};
  REQUIRE(verify_bound(short_run, bound).pass);
  CHECK(verify_bound(long_run, bound).pass);
}

TEST_CASE("parallel map preserves order and honors the env cap") {
  auto out = parallel_map<int>(64, [](int i) { return i * i; });
  for (int i = 0; i < 64; ++i) CHECK(out[i] == i * i);
}
