#include <catch2/catch.hpp>

#include "biasbreaker/game.hpp"
#include "biasbreaker/opponents.hpp"
#include "biasbreaker/specs.hpp"

using namespace biasbreaker;

namespace {

constexpr int R = 0, P = 1, S = 2;

History rounds_of(std::initializer_list<Round> rs) { return History(rs); }

History ours_only(std::initializer_list<int> ours) {
  History h;
  for (int a : ours) h.push_back({a, 0});
  return h;
}

}  // namespace

TEST_CASE("myopic best responder") {
  GameMatrix rps = rps_game();
  ActionOrdering omega = ActionOrdering::identity(3);
  CHECK(mbr_choose(rps, omega, {}) == R);  // first action of the order
  CHECK(mbr_choose(rps, omega, rounds_of({{R, R}})) == P);
  CHECK(mbr_choose(rps, ActionOrdering({2, 1, 0}), rounds_of({{R, R}})) == P);

  // six-action game: the order breaks the tie between the two winners
  GameMatrix star = m_star_game();
  ActionOrdering id6 = ActionOrdering::identity(6);
  CHECK(mbr_choose(star, id6, rounds_of({{5, 0}})) == 2);  // S beats S' first
}

TEST_CASE("myopic best responder depends only on our last action") {
  GameMatrix g = generate_permissible(4, 9);
  ActionOrdering omega = ActionOrdering::random(4, 2);
  std::mt19937 rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    History a, b;
    const int len_a = 1 + uniform_below(rng, 8);
    const int len_b = 1 + uniform_below(rng, 8);
    for (int i = 0; i < len_a; ++i)
      a.push_back({(int)uniform_below(rng, 4), (int)uniform_below(rng, 4)});
    for (int i = 0; i < len_b; ++i)
      b.push_back({(int)uniform_below(rng, 4), (int)uniform_below(rng, 4)});
    b.back().ours = a.back().ours;
    CHECK(mbr_choose(g, omega, a) == mbr_choose(g, omega, b));
  }
}

TEST_CASE("gambler's fallacy targets the least-played action") {
  GameMatrix rps = rps_game();
  ActionOrdering omega = ActionOrdering::identity(3);
  // all targets tied at zero plays: counter the first in the order
  CHECK(gambler_choose(rps, omega, {}) == P);
  // after we played R and P, S is uniquely overdue; R beats S
  CHECK(gambler_choose(rps, omega, ours_only({R, P})) == R);
  // full tie again after covering all actions equally
  CHECK(gambler_choose(rps, omega, ours_only({R, P, S})) == P);
}

TEST_CASE("win-stay lose-shift") {
  GameMatrix rps = rps_game();
  ActionOrdering omega = ActionOrdering::identity(3);
  CHECK(wsls_choose(rps, omega, {}, TiePolicy::kShift) == R);
  // R beat our S: stay under both policies
  CHECK(wsls_choose(rps, omega, rounds_of({{S, R}}), TiePolicy::kShift) == R);
  CHECK(wsls_choose(rps, omega, rounds_of({{S, R}}), TiePolicy::kStay) == R);
  // tie: the shift variant moves on, the stay variant repeats
  CHECK(wsls_choose(rps, omega, rounds_of({{R, R}}), TiePolicy::kShift) == P);
  CHECK(wsls_choose(rps, omega, rounds_of({{R, R}}), TiePolicy::kStay) == R);
  // loss shifts, wrapping at the end of the order
  CHECK(wsls_choose(rps, omega, rounds_of({{R, S}}), TiePolicy::kShift) == R);
}

TEST_CASE("follow the leader") {
  GameMatrix rps = rps_game();
  ActionOrdering omega = ActionOrdering::identity(3);
  CHECK(ftl_choose(rps, omega, {}, std::nullopt) == R);
  CHECK(ftl_choose(rps, omega, ours_only({R, R, R}), std::nullopt) == P);
  // against R then P: P nets +1, R nets -1, S nets 0
  CHECK(ftl_choose(rps, omega, ours_only({R, P}), std::nullopt) == P);
  // window 1 only sees the final R
  CHECK(ftl_choose(rps, omega, ours_only({P, P, P, R}), 1) == P);
  // degenerate window equals unlimited
  History h = ours_only({R, P, S, R, P});
  CHECK(ftl_choose(rps, omega, h, (int)h.size()) ==
        ftl_choose(rps, omega, h, std::nullopt));
}

TEST_CASE("highest average payoff") {
  GameMatrix rps = rps_game();
  ActionOrdering omega = ActionOrdering::identity(3);
  CHECK(hap_choose(rps, omega, {}) == R);
  // R lost its only outing: unplayed actions (average 0) win the ordering
  CHECK(hap_choose(rps, omega, rounds_of({{P, R}})) == P);
  // R won its only outing: positive average stays on top
  CHECK(hap_choose(rps, omega, rounds_of({{S, R}})) == R);
  // exact rational comparison: 1/3 beats 1/4, no float rounding involved
  History h = rounds_of({{S, R}, {P, R}, {S, R},           // R: 1/3
                         {R, P}, {S, P}, {R, P}, {P, P},   // P: 1/4
                         {R, S}});                          // S: -1
  CHECK(hap_choose(rps, omega, h) == R);
  History h2 = rounds_of({{S, R}, {P, R}, {S, R}, {P, R},  // R: 0/4
                          {R, P}, {S, P}, {R, P},          // P: 1/3
                          {R, S}});                         // S: -1
  CHECK(hap_choose(rps, omega, h2) == P);
}

TEST_CASE("myopic worst responder mirrors the best responder") {
  GameMatrix rps = rps_game();
  ActionOrdering omega = ActionOrdering::identity(3);
  CHECK(mwr_choose(rps, omega, {}) == R);
  CHECK(mwr_choose(rps, omega, rounds_of({{R, R}})) == S);
  GameMatrix rev = rps.reversed();
  CHECK(mwr_choose(rev, omega, rounds_of({{R, R}})) == P);
}

TEST_CASE("best responder on a game equals worst responder on its reverse") {
  GameMatrix rps = rps_game();
  GameMatrix rev = rps.reversed();
  std::mt19937 rng(3);
  for (int rep = 0; rep < 25; ++rep) {
    ActionOrdering omega = ActionOrdering::random(3, rep);
    History h;
    for (int t = 0; t < 30; ++t) {
      CHECK(mbr_choose(rps, omega, h) == mwr_choose(rev, omega, h));
      h.push_back({(int)uniform_below(rng, 3), mbr_choose(rps, omega, h)});
    }
  }
}

TEST_CASE("incremental sessions match from-scratch recomputation") {
  const std::vector<std::string> specs = {"mbr",        "mwr",      "gambler",
                                          "wsls:shift", "wsls:stay", "ftl",
                                          "ftl:4",      "hap"};
  for (const std::string& text : specs) {
    for (std::uint32_t seed = 0; seed < 6; ++seed) {
      const int n = 3 + seed % 3;
      GameMatrix g = generate_permissible(n, seed + 40);
      OpponentSpec spec = parse_opponent(text, n);
      spec.omega = ActionOrdering::random(n, seed);
      OpponentSession session(spec, g);
      History h;
      std::mt19937 rng(seed + 100);
      for (int t = 0; t < 120; ++t) {
        const int pure = opponent_choose(spec, g, h);
        const int fast = session.choose();
        REQUIRE(pure == fast);
        const int ours = (int)uniform_below(rng, n);
        h.push_back({ours, fast});
        session.observe(ours, fast);
      }
    }
  }
}

TEST_CASE("choosers are deterministic") {
  GameMatrix g = generate_permissible(5, 77);
  OpponentSpec spec = parse_opponent("gambler@4,2,0,1,3", 5);
  History h;
  std::mt19937 rng(1);
  for (int t = 0; t < 50; ++t)
    h.push_back({(int)uniform_below(rng, 5), (int)uniform_below(rng, 5)});
  const int first = opponent_choose(spec, g, h);
  for (int rep = 0; rep < 5; ++rep)
    CHECK(opponent_choose(spec, g, h) == first);
}

TEST_CASE("opponent spec parsing") {
  OpponentSpec spec = parse_opponent("wsls:shift@2,0,1", 3);
  CHECK(spec.kind == OpponentKind::kWsls);
  CHECK(spec.tie == TiePolicy::kShift);
  CHECK(spec.omega.first() == 2);
  CHECK(parse_opponent("ftl:7", 4).window == 7);
  CHECK_FALSE(parse_opponent("ftl", 4).window.has_value());
  CHECK_THROWS_AS(parse_opponent("ftl:0", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_opponent("zzz", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_opponent("mbr@0,1", 3), std::invalid_argument);
}
