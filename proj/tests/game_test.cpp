#include <catch2/catch.hpp>

#include "biasbreaker/game.hpp"
#include "biasbreaker/game_io.hpp"

using namespace biasbreaker;

namespace {

GameMatrix make3(std::vector<std::int8_t> cells) {
  return GameMatrix(3, std::move(cells));
}

}  // namespace

TEST_CASE("payoff lookup") {
  GameMatrix rps = rps_game();
  CHECK(payoff(rps, 0, 0) == 0);   // R vs R ties
  CHECK(payoff(rps, 1, 0) == 1);   // paper beats rock
  CHECK(payoff(rps, 0, 1) == -1);
  GameMatrix star = m_star_game();
  CHECK(payoff(star, 5, 0) == 0);  // S' vs R, the bolded tie
  CHECK_THROWS_AS(payoff(rps, 3, 0), std::out_of_range);
  CHECK_THROWS_AS(payoff(rps, 0, -1), std::out_of_range);
}

TEST_CASE("antisymmetry holds everywhere") {
  for (const GameMatrix& g :
       {rps_game(), m_star_game(), m_lex_game(), generate_permissible(6, 4)}) {
    for (int i = 0; i < g.n(); ++i) {
      CHECK(g.payoff(i, i) == 0);
      for (int j = 0; j < g.n(); ++j)
        CHECK(g.payoff(i, j) + g.payoff(j, i) == 0);
    }
  }
}

TEST_CASE("construction rejects bad tables") {
  CHECK_THROWS_WITH(make3({0, 2, 0, -2, 0, 0, 0, 0, 0}),
                    Catch::Contains("out of domain"));
  CHECK_THROWS_WITH(make3({0, 1, 0, 1, 0, 0, 0, 0, 0}),
                    Catch::Contains("antisymmetry"));
  CHECK_THROWS_WITH(make3({1, 0, 0, 0, 0, 0, 0, 0, 0}),
                    Catch::Contains("diagonal"));
  CHECK_THROWS_WITH(GameMatrix(2, {0, 1, -1, 0}), Catch::Contains("n < 3"));
}

TEST_CASE("permissibility validation") {
  CHECK(rps_game().validate_permissible().ok());
  CHECK(m_star_game().validate_permissible().ok());
  CHECK(m_lex_game().validate_permissible().ok());

  GameMatrix zeros = make3({0, 0, 0, 0, 0, 0, 0, 0, 0});
  ValidationReport rep = zeros.validate_permissible();
  CHECK_FALSE(rep.ok());
  // every action both beats nothing and loses to nothing
  CHECK(rep.issues.size() == 6);
  int no_win = 0;
  for (const auto& issue : rep.issues)
    if (issue.what.find("no winning action") != std::string::npos) ++no_win;
  CHECK(no_win == 3);
}

TEST_CASE("builtin games") {
  CHECK(builtin_game("m_star").payoff(0, 5) == 0);
  CHECK(builtin_game("m_lex").payoff(0, 5) == -1);
  CHECK(builtin_game("rps").validate_permissible().ok());
  CHECK_THROWS_AS(builtin_game("nope"), std::invalid_argument);
}

TEST_CASE("random generation is deterministic and valid") {
  for (int n : {3, 5, 8}) {
    GameMatrix a = generate_permissible(n, 7);
    GameMatrix b = generate_permissible(n, 7);
    CHECK(a == b);
    CHECK(a.validate_permissible().ok());
  }
  CHECK_THROWS_AS(generate_permissible(2, 0), std::invalid_argument);
}

TEST_CASE("three-action games without ties are cycles") {
  // All-nonzero permissible 3x3 games are a cycle or its reverse: each
  // action beats exactly one other.
  for (std::uint32_t seed = 0; seed < 50; ++seed) {
    GameMatrix g = generate_permissible(3, seed);
    bool nonzero = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j && g.payoff(i, j) == 0) nonzero = false;
    if (!nonzero) continue;
    for (int i = 0; i < 3; ++i) {
      int wins = 0;
      for (int j = 0; j < 3; ++j)
        if (g.payoff(i, j) == 1) ++wins;
      CHECK(wins == 1);
    }
  }
}

TEST_CASE("ordering basics") {
  ActionOrdering omega({2, 0, 1});
  CHECK(omega.first() == 2);
  CHECK(omega.rank_of(0) == 1);
  CHECK(omega.successor(1) == 2);  // wraps
  CHECK(omega.successor(2) == 0);
  CHECK_THROWS_AS(ActionOrdering({0, 0, 1}), std::invalid_argument);
  CHECK(ActionOrdering::random(6, 3) == ActionOrdering::random(6, 3));
}

TEST_CASE("game file round trip") {
  for (const GameMatrix& g :
       {rps_game(), m_star_game(), generate_permissible(5, 11)}) {
    const std::string text = serialize_game(g);
    GameMatrix back = parse_game(text);
    CHECK(back == g);
    CHECK(serialize_game(back) == text);  // canonical bytes
  }
}

TEST_CASE("game file errors name the offending field") {
  CHECK_THROWS_WITH(
      parse_game(R"({"version":1,"n":3,"payoffs":[[0,2,0],[-2,0,0],[0,0,0]]})"),
      Catch::Contains("out of domain"));
  CHECK_THROWS_WITH(
      parse_game(R"({"version":1,"n":3,"payoffs":[[0,1,0],[1,0,0],[0,0,0]]})"),
      Catch::Contains("antisymmetry"));
  CHECK_THROWS_WITH(parse_game(R"({"version":1,"n":3,"payoffs":[[0,0],[0,0]]})"),
                    Catch::Contains("row count"));
  CHECK_THROWS_WITH(parse_game("{"), Catch::Contains("malformed"));
  CHECK_THROWS_WITH(parse_game(R"({"n":3,"payoffs":[]})"),
                    Catch::Contains("version"));
  // non-permissible matrices need the explicit flag
  const std::string zeros =
      R"({"version":1,"n":3,"payoffs":[[0,0,0],[0,0,0],[0,0,0]]})";
  CHECK_THROWS_WITH(parse_game(zeros), Catch::Contains("not permissible"));
  CHECK(parse_game(zeros, true).n() == 3);
}
