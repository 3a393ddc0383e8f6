#include <catch2/catch.hpp>

#include <cmath>

#include "biasbreaker/ellipsoid.hpp"
#include "biasbreaker/game.hpp"
#include "biasbreaker/halving.hpp"
#include "biasbreaker/opponents.hpp"

using namespace biasbreaker;

TEST_CASE("halving space sizes") {
  const StrategyFamilyEntry mbr{OpponentKind::kMyopicBest, TiePolicy::kShift,
                                std::nullopt};
  const StrategyFamilyEntry gam{OpponentKind::kGambler, TiePolicy::kShift,
                                std::nullopt};
  CHECK(HalvingSpace({mbr}, 3).size() == 162);        // 27 tables x 6 orders
  CHECK(HalvingSpace({mbr, gam}, 3).size() == 324);
  CHECK_THROWS_AS(HalvingSpace({mbr}, 2), std::invalid_argument);
  CHECK_THROWS_AS(HalvingSpace({mbr}, 4), std::invalid_argument);
  CHECK(HalvingSpace({mbr}, 4, true).size() == 729u * 24u);
}

TEST_CASE("halving never eliminates the truth and respects the mistake cap") {
  const StrategyFamilyEntry mbr{OpponentKind::kMyopicBest, TiePolicy::kShift,
                                std::nullopt};
  for (std::uint32_t seed = 0; seed < 5; ++seed) {
    GameMatrix g = generate_permissible(3, seed);
    ActionOrdering omega = ActionOrdering::random(3, seed + 50);
    OpponentSpec truth{OpponentKind::kMyopicBest, TiePolicy::kShift,
                       std::nullopt, omega};
    HalvingSpace space({mbr}, 3);
    const long long cap =
        (long long)std::ceil(std::log2((double)space.size()));
    History h;
    std::mt19937 rng(seed);
    long long mistakes = 0;
    for (int t = 0; t < 300; ++t) {
      const int guess = space.predict(h);
      const int actual = opponent_choose(truth, g, h);
      if (guess != actual) ++mistakes;
      const std::size_t before = space.size();
      space.update(h, actual);
      REQUIRE(space.contains(mbr, g, omega));
      if (guess != actual)
        CHECK(space.size() * 2 <= before);  // a mistake halves the space
      h.push_back({(int)uniform_below(rng, 3), actual});
    }
    CHECK(mistakes <= cap);
  }
}

TEST_CASE("halving with one survivor echoes it") {
  const StrategyFamilyEntry mbr{OpponentKind::kMyopicBest, TiePolicy::kShift,
                                std::nullopt};
  GameMatrix g = rps_game();
  ActionOrdering omega = ActionOrdering::identity(3);
  OpponentSpec truth{OpponentKind::kMyopicBest, TiePolicy::kShift,
                     std::nullopt, omega};
  HalvingSpace space({mbr}, 3);
  History h;
  std::mt19937 rng(12);
  for (int t = 0; t < 200; ++t) {
    const int actual = opponent_choose(truth, g, h);
    space.update(h, actual);
    h.push_back({(int)uniform_below(rng, 3), actual});
  }
  // All survivors must agree with the truth from here on.
  for (int t = 0; t < 50; ++t) {
    const int actual = opponent_choose(truth, g, h);
    CHECK(space.predict(h) == actual);
    space.update(h, actual);
    h.push_back({(int)uniform_below(rng, 3), actual});
  }
}

TEST_CASE("ellipsoid initial state") {
  EllipsoidPredictor pred(3, ScoreMode::kNet, 1000);
  CHECK(pred.dimension() == 9);
  CHECK(pred.mistake_count() == 0);
  for (double c : pred.center()) CHECK(c == 0.0);
  // margin pinned from the horizon: 1/(2*1000*(9-3))
  CHECK(pred.margin() == Approx(1.0 / 12000.0));
  EllipsoidPredictor avg(3, ScoreMode::kAvg, 1000);
  CHECK(avg.margin() == Approx(1.0 / 12000000.0));
}

TEST_CASE("all-zero center predicts the lowest index") {
  EllipsoidPredictor pred(3, ScoreMode::kNet, 100);
  std::vector<int> ours = {0, 1, 2};
  std::vector<int> theirs = {0, 0, 0};
  Observation obs{ours, theirs, 3};
  CHECK(pred.predict(obs) == 0);
}

TEST_CASE("central cut moves the center along the cut axis") {
  // shape = n^2 * I at start, so a cut along w = e_k shifts the center by
  // sqrt(w'Pw)/(d+1) = n/(d+1) in that axis; with unit shape and d = 2
  // this is the familiar one-third step.
  EllipsoidPredictor p(3, ScoreMode::kNet, 100);
  MistakeConstraint c;
  c.weights.assign(9, 0.0);
  c.weights[4] = 1.0;
  c.margin = 0.1;
  p.apply_cut(c);
  const double expected = 3.0 / 10.0;  // sqrt(9)/ (d+1) = 3/10
  CHECK(p.center()[4] == Approx(expected));
  for (int k = 0; k < 9; ++k)
    if (k != 4) CHECK(p.center()[k] == Approx(0.0));
}

TEST_CASE("every cut shrinks the volume by the standard factor") {
  EllipsoidPredictor p(3, ScoreMode::kNet, 100);
  const double bound = -1.0 / (2.0 * (9.0 + 1.0));
  std::mt19937 rng(4);
  double last = p.log_volume();
  for (int k = 0; k < 40; ++k) {
    MistakeConstraint c;
    c.weights.assign(9, 0.0);
    for (int i = 0; i < 9; ++i)
      c.weights[i] = (double)uniform_below(rng, 5) - 2.0;
    if (!EllipsoidPredictor::has_weight(c)) continue;
    c.margin = 0.01;
    p.apply_cut(c);
    CHECK(p.log_volume() - last <= bound + 1e-9);
    last = p.log_volume();
  }
}

TEST_CASE("a cut improves the violated constraint's margin") {
  EllipsoidPredictor p(4, ScoreMode::kNet, 500);
  MistakeConstraint c;
  c.weights.assign(16, 0.0);
  c.weights[3] = 2.0;
  c.weights[7] = -1.0;
  c.margin = 0.01;
  const double before = p.violation(c);
  p.apply_cut(c);
  CHECK(p.violation(c) > before);
}

TEST_CASE("net constraints weight the two rows by play counts") {
  EllipsoidPredictor p(3, ScoreMode::kNet, 100);
  std::vector<int> ours = {0, 0, 1};  // R twice, P once
  std::vector<int> theirs = {1, 1, 1};
  Observation obs{ours, theirs, 3};
  // predicted S (2), actual P (1); counts normalized over the window
  MistakeConstraint c = p.make_constraint(obs, 2, 1);
  CHECK(c.weights[1 * 3 + 0] == Approx(2.0 / 3.0));
  CHECK(c.weights[1 * 3 + 1] == Approx(1.0 / 3.0));
  CHECK(c.weights[2 * 3 + 0] == Approx(-2.0 / 3.0));
  CHECK_FALSE(c.degenerate);
  // a window of 1 sees only the last round
  EllipsoidPredictor pw(3, ScoreMode::kNet, 100, 1);
  MistakeConstraint cw = pw.make_constraint(obs, 2, 1);
  CHECK(cw.weights[1 * 3 + 1] == Approx(1.0));
  CHECK(cw.weights[1 * 3 + 0] == Approx(0.0));
}

TEST_CASE("avg constraints normalize each row to unit weight") {
  EllipsoidPredictor p(3, ScoreMode::kAvg, 100);
  std::vector<int> ours = {0, 1, 0, 2};
  std::vector<int> theirs = {1, 1, 2, 1};
  Observation obs{ours, theirs, 3};
  MistakeConstraint c = p.make_constraint(obs, 2, 1);
  double row1 = 0.0, row2 = 0.0;
  for (int j = 0; j < 3; ++j) {
    row1 += c.weights[1 * 3 + j];
    row2 += c.weights[2 * 3 + j];
  }
  CHECK(row1 == Approx(1.0));
  CHECK(row2 == Approx(-1.0));
  // an unplayed action contributes the initialization value instead
  MistakeConstraint d = p.make_constraint(obs, 0, 1);
  CHECK(d.degenerate);
  double row0 = 0.0;
  for (int j = 0; j < 3; ++j) row0 += d.weights[0 * 3 + j];
  CHECK(row0 == Approx(0.0));
}

TEST_CASE("net mode with a full window equals unlimited") {
  std::vector<int> ours = {0, 1, 2, 1, 0};
  std::vector<int> theirs = {1, 1, 0, 2, 1};
  Observation obs{ours, theirs, 3};
  EllipsoidPredictor unlimited(3, ScoreMode::kNet, 100);
  EllipsoidPredictor windowed(3, ScoreMode::kNet, 100, 5);
  CHECK(unlimited.scores(obs) == windowed.scores(obs));
}

TEST_CASE("avg mode equals net ranking when joint counts are uniform") {
  // every (their action, our action) pair appears exactly once, so the
  // averaged row scores and the net scores rank actions identically
  std::vector<int> ours = {0, 1, 2, 0, 1, 2, 0, 1, 2};
  std::vector<int> theirs = {0, 0, 0, 1, 1, 1, 2, 2, 2};
  Observation obs{ours, theirs, 3};
  EllipsoidPredictor net(3, ScoreMode::kNet, 100);
  EllipsoidPredictor avg(3, ScoreMode::kAvg, 100);
  // seed both centers with the same arbitrary cut
  MistakeConstraint c;
  c.weights.assign(9, 0.0);
  c.weights[2] = 1.0;
  c.weights[5] = -0.5;
  c.margin = 0.01;
  net.apply_cut(c);
  avg.apply_cut(c);
  // opponent-side counts: net weights our plays, avg weighs pairs; with
  // uniform opponent counts the winner coincides
  CHECK(net.predict(obs) == avg.predict(obs));
}

TEST_CASE("conditioning fault surfaces as a predictor fault") {
  EllipsoidPredictor p(3, ScoreMode::kNet, 100);
  MistakeConstraint c;
  c.weights.assign(9, 0.0);
  CHECK_THROWS_AS(p.apply_cut(c), PredictorFault);
}
