// Textual agent specs.
//
// Opponents:  mbr | mwr | gambler | wsls:shift | wsls:stay | ftl | ftl:<r>
//             | hap, optionally suffixed @<perm> for the tie order, e.g.
//             wsls:shift@2,0,1. Without a suffix the identity order is used.
// Exploiters: beat-mbr | beat-gambler | beat-wsls-shift | beat-wsls-stay
//             | beat-ftl | beat-ftl:<r> | beat-hap | lex-baseline
//             | generic-br:<c> | wsls-auto.

#pragma once

#include <memory>
#include <string>

#include "biasbreaker/exploiters.hpp"
#include "biasbreaker/lex_baseline.hpp"
#include "biasbreaker/opponents.hpp"

namespace biasbreaker {

inline ActionOrdering parse_ordering(const std::string& text, int n) {
  std::vector<int> order;
  std::string num;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (num.empty()) throw std::invalid_argument("empty ordering entry");
      order.push_back(std::stoi(num));
      num.clear();
    } else if (ch >= '0' && ch <= '9') {
      num += ch;
    } else {
      throw std::invalid_argument("bad character in ordering: " +
                                  std::string(1, ch));
    }
  }
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("ordering must list all " + std::to_string(n) +
                                " actions");
  return ActionOrdering(std::move(order));
}

inline OpponentSpec parse_opponent(const std::string& text, int n) {
  OpponentSpec spec;
  std::string body = text;
  if (auto at = body.find('@'); at != std::string::npos) {
    spec.omega = parse_ordering(body.substr(at + 1), n);
    body = body.substr(0, at);
  } else {
    spec.omega = ActionOrdering::identity(n);
  }
  if (body == "mbr") {
    spec.kind = OpponentKind::kMyopicBest;
  } else if (body == "mwr") {
    spec.kind = OpponentKind::kMyopicWorst;
  } else if (body == "gambler") {
    spec.kind = OpponentKind::kGambler;
  } else if (body == "wsls:shift") {
    spec.kind = OpponentKind::kWsls;
    spec.tie = TiePolicy::kShift;
  } else if (body == "wsls:stay") {
    spec.kind = OpponentKind::kWsls;
    spec.tie = TiePolicy::kStay;
  } else if (body == "ftl") {
    spec.kind = OpponentKind::kFollowLeader;
  } else if (body.rfind("ftl:", 0) == 0) {
    spec.kind = OpponentKind::kFollowLeader;
    const int r = std::stoi(body.substr(4));
    if (r < 1) throw std::invalid_argument("ftl window must be >= 1");
    spec.window = r;
  } else if (body == "hap") {
    spec.kind = OpponentKind::kHighestAvg;
  } else {
    throw std::invalid_argument("unknown opponent spec: " + body);
  }
  return spec;
}

/// rounds pins predictor margins, so pass the real match length.
inline std::unique_ptr<Exploiter> make_exploiter(const std::string& text,
                                                 const GameMatrix& game,
                                                 long long rounds) {
  const int n = game.n();
  if (text == "beat-mbr") return std::make_unique<BeatMyopicBest>(n);
  if (text == "beat-gambler") return std::make_unique<BeatGambler>(n);
  if (text == "beat-wsls-shift") return std::make_unique<BeatWslsShift>(n);
  if (text == "beat-wsls-stay") return std::make_unique<BeatWslsStay>(n);
  if (text == "beat-ftl") return std::make_unique<BeatFollowLeader>(n, rounds);
  if (text.rfind("beat-ftl:", 0) == 0) {
    const int r = std::stoi(text.substr(9));
    if (r < 1) throw std::invalid_argument("beat-ftl window must be >= 1");
    return std::make_unique<BeatFollowLeader>(n, rounds, r);
  }
  if (text == "beat-hap") return std::make_unique<BeatHighestAvg>(n, rounds);
  if (text == "wsls-auto") return std::make_unique<WslsAutoExploiter>(n);
  if (text.rfind("generic-br:", 0) == 0) {
    const int c = std::stoi(text.substr(11));
    if (c < 1) throw std::invalid_argument("generic-br constant must be >= 1");
    return std::make_unique<GenericBrLearner>(
        n, GenericBrLearner::ConstantRule{c});
  }
  if (text == "lex-baseline") {
    if (n == 6 && (game == m_star_game() || game == m_lex_game()))
      return std::make_unique<LexBaseline>(LexBaseline::counterexample_pair());
    if (n <= 3)
      return std::make_unique<LexBaseline>(LexBaseline::full_enumeration(n));
    throw std::invalid_argument(
        "lex-baseline supports n <= 3 or the built-in six-action games");
  }
  throw std::invalid_argument("unknown exploiter spec: " + text);
}

}  // namespace biasbreaker
