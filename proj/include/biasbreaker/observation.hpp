// The information firewall. Exploiters receive exactly this view of a
// match: both action streams and the action count. No payoffs, no matrix.
// Exploiter headers must not include game.hpp or opponents.hpp; a test
// audits the include graph.

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace biasbreaker {

struct Observation {
  std::span<const int> ours;
  std::span<const int> theirs;
  int n = 0;

  int rounds() const { return static_cast<int>(theirs.size()); }
};

struct PhaseLabel {
  const char* tag = "";
  int round_in_phase = 0;
};

struct Decision {
  int action = 0;
  std::optional<int> predicted;  // opponent action we expect this round
  PhaseLabel phase;
};

/// Thrown when the observed behavior cannot come from the modeled opponent.
class ModelMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EllipsoidPredictor;

/// A payoff-blind agent. decide() is called once per round, in order,
/// with the observation covering all previous rounds.
class Exploiter {
 public:
  virtual ~Exploiter() = default;
  virtual Decision decide(const Observation& obs) = 0;
  virtual std::string name() const = 0;

  // Learned action -> winning-response map, when the agent keeps one.
  // Index = action, value = recorded response, -1 = unlearned. Exposed for
  // post-match audits against the ground truth; never read by the agent's
  // own opponent-facing logic beyond what it recorded itself.
  virtual const std::vector<int>* response_table() const { return nullptr; }

  // The table estimator, when the agent runs one; for diagnostics and the
  // referee's feasibility audit.
  virtual const EllipsoidPredictor* predictor() const { return nullptr; }
};

}  // namespace biasbreaker
