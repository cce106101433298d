#ifndef ADL_STRATEGY_HPP
#define ADL_STRATEGY_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>

namespace adl {

// Concept strategies.

// v_new = r' * likelihood + (1 - r') * v_old, with r' = r * multiplier.
struct DirectConceptStrategy {
  double multiplier = 1.0;  // (0, 1]
};

// Running mean of received likelihoods weighted by learning rate, with an
// exponential discount that itself relaxes towards 1.
struct StatisticalConceptStrategy {
  double decay_rate = 1.0;                 // (0, 1]
  double decay_rate_for_decay_rate = 1.0;  // (0, 1]

  struct State {
    double sum = 0.0;     // discounted sum of r * likelihood
    double weight = 0.0;  // discounted sum of r
    double decay = 1.0;   // current decay rate
  };
  // Seeded from the concept's value on first use.
  std::optional<State> state;
};

using ConceptStrategy =
    std::variant<DirectConceptStrategy, StatisticalConceptStrategy>;

// Role strategies.

struct BayesRoleStrategy {};

struct StatisticalRoleStrategy {
  double decay_rate = 1.0;
  double decay_rate_for_decay_rate = 1.0;

  struct State {
    std::map<std::string, double, std::less<>> sums;  // per non-null target
    double weight = 0.0;
    double decay = 1.0;
  };
  std::optional<State> state;
};

using RoleStrategy = std::variant<BayesRoleStrategy, StatisticalRoleStrategy>;

}  // namespace adl

#endif  // ADL_STRATEGY_HPP
