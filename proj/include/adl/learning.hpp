// ============================================================================
// adl/learning.hpp -- learning concept and role values from observations
// ============================================================================
//
// An observation is a sentence asserted to be true about an individual.  Its
// influence is pushed down the tree as a pair (likelihood, learning rate):
//
//   likelihood  chance that the subterm is true given the observation;
//   rate        how much the subterm's truth moves the whole observation.
//
// At a Conditional, each child gets its likelihood from Bayes' rule on
// uncertain evidence about the parent, and its rate from the parent's rate
// times |P(parent | child) - P(parent | not child)|.  Both conditionals are
// obtained by evaluating the parent with the child replaced by always/never.
//
// At an Expectation, the chance that each related individual was the one
// selected (role_selection_posterior) scales the rate handed to the body and
// condition evaluated in that individual's context.
//
// Atoms and Expectations whose concept/role has a registered strategy record
// one strategy invocation each.  All invocations are computed against the
// model as it was before the observation and are applied afterwards, in
// depth-first, left-to-right order.
// ============================================================================

#ifndef ADL_LEARNING_HPP
#define ADL_LEARNING_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adl/belief_model.hpp"
#include "adl/evaluator.hpp"
#include "adl/formula.hpp"
#include "adl/strategy.hpp"

namespace adl {

struct Influence {
  double likelihood = 1.0;
  double learning_rate = 1.0;

  friend bool operator==(const Influence&, const Influence&) = default;
};

struct TargetWeight {
  IndividualId target;
  double weight;
};

// Influence passed from parent to its direct child at child_index.  The
// parent must be a Conditional; Expectation children are reached through
// role_selection_posterior instead.
Influence child_influence(const EvalContext& ctx, const Formula& parent,
                          std::size_t child_index, Influence parent_influence);

// Chance that each non-null individual of role was the one selected for an
// observation of [role](body given condition) with the given likelihood.
// Falls back to the renormalised prior when every candidate has zero weight
// under the observation.  Empty when the role has no non-null weight.
std::vector<TargetWeight> role_selection_posterior(
    const EvalContext& ctx, const RoleDistribution& role, const Formula& body,
    const Formula& condition, double likelihood);

// ── Strategies ─────────────────────────────────────────────────────────────

double direct_concept_update(double value, const DirectConceptStrategy& s,
                             Influence influence);

// Seeds the running mean from value on first use (weight 1), adds the
// observation, then relaxes the decay rate towards 1.
double statistical_concept_update(StatisticalConceptStrategy& s, double value,
                                  Influence influence);

// Mixes the role with its Bayes-rule update; the null weight is kept.
RoleDistribution bayes_role_update(const RoleDistribution& role,
                                   std::span<const TargetWeight> posterior,
                                   double learning_rate);

// Running mean of Bayes-rule role distributions; the null weight is kept.
RoleDistribution statistical_role_update(StatisticalRoleStrategy& s,
                                         const RoleDistribution& role,
                                         std::span<const TargetWeight> posterior,
                                         double learning_rate);

// ── Observation ────────────────────────────────────────────────────────────

struct ConceptChange {
  IndividualId individual;
  std::string symbol;
  double old_value;
  double new_value;
};

struct RoleChange {
  IndividualId individual;
  std::string symbol;
  RoleDistribution old_value;
  RoleDistribution new_value;
};

// One entry per updated (individual, symbol), in first-update order.
struct ObservationReport {
  std::vector<ConceptChange> concepts;
  std::vector<RoleChange> roles;
};

// Learns from obs observed about individual id.  Throws ResolutionError for
// unknown symbols and std::invalid_argument for influence outside [0, 1].
// Requires exclusive access to model.
ObservationReport observe(BeliefModel& model, std::string_view id,
                          const Formula& obs, Influence influence = {});

std::string to_string(const ObservationReport& report);

}  // namespace adl

#endif  // ADL_LEARNING_HPP
