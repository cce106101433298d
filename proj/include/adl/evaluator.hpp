#ifndef ADL_EVALUATOR_HPP
#define ADL_EVALUATOR_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "adl/belief_model.hpp"
#include "adl/formula.hpp"
#include "adl/random.hpp"

namespace adl {

// Supplies concept and role values during evaluation.  Expectation nodes
// move evaluation into the context of each related individual via
// related().  Subclasses may override eval() to change how sentences are
// evaluated in their context.
class EvalContext {
 public:
  virtual ~EvalContext() = default;

  virtual double concept_value(std::string_view symbol) const = 0;
  virtual const RoleDistribution& role(std::string_view symbol) const = 0;
  virtual std::unique_ptr<EvalContext> related(std::string_view id) const = 0;

  // Entry point used for every node, including subformulas.
  virtual double eval(const Formula& f) const;
};

// An individual of a BeliefModel.  The model must outlive the context.
class ModelContext final : public EvalContext {
 public:
  // Throws ResolutionError if id is not in the model.
  ModelContext(const BeliefModel& model, std::string id);

  const BeliefModel& model() const { return *model_; }
  const std::string& id() const { return id_; }

  double concept_value(std::string_view symbol) const override;
  const RoleDistribution& role(std::string_view symbol) const override;
  std::unique_ptr<EvalContext> related(std::string_view id) const override;

 private:
  const BeliefModel* model_;
  std::string id_;
};

// Probability that f is true when sampled in ctx.  Dispatches through
// ctx.eval().  Throws ResolutionError for unknown symbols.
double evaluate(const EvalContext& ctx, const Formula& f);

// The node-level procedure behind EvalContext::eval:
//   Conditional   P(c) P(y) + (1 - P(c)) P(n)
//   Expectation   sum_x w_x P_x(a & b) / sum_x w_x P_x(b) over non-null x,
//                 1 when the denominator is exactly 0
//   Exists        1 - weight of the null entry
double evaluate_node(const EvalContext& ctx, const Formula& f);

// Draws one truth value of f, sampling every atom occurrence independently.
bool sample(const EvalContext& ctx, const Formula& f, Rng& rng);

// Attempts at drawing an individual that satisfies an expectation's
// condition before the sample is treated as vacuously true.
inline constexpr int kMaxConditionAttempts = 10000;

// Mean of n independent samples; deterministic for a given seed.
double monte_carlo_estimate(const EvalContext& ctx, const Formula& f,
                            std::size_t n, std::uint64_t seed);

}  // namespace adl

#endif  // ADL_EVALUATOR_HPP
