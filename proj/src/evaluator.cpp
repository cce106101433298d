#include "adl/evaluator.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "adl/errors.hpp"

namespace adl {

double EvalContext::eval(const Formula& f) const {
  return evaluate_node(*this, f);
}

ModelContext::ModelContext(const BeliefModel& model, std::string id)
    : model_(&model), id_(std::move(id)) {
  if (!model_->contains(id_)) {
    throw ResolutionError("unknown individual '" + id_ + "'");
  }
}

double ModelContext::concept_value(std::string_view symbol) const {
  return model_->get_concept(id_, symbol);
}

const RoleDistribution& ModelContext::role(std::string_view symbol) const {
  return model_->get_role(id_, symbol);
}

std::unique_ptr<EvalContext> ModelContext::related(std::string_view id) const {
  return std::make_unique<ModelContext>(*model_, std::string(id));
}

double evaluate(const EvalContext& ctx, const Formula& f) {
  return ctx.eval(f);
}

double evaluate_node(const EvalContext& ctx, const Formula& f) {
  switch (f.kind()) {
    case Kind::Always:
      return 1.0;
    case Kind::Never:
      return 0.0;
    case Kind::Prob:
      return f.as<node::Prob>()->p;
    case Kind::Atom:
      return std::clamp(ctx.concept_value(f.as<node::Atom>()->symbol), 0.0,
                        1.0);
    case Kind::Conditional: {
      const auto& c = *f.as<node::Conditional>();
      const double p = ctx.eval(c.cond);
      const double result = p * ctx.eval(c.if_yes) + (1.0 - p) * ctx.eval(c.if_no);
      return std::clamp(result, 0.0, 1.0);
    }
    case Kind::Expectation: {
      const auto& e = *f.as<node::Expectation>();
      const RoleDistribution& role = ctx.role(e.role);
      double numerator = 0.0;
      double denominator = 0.0;
      for (const RoleEntry& entry : role.entries()) {
        if (!entry.target) continue;
        auto sub = ctx.related(*entry.target);
        // P_x(a & b) = P_x(a) P_x(b) since both are independent samplings.
        const double cond = sub->eval(e.condition);
        const double both = sub->eval(conjunction(e.body, e.condition));
        numerator += entry.weight * both;
        denominator += entry.weight * cond;
      }
      if (denominator == 0.0) return 1.0;
      return std::clamp(numerator / denominator, 0.0, 1.0);
    }
    case Kind::Exists: {
      const RoleDistribution& role = ctx.role(f.as<node::Exists>()->role);
      return std::clamp(1.0 - role.null_weight(), 0.0, 1.0);
    }
  }
  throw std::logic_error("unhandled formula kind");
}

namespace {

// Draws a non-null entry proportionally to its weight; nullptr when the role
// has no non-null weight at all.
const RoleEntry* draw_related(const RoleDistribution& role, Rng& rng) {
  double total = 0.0;
  for (const RoleEntry& e : role.entries()) {
    if (e.target) total += e.weight;
  }
  if (total <= 0.0) return nullptr;
  const double u = rng.uniform() * total;
  double acc = 0.0;
  const RoleEntry* last = nullptr;
  for (const RoleEntry& e : role.entries()) {
    if (!e.target || e.weight <= 0.0) continue;
    acc += e.weight;
    last = &e;
    if (u < acc) return &e;
  }
  return last;
}

// True when every sample of f in ctx is `value`, judged from the structure
// and exact 0/1 leaves rather than from evaluated probabilities.
bool certainly(const EvalContext& ctx, const Formula& f, bool value) {
  switch (f.kind()) {
    case Kind::Always:
      return value;
    case Kind::Never:
      return !value;
    case Kind::Prob:
      return f.as<node::Prob>()->p == (value ? 1.0 : 0.0);
    case Kind::Atom:
      return ctx.concept_value(f.as<node::Atom>()->symbol) == (value ? 1.0 : 0.0);
    case Kind::Exists:
      return ctx.role(f.as<node::Exists>()->role).null_weight() ==
             (value ? 0.0 : 1.0);
    case Kind::Conditional: {
      const auto& c = *f.as<node::Conditional>();
      const bool yes = certainly(ctx, c.if_yes, value);
      const bool no = certainly(ctx, c.if_no, value);
      return (yes && no) || (yes && certainly(ctx, c.cond, true)) ||
             (no && certainly(ctx, c.cond, false));
    }
    case Kind::Expectation: {
      // Only individuals that can satisfy the condition ever reach the body.
      // Ignores the attempt cap, whose chance of firing is then negligible.
      const auto& e = *f.as<node::Expectation>();
      bool reachable = false;
      for (const RoleEntry& entry : ctx.role(e.role).entries()) {
        if (!entry.target || entry.weight <= 0.0) continue;
        auto sub = ctx.related(*entry.target);
        if (certainly(*sub, e.condition, false)) continue;
        reachable = true;
        if (!certainly(*sub, e.body, value)) return false;
      }
      return value || reachable;
    }
  }
  return false;
}

// No related individual can ever satisfy the condition, so every attempt
// would fail and the sample is vacuously true.
bool condition_unsatisfiable(const EvalContext& ctx, const RoleDistribution& role,
                             const Formula& condition) {
  for (const RoleEntry& e : role.entries()) {
    if (!e.target || e.weight <= 0.0) continue;
    if (!certainly(*ctx.related(*e.target), condition, false)) return false;
  }
  return true;
}

}  // namespace

bool sample(const EvalContext& ctx, const Formula& f, Rng& rng) {
  switch (f.kind()) {
    case Kind::Always:
      return true;
    case Kind::Never:
      return false;
    case Kind::Prob:
      return rng.bernoulli(f.as<node::Prob>()->p);
    case Kind::Atom:
      return rng.bernoulli(ctx.concept_value(f.as<node::Atom>()->symbol));
    case Kind::Conditional: {
      const auto& c = *f.as<node::Conditional>();
      return sample(ctx, c.cond, rng) ? sample(ctx, c.if_yes, rng)
                                      : sample(ctx, c.if_no, rng);
    }
    case Kind::Expectation: {
      const auto& e = *f.as<node::Expectation>();
      const RoleDistribution& role = ctx.role(e.role);
      if (condition_unsatisfiable(ctx, role, e.condition)) return true;
      for (int attempt = 0; attempt < kMaxConditionAttempts; ++attempt) {
        const RoleEntry* pick = draw_related(role, rng);
        if (!pick) return true;
        auto sub = ctx.related(*pick->target);
        if (sample(*sub, e.condition, rng)) return sample(*sub, e.body, rng);
      }
      return true;
    }
    case Kind::Exists: {
      const RoleDistribution& role = ctx.role(f.as<node::Exists>()->role);
      return !rng.bernoulli(role.null_weight());
    }
  }
  throw std::logic_error("unhandled formula kind");
}

double monte_carlo_estimate(const EvalContext& ctx, const Formula& f,
                            std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample count must be at least 1");
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sample(ctx, f, rng)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

}  // namespace adl
