#include "adl/learning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <variant>

#include "adl/errors.hpp"

namespace adl {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};

double clamp01(double x) {
  if (std::isnan(x)) return 0.0;
  return std::clamp(x, 0.0, 1.0);
}

double posterior_of(std::span<const TargetWeight> posterior,
                    std::string_view target) {
  for (const TargetWeight& tw : posterior) {
    if (tw.target == target) return tw.weight;
  }
  return 0.0;
}

// Rescales the non-null entries so the whole distribution sums to one while
// the null weight stays put.
RoleDistribution with_non_null_weights(const RoleDistribution& role,
                                       std::vector<double> weights) {
  const double null_weight = role.null_weight();
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<RoleEntry> entries;
  entries.reserve(role.entries().size());
  std::size_t i = 0;
  for (const RoleEntry& e : role.entries()) {
    if (!e.target) {
      entries.push_back(e);
      continue;
    }
    double w = weights[i++];
    if (total > 0.0) w = w / total * (1.0 - null_weight);
    entries.push_back({e.target, clamp01(w)});
  }
  return RoleDistribution(std::move(entries));
}

}  // namespace

Influence child_influence(const EvalContext& ctx, const Formula& parent,
                          std::size_t child_index, Influence parent_influence) {
  if (parent.kind() != Kind::Conditional) {
    throw PathError("child influence is defined for conditional parents only");
  }
  if (child_index >= parent.child_count()) {
    throw PathError("child index " + std::to_string(child_index) +
                    " out of range");
  }
  const Formula& child = parent.child(child_index);
  const double p_parent = ctx.eval(parent);
  const double p_child = ctx.eval(child);

  // A child that is certain carries no information to learn from.
  if (p_child <= 0.0 || p_child >= 1.0) {
    return {clamp01(p_child), 0.0};
  }

  const std::size_t at[] = {child_index};
  const double given_true = ctx.eval(substitute_at(parent, at, Formula::always()));
  const double given_false = ctx.eval(substitute_at(parent, at, Formula::never()));

  const double alpha = parent_influence.likelihood;
  double likelihood = 0.0;
  if (alpha > 0.0 && p_parent > 0.0) {
    likelihood += alpha * given_true * p_child / p_parent;
  }
  if (alpha < 1.0 && p_parent < 1.0) {
    likelihood += (1.0 - alpha) * (1.0 - given_true) * p_child / (1.0 - p_parent);
  }
  const double rate =
      parent_influence.learning_rate * std::abs(given_true - given_false);
  return {clamp01(likelihood), clamp01(rate)};
}

std::vector<TargetWeight> role_selection_posterior(
    const EvalContext& ctx, const RoleDistribution& role, const Formula& body,
    const Formula& condition, double likelihood) {
  std::vector<TargetWeight> out;
  double prior_total = 0.0;
  double total = 0.0;
  std::vector<double> priors;
  for (const RoleEntry& e : role.entries()) {
    if (!e.target) continue;
    auto sub = ctx.related(*e.target);
    const double p_cond = sub->eval(condition);
    const double p_body = sub->eval(body);
    const double score =
        e.weight * p_cond *
        (likelihood * p_body + (1.0 - likelihood) * (1.0 - p_body));
    out.push_back({*e.target, score});
    priors.push_back(e.weight);
    prior_total += e.weight;
    total += score;
  }
  if (prior_total <= 0.0) return {};
  if (total > 0.0) {
    for (TargetWeight& tw : out) tw.weight /= total;
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i].weight = priors[i] / prior_total;
    }
  }
  return out;
}

double direct_concept_update(double value, const DirectConceptStrategy& s,
                             Influence influence) {
  const double r = influence.learning_rate * s.multiplier;
  return clamp01(r * influence.likelihood + (1.0 - r) * value);
}

double statistical_concept_update(StatisticalConceptStrategy& s, double value,
                                  Influence influence) {
  if (!s.state) s.state = StatisticalConceptStrategy::State{value, 1.0, s.decay_rate};
  auto& st = *s.state;
  const double r = influence.learning_rate;
  st.sum = st.decay * st.sum + r * influence.likelihood;
  st.weight = st.decay * st.weight + r;
  const double next = st.weight > 0.0 ? st.sum / st.weight : value;
  st.decay = 1.0 - (1.0 - st.decay) * s.decay_rate_for_decay_rate;
  return clamp01(next);
}

RoleDistribution bayes_role_update(const RoleDistribution& role,
                                   std::span<const TargetWeight> posterior,
                                   double learning_rate) {
  if (posterior.empty()) return role;
  const double null_weight = role.null_weight();
  std::vector<double> weights;
  for (const RoleEntry& e : role.entries()) {
    if (!e.target) continue;
    const double bayes = posterior_of(posterior, *e.target) * (1.0 - null_weight);
    weights.push_back(learning_rate * bayes + (1.0 - learning_rate) * e.weight);
  }
  return with_non_null_weights(role, std::move(weights));
}

RoleDistribution statistical_role_update(StatisticalRoleStrategy& s,
                                         const RoleDistribution& role,
                                         std::span<const TargetWeight> posterior,
                                         double learning_rate) {
  if (posterior.empty()) return role;
  if (!s.state) {
    StatisticalRoleStrategy::State st;
    for (const RoleEntry& e : role.entries()) {
      if (e.target) st.sums[*e.target] = e.weight;
    }
    st.weight = 1.0;
    st.decay = s.decay_rate;
    s.state = std::move(st);
  }
  auto& st = *s.state;
  const double null_weight = role.null_weight();
  const double r = learning_rate;
  const double decay = st.decay;
  std::vector<double> weights;
  for (const RoleEntry& e : role.entries()) {
    if (!e.target) continue;
    auto it = st.sums.find(*e.target);
    if (it == st.sums.end()) {
      it = st.sums.emplace(*e.target, e.weight * st.weight).first;
    }
    const double bayes = posterior_of(posterior, *e.target) * (1.0 - null_weight);
    it->second = decay * it->second + r * bayes;
  }
  st.weight = decay * st.weight + r;
  for (const RoleEntry& e : role.entries()) {
    if (!e.target) continue;
    weights.push_back(st.weight > 0.0 ? st.sums.at(*e.target) / st.weight
                                      : e.weight);
  }
  st.decay = 1.0 - (1.0 - decay) * s.decay_rate_for_decay_rate;
  return with_non_null_weights(role, std::move(weights));
}

// ── observe ────────────────────────────────────────────────────────────────

namespace {

struct ConceptInvocation {
  IndividualId individual;
  std::string symbol;
  Influence influence;
};

struct RoleInvocation {
  IndividualId individual;
  std::string symbol;
  std::vector<TargetWeight> posterior;
  Influence influence;
};

using Invocation = std::variant<ConceptInvocation, RoleInvocation>;

class Propagator {
 public:
  explicit Propagator(const BeliefModel& model) : model_(model) {}

  void run(const IndividualId& id, const Formula& f, Influence influence) {
    // Nothing below a zero-rate node can move.
    if (influence.learning_rate <= 0.0) return;
    const ModelContext ctx(model_, id);
    switch (f.kind()) {
      case Kind::Atom: {
        const std::string& symbol = f.as<node::Atom>()->symbol;
        const auto& concepts = model_.individual(id).concepts;
        auto it = concepts.find(symbol);
        if (it == concepts.end()) {
          throw ResolutionError("individual '" + id + "' has no concept '" +
                                symbol + "'");
        }
        if (it->second.learning) {
          invocations_.push_back(ConceptInvocation{id, symbol, influence});
        }
        return;
      }
      case Kind::Conditional:
        for (std::size_t i = 0; i < 3; ++i) {
          run(id, f.child(i), child_influence(ctx, f, i, influence));
        }
        return;
      case Kind::Expectation: {
        const auto& e = *f.as<node::Expectation>();
        const RoleDistribution& role = model_.get_role(id, e.role);
        auto posterior = role_selection_posterior(ctx, role, e.body, e.condition,
                                                  influence.likelihood);
        const auto& slot = model_.individual(id).roles.find(e.role)->second;
        if (slot.learning) {
          invocations_.push_back(RoleInvocation{id, e.role, posterior, influence});
        }
        for (const TargetWeight& tw : posterior) {
          const double rate = influence.learning_rate * tw.weight;
          run(tw.target, e.body, {influence.likelihood, rate});
          // Selection conditions on the condition having been true.
          run(tw.target, e.condition, {1.0, rate});
        }
        return;
      }
      default:
        return;
    }
  }

  std::vector<Invocation>& invocations() { return invocations_; }

 private:
  const BeliefModel& model_;
  std::vector<Invocation> invocations_;
};

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

ObservationReport observe(BeliefModel& model, std::string_view id,
                          const Formula& obs, Influence influence) {
  if (!in_unit_interval(influence.likelihood) ||
      !in_unit_interval(influence.learning_rate)) {
    throw std::invalid_argument("likelihood and learning rate must be in [0, 1]");
  }
  const IndividualId who(id);
  // Resolves every symbol up front, including in pruned branches.
  evaluate(ModelContext(model, who), obs);

  Propagator propagator(model);
  propagator.run(who, obs, influence);

  ObservationReport report;
  std::map<std::pair<std::string, std::string>, std::size_t> concept_index;
  std::map<std::pair<std::string, std::string>, std::size_t> role_index;

  for (Invocation& inv : propagator.invocations()) {
    std::visit(
        overloaded{
            [&](ConceptInvocation& c) {
              ConceptSlot& slot = model.concept_slot(c.individual, c.symbol);
              const double old_value = concept_probability(slot.source);
              const double new_value = std::visit(
                  overloaded{
                      [&](DirectConceptStrategy& s) {
                        return direct_concept_update(old_value, s, c.influence);
                      },
                      [&](StatisticalConceptStrategy& s) {
                        return statistical_concept_update(s, old_value,
                                                          c.influence);
                      },
                  },
                  *slot.learning);
              std::get<ConstantConcept>(slot.source).value = new_value;
              auto key = std::make_pair(c.individual, c.symbol);
              auto [it, fresh] = concept_index.try_emplace(key, report.concepts.size());
              if (fresh) {
                report.concepts.push_back(
                    {c.individual, c.symbol, old_value, new_value});
              } else {
                report.concepts[it->second].new_value = new_value;
              }
            },
            [&](RoleInvocation& r) {
              RoleSlot& slot = model.role_slot(r.individual, r.symbol);
              const RoleDistribution old_value = slot.distribution;
              RoleDistribution new_value = std::visit(
                  overloaded{
                      [&](BayesRoleStrategy&) {
                        return bayes_role_update(old_value, r.posterior,
                                                 r.influence.learning_rate);
                      },
                      [&](StatisticalRoleStrategy& s) {
                        return statistical_role_update(
                            s, old_value, r.posterior, r.influence.learning_rate);
                      },
                  },
                  *slot.learning);
              slot.distribution = new_value;
              auto key = std::make_pair(r.individual, r.symbol);
              auto [it, fresh] = role_index.try_emplace(key, report.roles.size());
              if (fresh) {
                report.roles.push_back(
                    {r.individual, r.symbol, old_value, std::move(new_value)});
              } else {
                report.roles[it->second].new_value = std::move(new_value);
              }
            },
        },
        inv);
  }
  return report;
}

std::string to_string(const ObservationReport& report) {
  std::ostringstream out;
  out.precision(12);
  for (const ConceptChange& c : report.concepts) {
    out << "concept " << c.individual << '.' << c.symbol << ": " << c.old_value
        << " -> " << c.new_value << '\n';
  }
  for (const RoleChange& r : report.roles) {
    out << "role " << r.individual << '.' << r.symbol << ": "
        << to_string(r.old_value) << " -> " << to_string(r.new_value) << '\n';
  }
  return out.str();
}

}  // namespace adl
