#include "adl/belief_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "adl/errors.hpp"
#include "adl/formula.hpp"

namespace adl {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

[[noreturn]] void schema_error(const std::string& message) {
  throw ModelError(ModelError::Kind::Schema, message);
}

void require_symbol(std::string_view symbol) {
  if (!is_valid_symbol(symbol)) {
    schema_error("invalid symbol '" + std::string(symbol) + "'");
  }
}

void require_decay(double d, const char* name) {
  if (!(d > 0.0 && d <= 1.0)) {
    schema_error(std::string(name) + " must be in (0, 1]");
  }
}

void validate_strategy(const ConceptStrategy& s) {
  std::visit(overloaded{
                 [](const DirectConceptStrategy& d) {
                   if (!(d.multiplier > 0.0 && d.multiplier <= 1.0)) {
                     schema_error("direct learning_rate must be in (0, 1]");
                   }
                 },
                 [](const StatisticalConceptStrategy& st) {
                   require_decay(st.decay_rate, "decay_rate");
                   require_decay(st.decay_rate_for_decay_rate,
                                 "decay_rate_for_decay_rate");
                   if (st.state && !(st.state->weight >= 0.0 &&
                                     std::isfinite(st.state->sum) &&
                                     std::isfinite(st.state->weight))) {
                     schema_error("statistical state must be finite with "
                                  "weight >= 0");
                   }
                 },
             },
             s);
}

void validate_strategy(const RoleStrategy& s) {
  if (const auto* st = std::get_if<StatisticalRoleStrategy>(&s)) {
    require_decay(st->decay_rate, "decay_rate");
    require_decay(st->decay_rate_for_decay_rate, "decay_rate_for_decay_rate");
    if (st->state && !(st->state->weight >= 0.0)) {
      schema_error("statistical state weight must be >= 0");
    }
  }
}

}  // namespace

// ── RoleDistribution ───────────────────────────────────────────────────────

RoleDistribution::RoleDistribution(std::vector<RoleEntry> entries)
    : entries_(std::move(entries)) {
  std::set<std::string, std::less<>> seen;
  bool has_null = false;
  double sum = 0.0;
  for (const RoleEntry& e : entries_) {
    if (!is_probability(e.weight)) {
      schema_error("role weight outside [0, 1]");
    }
    if (!e.target) {
      if (has_null) schema_error("role has more than one null entry");
      has_null = true;
    } else {
      if (e.target->empty()) schema_error("empty role target name");
      if (!seen.insert(*e.target).second) {
        schema_error("role lists target '" + *e.target + "' twice");
      }
    }
    sum += e.weight;
  }
  if (!entries_.empty() && std::abs(sum - 1.0) > kWeightSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "role weights sum to " << sum << ", not 1";
    throw ModelError(ModelError::Kind::WeightSum, msg.str());
  }
}

double RoleDistribution::null_weight() const {
  for (const RoleEntry& e : entries_) {
    if (!e.target) return e.weight;
  }
  return 0.0;
}

double RoleDistribution::weight_of(std::string_view target) const {
  for (const RoleEntry& e : entries_) {
    if (e.target && *e.target == target) return e.weight;
  }
  return 0.0;
}

bool RoleDistribution::has_non_null() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const RoleEntry& e) { return e.target.has_value(); });
}

std::string to_string(const RoleDistribution& role) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const RoleEntry& e : role.entries()) {
    if (!first) out << ", ";
    first = false;
    out << (e.target ? *e.target : std::string("null")) << ": " << e.weight;
  }
  out << '}';
  return out.str();
}

// ── Concepts ───────────────────────────────────────────────────────────────

double concept_probability(const ConceptSource& source) {
  return std::visit(
      overloaded{
          [](const ConstantConcept& c) { return c.value; },
          [](const ThresholdConcept& t) {
            return prob_greater_than(t.dist, t.cutoff);
          },
      },
      source);
}

// ── BeliefModel ────────────────────────────────────────────────────────────

bool BeliefModel::contains(std::string_view id) const {
  return individuals_.find(id) != individuals_.end();
}

const Individual& BeliefModel::individual(std::string_view id) const {
  auto it = individuals_.find(id);
  if (it == individuals_.end()) {
    throw ResolutionError("unknown individual '" + std::string(id) + "'");
  }
  return it->second;
}

Individual& BeliefModel::individual(std::string_view id) {
  return const_cast<Individual&>(std::as_const(*this).individual(id));
}

ConceptSlot& BeliefModel::concept_slot(std::string_view id,
                                       std::string_view symbol) {
  Individual& ind = individual(id);
  auto it = ind.concepts.find(symbol);
  if (it == ind.concepts.end()) {
    throw ResolutionError("individual '" + std::string(id) +
                          "' has no concept '" + std::string(symbol) + "'");
  }
  return it->second;
}

RoleSlot& BeliefModel::role_slot(std::string_view id,
                                 std::string_view symbol) {
  Individual& ind = individual(id);
  auto it = ind.roles.find(symbol);
  if (it == ind.roles.end()) {
    throw ResolutionError("individual '" + std::string(id) +
                          "' has no role '" + std::string(symbol) + "'");
  }
  return it->second;
}

double BeliefModel::get_concept(std::string_view id,
                                std::string_view symbol) const {
  const Individual& ind = individual(id);
  auto it = ind.concepts.find(symbol);
  if (it == ind.concepts.end()) {
    throw ResolutionError("individual '" + std::string(id) +
                          "' has no concept '" + std::string(symbol) + "'");
  }
  return concept_probability(it->second.source);
}

const RoleDistribution& BeliefModel::get_role(std::string_view id,
                                              std::string_view symbol) const {
  const Individual& ind = individual(id);
  auto it = ind.roles.find(symbol);
  if (it == ind.roles.end()) {
    throw ResolutionError("individual '" + std::string(id) +
                          "' has no role '" + std::string(symbol) + "'");
  }
  return it->second.distribution;
}

void BeliefModel::set_concept_value(std::string_view id,
                                    std::string_view symbol, double value) {
  ConceptSlot& slot = concept_slot(id, symbol);
  auto* constant = std::get_if<ConstantConcept>(&slot.source);
  if (!constant) {
    schema_error("concept '" + std::string(symbol) +
                 "' is a threshold and cannot be assigned");
  }
  if (!is_probability(value)) schema_error("concept value outside [0, 1]");
  constant->value = value;
}

void BeliefModel::set_role(std::string_view id, std::string_view symbol,
                           RoleDistribution role) {
  RoleSlot& slot = role_slot(id, symbol);
  for (const RoleEntry& e : role.entries()) {
    if (e.target && !contains(*e.target)) {
      throw ModelError(ModelError::Kind::DanglingReference,
                       "role target '" + *e.target + "' is not an individual");
    }
  }
  slot.distribution = std::move(role);
}

void BeliefModel::validate() const {
  for (const auto& [name, ind] : individuals_) {
    if (name.empty()) schema_error("empty individual name");
    for (const auto& [symbol, slot] : ind.concepts) {
      require_symbol(symbol);
      if (const auto* c = std::get_if<ConstantConcept>(&slot.source)) {
        if (!is_probability(c->value)) {
          schema_error("concept '" + symbol + "' of '" + name +
                       "' outside [0, 1]");
        }
      } else {
        const auto& t = std::get<ThresholdConcept>(slot.source);
        adl::validate(t.dist);
        if (!std::isfinite(t.cutoff)) schema_error("cutoff must be finite");
        if (slot.learning) {
          schema_error("threshold concept '" + symbol + "' of '" + name +
                       "' cannot be learnt");
        }
      }
      if (slot.learning) validate_strategy(*slot.learning);
    }
    for (const auto& [symbol, slot] : ind.roles) {
      require_symbol(symbol);
      // Re-run the entry checks in case the distribution was edited in place.
      RoleDistribution check(slot.distribution.entries());
      for (const RoleEntry& e : slot.distribution.entries()) {
        if (e.target && !contains(*e.target)) {
          throw ModelError(ModelError::Kind::DanglingReference,
                           "role '" + symbol + "' of '" + name +
                               "' targets unknown individual '" + *e.target +
                               "'");
        }
      }
      if (slot.learning) validate_strategy(*slot.learning);
    }
  }
}

// ── ModelBuilder ───────────────────────────────────────────────────────────

ModelBuilder& ModelBuilder::template_definition(
    std::string name, std::optional<std::string> extends) {
  if (name.empty()) schema_error("empty template name");
  if (templates_.count(name)) {
    throw ModelError(ModelError::Kind::Duplicate,
                     "duplicate template '" + name + "'");
  }
  templates_[name].extends = std::move(extends);
  current_ = Cursor{true, std::move(name)};
  return *this;
}

ModelBuilder& ModelBuilder::individual(std::string name,
                                       std::optional<std::string> extends) {
  if (name.empty()) schema_error("empty individual name");
  if (individuals_.count(name)) {
    throw ModelError(ModelError::Kind::Duplicate,
                     "duplicate individual '" + name + "'");
  }
  individuals_[name].extends = std::move(extends);
  current_ = Cursor{false, std::move(name)};
  return *this;
}

ModelBuilder::Declaration& ModelBuilder::current() {
  if (!current_) {
    schema_error("declare an individual or template before its members");
  }
  auto& table = current_->is_template ? templates_ : individuals_;
  return table.find(current_->name)->second;
}

ModelBuilder& ModelBuilder::constant(std::string symbol, double value) {
  require_symbol(symbol);
  if (!is_probability(value)) {
    schema_error("concept '" + symbol + "' outside [0, 1]");
  }
  current().concepts.insert_or_assign(std::move(symbol),
                                      ConceptSource{ConstantConcept{value}});
  return *this;
}

ModelBuilder& ModelBuilder::threshold(std::string symbol, ContinuousDist dist,
                                      double cutoff) {
  require_symbol(symbol);
  validate(dist);
  if (!std::isfinite(cutoff)) schema_error("cutoff must be finite");
  current().concepts.insert_or_assign(
      std::move(symbol), ConceptSource{ThresholdConcept{dist, cutoff}});
  return *this;
}

ModelBuilder& ModelBuilder::role(std::string symbol,
                                 std::vector<RoleEntry> entries) {
  require_symbol(symbol);
  current().roles.insert_or_assign(std::move(symbol),
                                   RoleDistribution(std::move(entries)));
  return *this;
}

ModelBuilder& ModelBuilder::learn_concept(std::string symbol,
                                          ConceptStrategy strategy) {
  require_symbol(symbol);
  validate_strategy(strategy);
  current().concept_learning.insert_or_assign(std::move(symbol),
                                              std::move(strategy));
  return *this;
}

ModelBuilder& ModelBuilder::learn_role(std::string symbol,
                                       RoleStrategy strategy) {
  require_symbol(symbol);
  validate_strategy(strategy);
  current().role_learning.insert_or_assign(std::move(symbol),
                                           std::move(strategy));
  return *this;
}

ModelBuilder::Declaration ModelBuilder::resolve(
    const Declaration& decl, std::vector<std::string>& chain) const {
  if (!decl.extends) return decl;
  const std::string& parent_name = *decl.extends;
  if (std::find(chain.begin(), chain.end(), parent_name) != chain.end()) {
    schema_error("template inheritance cycle through '" + parent_name + "'");
  }
  auto it = templates_.find(parent_name);
  if (it == templates_.end()) {
    throw ModelError(ModelError::Kind::DanglingReference,
                     "unknown template '" + parent_name + "'");
  }
  chain.push_back(parent_name);
  Declaration merged = resolve(it->second, chain);
  chain.pop_back();

  for (const auto& [k, v] : decl.concepts) merged.concepts.insert_or_assign(k, v);
  for (const auto& [k, v] : decl.roles) merged.roles.insert_or_assign(k, v);
  for (const auto& [k, v] : decl.concept_learning) {
    merged.concept_learning.insert_or_assign(k, v);
  }
  for (const auto& [k, v] : decl.role_learning) {
    merged.role_learning.insert_or_assign(k, v);
  }
  merged.extends.reset();
  return merged;
}

BeliefModel ModelBuilder::build() const {
  BeliefModel model;
  for (const auto& [name, decl] : individuals_) {
    std::vector<std::string> chain;
    const Declaration full = resolve(decl, chain);
    Individual ind;
    for (const auto& [symbol, source] : full.concepts) {
      ind.concepts.emplace(symbol, ConceptSlot{source, std::nullopt});
    }
    for (const auto& [symbol, role] : full.roles) {
      ind.roles.emplace(symbol, RoleSlot{role, std::nullopt});
    }
    for (const auto& [symbol, strategy] : full.concept_learning) {
      auto it = ind.concepts.find(symbol);
      if (it == ind.concepts.end()) {
        schema_error("learning declared for unknown concept '" + symbol +
                     "' of '" + name + "'");
      }
      it->second.learning = strategy;
    }
    for (const auto& [symbol, strategy] : full.role_learning) {
      auto it = ind.roles.find(symbol);
      if (it == ind.roles.end()) {
        schema_error("learning declared for unknown role '" + symbol +
                     "' of '" + name + "'");
      }
      it->second.learning = strategy;
    }
    model.individuals_.emplace(name, std::move(ind));
  }
  model.validate();
  return model;
}

}  // namespace adl
