// ============================================================================
// adl/belief_model.hpp -- knowledge base of individuals, concepts and roles
// ============================================================================
//
// A BeliefModel maps individual names to the concepts and roles they carry.
// Concepts are probabilities, either constants or the tail of a continuous
// distribution above a cutoff.  Roles are mutually exclusive distributions
// over other individuals and the null individual ("no relation").
//
// Models are built either with ModelBuilder or from the JSON model format
// (load_model).  Both routes go through the same validation, so a model in
// hand always satisfies:
//   - every role target names an individual of the model;
//   - role weights are in [0, 1], sum to 1 within 1e-9, targets distinct,
//     at most one null entry (a role with no entries is allowed);
//   - concept constants are in [0, 1];
//   - only constant concepts carry a learning strategy.
//
// Reads are safe from many threads.  Any mutation (set_concept_value,
// set_role, strategy state updates) needs exclusive access to the model.
// ============================================================================

#ifndef ADL_BELIEF_MODEL_HPP
#define ADL_BELIEF_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adl/distributions.hpp"
#include "adl/strategy.hpp"

namespace adl {

using IndividualId = std::string;

inline constexpr double kWeightSumTolerance = 1e-9;

struct RoleEntry {
  std::optional<IndividualId> target;  // nullopt is the null individual
  double weight = 0.0;

  friend bool operator==(const RoleEntry&, const RoleEntry&) = default;
};

class RoleDistribution {
 public:
  RoleDistribution() = default;

  // Throws ModelError (Schema or WeightSum) if the entries are malformed.
  explicit RoleDistribution(std::vector<RoleEntry> entries);

  const std::vector<RoleEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  double null_weight() const;
  double weight_of(std::string_view target) const;
  bool has_non_null() const;

  friend bool operator==(const RoleDistribution&,
                         const RoleDistribution&) = default;

 private:
  std::vector<RoleEntry> entries_;
};

struct ConstantConcept {
  double value;
};

struct ThresholdConcept {
  ContinuousDist dist;
  double cutoff;
};

using ConceptSource = std::variant<ConstantConcept, ThresholdConcept>;

double concept_probability(const ConceptSource& source);

struct ConceptSlot {
  ConceptSource source;
  std::optional<ConceptStrategy> learning;
};

struct RoleSlot {
  RoleDistribution distribution;
  std::optional<RoleStrategy> learning;
};

struct Individual {
  std::map<std::string, ConceptSlot, std::less<>> concepts;
  std::map<std::string, RoleSlot, std::less<>> roles;
};

class BeliefModel {
 public:
  using IndividualMap = std::map<IndividualId, Individual, std::less<>>;

  bool contains(std::string_view id) const;
  const IndividualMap& individuals() const { return individuals_; }

  // Throw ResolutionError for unknown individuals or symbols.
  const Individual& individual(std::string_view id) const;
  Individual& individual(std::string_view id);
  ConceptSlot& concept_slot(std::string_view id, std::string_view symbol);
  RoleSlot& role_slot(std::string_view id, std::string_view symbol);

  double get_concept(std::string_view id, std::string_view symbol) const;
  const RoleDistribution& get_role(std::string_view id,
                                   std::string_view symbol) const;

  // Only constant concepts can be assigned; value must be in [0, 1].
  void set_concept_value(std::string_view id, std::string_view symbol,
                         double value);
  // Targets must exist in the model.
  void set_role(std::string_view id, std::string_view symbol,
                RoleDistribution role);

  // Re-checks every model invariant; throws ModelError.
  void validate() const;

 private:
  friend class ModelBuilder;

  IndividualMap individuals_;
};

// Declarative construction mirroring the model file.  Calls after
// individual()/template_definition() apply to that declaration:
//
//   BeliefModel m = ModelBuilder()
//       .template_definition("Person")
//           .threshold("tall", Normal{175, 6.5}, 180)
//       .individual("Alice", "Person")
//           .constant("positive", 0.33)
//           .role("conversed_with", {{"Bob", 0.5}, {std::nullopt, 0.5}})
//       .individual("Bob")
//       .build();
//
// Children override what they inherit.  build() resolves inheritance and
// validates everything; declaration errors throw immediately.
class ModelBuilder {
 public:
  ModelBuilder& template_definition(std::string name,
                                    std::optional<std::string> extends = {});
  ModelBuilder& individual(std::string name,
                           std::optional<std::string> extends = {});

  ModelBuilder& constant(std::string symbol, double value);
  ModelBuilder& threshold(std::string symbol, ContinuousDist dist,
                          double cutoff);
  ModelBuilder& role(std::string symbol, std::vector<RoleEntry> entries);
  ModelBuilder& learn_concept(std::string symbol, ConceptStrategy strategy);
  ModelBuilder& learn_role(std::string symbol, RoleStrategy strategy);

  BeliefModel build() const;

 private:
  struct Declaration {
    std::optional<std::string> extends;
    std::map<std::string, ConceptSource, std::less<>> concepts;
    std::map<std::string, RoleDistribution, std::less<>> roles;
    std::map<std::string, ConceptStrategy, std::less<>> concept_learning;
    std::map<std::string, RoleStrategy, std::less<>> role_learning;
  };

  Declaration& current();
  Declaration resolve(const Declaration& decl,
                      std::vector<std::string>& chain) const;

  std::map<std::string, Declaration, std::less<>> templates_;
  std::map<std::string, Declaration, std::less<>> individuals_;
  struct Cursor {
    bool is_template;
    std::string name;
  };
  std::optional<Cursor> current_;
};

// JSON model format.  save_model writes individuals with inheritance already
// resolved, so templates do not survive a round trip; the semantics do.
BeliefModel load_model(std::string_view json_text);
std::string save_model(const BeliefModel& model);

// File helpers; I/O failures throw IoError.
BeliefModel load_model_file(const std::string& path);
void save_model_file(const BeliefModel& model, const std::string& path);

std::string to_string(const RoleDistribution& role);

}  // namespace adl

#endif  // ADL_BELIEF_MODEL_HPP
