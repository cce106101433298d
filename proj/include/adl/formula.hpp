// ============================================================================
// adl/formula.hpp -- sentence trees of aleatoric description logic
// ============================================================================
//
// A Formula is an immutable value wrapping a shared node.  Copies are cheap
// and subtrees may be shared between formulas; cycles cannot be built.
//
// Node types:
//   Always       constant true
//   Never        constant false
//   Prob         constant probability p, e.g. a coin flip at 0.5
//   Atom         independent sampling of a named concept
//   Conditional  (cond ? if_yes : if_no)
//   Expectation  [role](body given condition)
//   Exists       chance that role selects a non-null individual
//
// Conjunction, disjunction, complement and implication have no node of their
// own.  They are built from Conditional by the abbreviation constructors, so
// every evaluator and learner only deals with the seven variants above.
//
// Child indices, used by Path:
//   Conditional  0 = cond, 1 = if_yes, 2 = if_no
//   Expectation  0 = body, 1 = condition
// ============================================================================

#ifndef ADL_FORMULA_HPP
#define ADL_FORMULA_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adl {

class Formula;

namespace node {

struct Always {};
struct Never {};

struct Prob {
  double p;
};

struct Atom {
  std::string symbol;
};

struct Conditional;
struct Expectation;

struct Exists {
  std::string role;
};

}  // namespace node

enum class Kind { Always, Never, Prob, Atom, Conditional, Expectation, Exists };

class Formula {
 public:
  using Node = std::variant<node::Always, node::Never, node::Prob, node::Atom,
                            node::Conditional, node::Expectation, node::Exists>;

  // Defaults to Always.
  Formula();

  static Formula always();
  static Formula never();
  static Formula prob(double p);
  static Formula atom(std::string symbol);
  static Formula conditional(Formula cond, Formula if_yes, Formula if_no);
  static Formula expectation(std::string role, Formula body,
                             Formula condition = always());
  static Formula exists(std::string role);

  const Node& node() const;
  Kind kind() const;

  template <class T>
  const T* as() const {
    return std::get_if<T>(node_.get());
  }

  std::size_t child_count() const;
  const Formula& child(std::size_t index) const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(Node n);

  std::shared_ptr<const Node> node_;
};

namespace node {

struct Conditional {
  Formula cond;
  Formula if_yes;
  Formula if_no;
};

struct Expectation {
  std::string role;
  Formula body;
  Formula condition;
};

}  // namespace node

inline const Formula::Node& Formula::node() const { return *node_; }
inline Kind Formula::kind() const { return static_cast<Kind>(node_->index()); }

// Reserved words of the text syntax; never valid as concept or role names.
bool is_keyword(std::string_view word);

// [A-Za-z_][A-Za-z0-9_]* and not a keyword.
bool is_valid_symbol(std::string_view symbol);

// ── Abbreviations ──────────────────────────────────────────────────────────

Formula conjunction(Formula a, Formula b);   // (a ? b : never)
Formula disjunction(Formula a, Formula b);   // (a ? always : b)
Formula negation(Formula a);                 // (a ? never : always)
Formula implication(Formula a, Formula b);   // (a ? b : always)
Formula expect(std::string role, Formula a);  // [role](a given always)
// Existential over a body: !([role](never given a)).  This is not the same
// sentence as Formula::exists(role), which measures the null entry directly.
Formula exists_via_expect(std::string role, Formula a);

enum class Abbreviation { And, Or, Not, Implies, Expect, ExistsViaExpect };

// Generic entry point that checks operand counts; throws ArityError.
Formula build_abbreviation(Abbreviation kind, Formula a,
                           std::optional<Formula> b = std::nullopt,
                           std::optional<std::string> role = std::nullopt);

// ── Subterm addressing ─────────────────────────────────────────────────────

using Path = std::vector<std::size_t>;

// Throws PathError if any index is out of range.
const Formula& subterm_at(const Formula& f, std::span<const std::size_t> at);
Formula substitute_at(const Formula& f, std::span<const std::size_t> at,
                      Formula replacement);

// ── Printing ───────────────────────────────────────────────────────────────

// Canonical text in the parser's grammar; parse(to_string(f)) == f.
std::string to_string(const Formula& f);

std::size_t depth(const Formula& f);

}  // namespace adl

#endif  // ADL_FORMULA_HPP
