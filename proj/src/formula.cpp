#include "adl/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "adl/errors.hpp"

namespace adl {

namespace {

constexpr std::array<std::string_view, 4> kKeywords = {"always", "never",
                                                       "given", "exists"};

void require_symbol(std::string_view symbol, const char* what) {
  if (!is_valid_symbol(symbol)) {
    throw FormulaError(std::string("invalid ") + what + " name '" +
                       std::string(symbol) + "'");
  }
}

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_valid_symbol(std::string_view symbol) {
  if (symbol.empty()) return false;
  auto head = static_cast<unsigned char>(symbol.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  for (char c : symbol) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || u == '_')) return false;
  }
  return !is_keyword(symbol);
}

Formula::Formula() : Formula(Node{node::Always{}}) {}

Formula::Formula(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

Formula Formula::always() {
  static const Formula f{Node{node::Always{}}};
  return f;
}

Formula Formula::never() {
  static const Formula f{Node{node::Never{}}};
  return f;
}

Formula Formula::prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw FormulaError("probability constant outside [0, 1]");
  }
  return Formula{Node{node::Prob{p}}};
}

Formula Formula::atom(std::string symbol) {
  require_symbol(symbol, "concept");
  return Formula{Node{node::Atom{std::move(symbol)}}};
}

Formula Formula::conditional(Formula cond, Formula if_yes, Formula if_no) {
  return Formula{Node{node::Conditional{std::move(cond), std::move(if_yes),
                                        std::move(if_no)}}};
}

Formula Formula::expectation(std::string role, Formula body,
                             Formula condition) {
  require_symbol(role, "role");
  return Formula{Node{node::Expectation{std::move(role), std::move(body),
                                        std::move(condition)}}};
}

Formula Formula::exists(std::string role) {
  require_symbol(role, "role");
  return Formula{Node{node::Exists{std::move(role)}}};
}

std::size_t Formula::child_count() const {
  switch (kind()) {
    case Kind::Conditional:
      return 3;
    case Kind::Expectation:
      return 2;
    default:
      return 0;
  }
}

const Formula& Formula::child(std::size_t index) const {
  if (const auto* c = as<node::Conditional>()) {
    switch (index) {
      case 0: return c->cond;
      case 1: return c->if_yes;
      case 2: return c->if_no;
    }
  } else if (const auto* e = as<node::Expectation>()) {
    switch (index) {
      case 0: return e->body;
      case 1: return e->condition;
    }
  }
  throw PathError("child index " + std::to_string(index) +
                  " out of range for " + to_string(*this));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Always:
    case Kind::Never:
      return true;
    case Kind::Prob:
      return a.as<node::Prob>()->p == b.as<node::Prob>()->p;
    case Kind::Atom:
      return a.as<node::Atom>()->symbol == b.as<node::Atom>()->symbol;
    case Kind::Exists:
      return a.as<node::Exists>()->role == b.as<node::Exists>()->role;
    case Kind::Conditional: {
      const auto& x = *a.as<node::Conditional>();
      const auto& y = *b.as<node::Conditional>();
      return x.cond == y.cond && x.if_yes == y.if_yes && x.if_no == y.if_no;
    }
    case Kind::Expectation: {
      const auto& x = *a.as<node::Expectation>();
      const auto& y = *b.as<node::Expectation>();
      return x.role == y.role && x.body == y.body && x.condition == y.condition;
    }
  }
  return false;
}

Formula conjunction(Formula a, Formula b) {
  return Formula::conditional(std::move(a), std::move(b), Formula::never());
}

Formula disjunction(Formula a, Formula b) {
  return Formula::conditional(std::move(a), Formula::always(), std::move(b));
}

Formula negation(Formula a) {
  return Formula::conditional(std::move(a), Formula::never(), Formula::always());
}

Formula implication(Formula a, Formula b) {
  return Formula::conditional(std::move(a), std::move(b), Formula::always());
}

Formula expect(std::string role, Formula a) {
  return Formula::expectation(std::move(role), std::move(a), Formula::always());
}

Formula exists_via_expect(std::string role, Formula a) {
  return negation(
      Formula::expectation(std::move(role), Formula::never(), std::move(a)));
}

Formula build_abbreviation(Abbreviation kind, Formula a,
                           std::optional<Formula> b,
                           std::optional<std::string> role) {
  const bool binary = kind == Abbreviation::And || kind == Abbreviation::Or ||
                      kind == Abbreviation::Implies;
  const bool role_based = kind == Abbreviation::Expect ||
                          kind == Abbreviation::ExistsViaExpect;
  if (binary && (!b || role)) {
    throw ArityError("binary abbreviation takes exactly two formulas");
  }
  if (kind == Abbreviation::Not && (b || role)) {
    throw ArityError("complement takes exactly one formula");
  }
  if (role_based && (b || !role)) {
    throw ArityError("role abbreviation takes a role and one formula");
  }
  switch (kind) {
    case Abbreviation::And:
      return conjunction(std::move(a), std::move(*b));
    case Abbreviation::Or:
      return disjunction(std::move(a), std::move(*b));
    case Abbreviation::Not:
      return negation(std::move(a));
    case Abbreviation::Implies:
      return implication(std::move(a), std::move(*b));
    case Abbreviation::Expect:
      return expect(std::move(*role), std::move(a));
    case Abbreviation::ExistsViaExpect:
      return exists_via_expect(std::move(*role), std::move(a));
  }
  throw ArityError("unknown abbreviation");
}

const Formula& subterm_at(const Formula& f, std::span<const std::size_t> at) {
  const Formula* cur = &f;
  for (std::size_t index : at) {
    if (index >= cur->child_count()) {
      throw PathError("path index " + std::to_string(index) +
                      " does not address a child of " + to_string(*cur));
    }
    cur = &cur->child(index);
  }
  return *cur;
}

Formula substitute_at(const Formula& f, std::span<const std::size_t> at,
                      Formula replacement) {
  if (at.empty()) return replacement;
  const std::size_t index = at.front();
  if (index >= f.child_count()) {
    throw PathError("path index " + std::to_string(index) +
                    " does not address a child of " + to_string(f));
  }
  Formula inner = substitute_at(f.child(index), at.subspan(1),
                                std::move(replacement));
  if (const auto* c = f.as<node::Conditional>()) {
    std::array<Formula, 3> kids{c->cond, c->if_yes, c->if_no};
    kids[index] = std::move(inner);
    return Formula::conditional(std::move(kids[0]), std::move(kids[1]),
                                std::move(kids[2]));
  }
  const auto& e = *f.as<node::Expectation>();
  return index == 0 ? Formula::expectation(e.role, std::move(inner), e.condition)
                    : Formula::expectation(e.role, e.body, std::move(inner));
}

namespace {

void print_probability(std::string& out, double p) {
  // Shortest fixed-point text that reads back to the same double.
  std::array<char, 400> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), p,
                           std::chars_format::fixed);
  out.append(buf.data(), res.ptr);
}

void print(std::string& out, const Formula& f) {
  switch (f.kind()) {
    case Kind::Always:
      out += "always";
      return;
    case Kind::Never:
      out += "never";
      return;
    case Kind::Prob:
      print_probability(out, f.as<node::Prob>()->p);
      return;
    case Kind::Atom:
      out += f.as<node::Atom>()->symbol;
      return;
    case Kind::Exists:
      out += "exists(";
      out += f.as<node::Exists>()->role;
      out += ')';
      return;
    case Kind::Conditional: {
      const auto& c = *f.as<node::Conditional>();
      out += '(';
      print(out, c.cond);
      out += " ? ";
      print(out, c.if_yes);
      out += " : ";
      print(out, c.if_no);
      out += ')';
      return;
    }
    case Kind::Expectation: {
      const auto& e = *f.as<node::Expectation>();
      out += '[';
      out += e.role;
      out += "](";
      print(out, e.body);
      out += " given ";
      print(out, e.condition);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(out, f);
  return out;
}

std::size_t depth(const Formula& f) {
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    deepest = std::max(deepest, depth(f.child(i)));
  }
  return deepest + 1;
}

}  // namespace adl
