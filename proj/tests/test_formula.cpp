#include "doctest.h"

#include "adl/errors.hpp"
#include "adl/formula.hpp"
#include "support/generators.hpp"

using adl::Formula;
using adl::Kind;

namespace {

const Formula a = Formula::atom("a");
const Formula b = Formula::atom("b");

}  // namespace

TEST_CASE("abbreviations desugar to conditionals and expectations") {
  CHECK(adl::conjunction(a, b) ==
        Formula::conditional(a, b, Formula::never()));
  CHECK(adl::disjunction(a, b) ==
        Formula::conditional(a, Formula::always(), b));
  CHECK(adl::negation(a) ==
        Formula::conditional(a, Formula::never(), Formula::always()));
  CHECK(adl::implication(a, b) ==
        Formula::conditional(a, b, Formula::always()));
  CHECK(adl::expect("friend", a) ==
        Formula::expectation("friend", a, Formula::always()));
  CHECK(adl::exists_via_expect("friend", a) ==
        adl::negation(Formula::expectation("friend", Formula::never(), a)));
}

TEST_CASE("build_abbreviation checks operand counts") {
  using adl::Abbreviation;
  CHECK(adl::build_abbreviation(Abbreviation::And, a, b) == adl::conjunction(a, b));
  CHECK(adl::build_abbreviation(Abbreviation::Not, a) == adl::negation(a));
  CHECK(adl::build_abbreviation(Abbreviation::Expect, a, std::nullopt, "r") ==
        adl::expect("r", a));
  CHECK_THROWS_AS(adl::build_abbreviation(Abbreviation::And, a), adl::ArityError);
  CHECK_THROWS_AS(adl::build_abbreviation(Abbreviation::Not, a, b), adl::ArityError);
  CHECK_THROWS_AS(adl::build_abbreviation(Abbreviation::Expect, a), adl::ArityError);
  CHECK_THROWS_AS(adl::build_abbreviation(Abbreviation::Or, a, b, "r"),
                  adl::ArityError);
}

TEST_CASE("constructors validate their arguments") {
  CHECK_NOTHROW(Formula::prob(0.0));
  CHECK_NOTHROW(Formula::prob(1.0));
  CHECK_THROWS_AS(Formula::prob(1.5), adl::FormulaError);
  CHECK_THROWS_AS(Formula::prob(-0.1), adl::FormulaError);
  CHECK_THROWS_AS(Formula::prob(std::nan("")), adl::FormulaError);
  CHECK_THROWS_AS(Formula::atom(""), adl::FormulaError);
  CHECK_THROWS_AS(Formula::atom("9lives"), adl::FormulaError);
  CHECK_THROWS_AS(Formula::atom("given"), adl::FormulaError);
  CHECK_THROWS_AS(Formula::exists("has space"), adl::FormulaError);
  CHECK_THROWS_AS(Formula::expectation("always", a), adl::FormulaError);
  CHECK(adl::is_valid_symbol("_tmp2"));
  CHECK_FALSE(adl::is_valid_symbol("exists"));
}

TEST_CASE("default formula is always and kinds follow the node") {
  CHECK(Formula().kind() == Kind::Always);
  CHECK(Formula::prob(0.25).kind() == Kind::Prob);
  CHECK(Formula::exists("r").kind() == Kind::Exists);
  CHECK(adl::expect("r", a).kind() == Kind::Expectation);
  CHECK(adl::expect("r", a).child_count() == 2);
  CHECK(a.child_count() == 0);
  CHECK_THROWS_AS(a.child(0), adl::PathError);
}

TEST_CASE("substitute_at") {
  const Formula ab = adl::conjunction(a, b);
  const adl::Path first{0};
  CHECK(adl::substitute_at(ab, first, Formula::always()) ==
        Formula::conditional(Formula::always(), b, Formula::never()));
  CHECK(adl::substitute_at(a, adl::Path{}, b) == b);
  CHECK_THROWS_AS(adl::substitute_at(a, adl::Path{2}, b), adl::PathError);
  CHECK_THROWS_AS(adl::subterm_at(ab, adl::Path{3}), adl::PathError);

  // The original is untouched.
  CHECK(ab == Formula::conditional(a, b, Formula::never()));

  const Formula nested = adl::expect("r", adl::conjunction(a, b));
  CHECK(adl::subterm_at(nested, adl::Path{0, 1}) == b);
  CHECK(adl::substitute_at(nested, adl::Path{0, 1}, a) ==
        adl::expect("r", adl::conjunction(a, a)));
}

TEST_CASE("canonical text") {
  CHECK(adl::to_string(adl::conjunction(a, b)) == "(a ? b : never)");
  CHECK(adl::to_string(adl::expect("friend", Formula::atom("happy"))) ==
        "[friend](happy given always)");
  CHECK(adl::to_string(Formula::prob(0.5)) == "0.5");
  CHECK(adl::to_string(Formula::prob(1)) == "1");
  CHECK(adl::to_string(Formula::exists("r")) == "exists(r)");
}

TEST_CASE("depth counts nodes on the longest path") {
  CHECK(adl::depth(a) == 1);
  CHECK(adl::depth(adl::conjunction(a, adl::negation(b))) == 3);
}

TEST_CASE("property: substituting a subterm by itself is the identity") {
  adl::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Formula f = adl_test::random_formula(rng, {});
    // Walk a random path down to some node.
    adl::Path path;
    const Formula* at = &f;
    while (at->child_count() > 0 && rng.uniform() < 0.7) {
      path.push_back(rng.index(at->child_count()));
      at = &at->child(path.back());
    }
    CHECK(adl::subterm_at(f, path) == *at);
    CHECK(adl::substitute_at(f, path, *at) == f);
    const Formula replaced = adl::substitute_at(f, path, Formula::prob(0.125));
    CHECK(adl::subterm_at(replaced, path) == Formula::prob(0.125));
  }
}
