#include <doctest.h>

#include <set>
#include <string>

#include "sxl/formula.hpp"
#include "sxl/io.hpp"
#include "sxl/random_gen.hpp"

using namespace sxl;

namespace {
const Signature ll = Signature::builtin("ll");
const Signature mall = Signature::builtin("mall");
}  // namespace

TEST_CASE("parsing follows the grammar") {
  Formula f = parse_formula("![w] (p -o 'n)",
                            Signature::make({{"w", "u"}, {}, "w", {}}));
  CHECK(f.kind() == FKind::bang);
  CHECK(f.zone() == "w");
  CHECK(f.body().kind() == FKind::lolli);
  CHECK(f.body().lhs() == Formula::pos_atom("p"));
  CHECK(f.body().rhs() == Formula::neg_atom("n"));

  Formula q = parse_formula("?[u] 'n", ll);
  CHECK(q == Formula::qmark("u", Formula::neg_atom("n")));
}

TEST_CASE("polarity violations are parse errors") {
  CHECK_THROWS_AS(parse_formula("p | q", ll), ParseError);
  CHECK_THROWS_AS(parse_formula("'n * 'm", ll), ParseError);
  CHECK_THROWS_AS(parse_formula("'n -o 'm", ll), ParseError);
  CHECK_THROWS_AS(parse_formula("![u] (p * q)", ll), ParseError);
  CHECK_THROWS_AS(parse_formula("?[u] top", ll), ParseError);
}

TEST_CASE("unknown zones and reserved atoms are rejected") {
  CHECK_THROWS_AS(parse_formula("![w] 'n", ll), ParseError);
  CHECK_THROWS_AS(parse_formula("k", ll), ParseError);
  CHECK_THROWS_AS(parse_formula("'k", ll), ParseError);
  CHECK_THROWS_AS(parse_formula("n^", ll), ParseError);
  CHECK_NOTHROW(parse_formula("'k", ll, {.allow_reserved = true}));
  CHECK_NOTHROW(parse_formula("n^", ll, {.allow_reserved = true}));
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_formula("p * ", ll);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("precedence: binary tier binds tighter than lolli") {
  Formula f = parse_formula("p * q -o 'n & 'm", ll);
  CHECK(f.kind() == FKind::lolli);
  CHECK(f.lhs().kind() == FKind::tensor);
  CHECK(f.rhs().kind() == FKind::with);

  // -o is right-associative.
  Formula g = parse_formula("p -o q -o 'n", ll);
  CHECK(g.kind() == FKind::lolli);
  CHECK(g.rhs().kind() == FKind::lolli);

  // The binary tier is left-associative, also across operators.
  Formula h = parse_formula("p * q + a", ll);
  CHECK(h.kind() == FKind::plus);
  CHECK(h.lhs().kind() == FKind::tensor);
}

TEST_CASE("polarity_of covers every constructor") {
  CHECK(polarity_of(Formula::one()) == Polarity::positive);
  CHECK(polarity_of(Formula::zero()) == Polarity::positive);
  CHECK(polarity_of(Formula::top()) == Polarity::negative);
  CHECK(polarity_of(Formula::bot()) == Polarity::negative);
  CHECK(polarity_of(Formula::pos_atom("p")) == Polarity::positive);
  CHECK(polarity_of(Formula::neg_atom("n")) == Polarity::negative);
  Formula n = Formula::neg_atom("n");
  Formula p = Formula::pos_atom("p");
  CHECK(polarity_of(Formula::lolli(p, n)) == Polarity::negative);
  CHECK(polarity_of(Formula::bang("lin", n)) == Polarity::positive);
  CHECK(polarity_of(Formula::qmark("lin", p)) == Polarity::negative);
  CHECK(polarity_of(Formula::tensor(p, p)) == Polarity::positive);
  CHECK(polarity_of(Formula::plus(p, p)) == Polarity::positive);
  CHECK(polarity_of(Formula::with(n, n)) == Polarity::negative);
  CHECK(polarity_of(Formula::par(n, n)) == Polarity::negative);
}

TEST_CASE("dual_atom maps negative atoms to fresh positive ones") {
  Formula n = Formula::neg_atom("n");
  CHECK(dual_atom(n) == Formula::pos_atom("n^"));
  CHECK(dual_atom(Formula::neg_atom("foo")) == Formula::pos_atom("foo^"));
  CHECK_THROWS_AS(dual_atom(Formula::pos_atom("p")), FormulaError);
  CHECK_THROWS_AS(dual_atom(Formula::top()), FormulaError);
}

TEST_CASE("dual_atom is injective on generated atom sets") {
  Rng rng(7);
  std::set<Formula> names, duals;
  for (int i = 0; i < 200; ++i) {
    Formula n = gen::neg_atom(rng);
    if (names.insert(n).second) CHECK(duals.insert(dual_atom(n)).second);
  }
  CHECK(names.size() == duals.size());
}

TEST_CASE("print/parse round trip on random formulas") {
  Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    Signature sig = random_signature(rng);
    Polarity pol = i % 2 ? Polarity::positive : Polarity::negative;
    Formula f = random_formula(rng, sig, pol, 4, false);
    std::string text = print_formula(f);
    CAPTURE(text);
    CHECK(parse_formula(text, sig) == f);
  }
  // Split-form zone names round trip too.
  Signature split = ll.split();
  for (int i = 0; i < 100; ++i) {
    Formula f = random_formula(rng, split, Polarity::negative, 3, false);
    CHECK(parse_formula(print_formula(f), split) == f);
  }
}

TEST_CASE("unicode pretty printing") {
  Formula f = parse_formula("![u] (p -o 'n & bot)", ll);
  CHECK(print_formula(f, PrintStyle::unicode) ==
        "!_u (p ⊸ 'n & ⊥)");
  CHECK(print_formula(parse_formula("p * q + 1", ll), PrintStyle::unicode) ==
        "p ⊗ q ⊕ 1");
}

TEST_CASE("formula JSON round trip") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Signature sig = random_signature(rng);
    Formula f = random_formula(
        rng, sig, i % 2 ? Polarity::positive : Polarity::negative, 4, false);
    CHECK(formula_from_json(formula_to_json(f)) == f);
  }
}

TEST_CASE("atom names must be nonempty and well-formed") {
  CHECK_THROWS_AS(Formula::pos_atom(""), FormulaError);
  CHECK_THROWS_AS(parse_formula("", mall), ParseError);
  CHECK_THROWS_AS(parse_formula("p q", mall), ParseError);
}
