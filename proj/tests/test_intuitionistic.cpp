#include <doctest.h>

#include <string>

#include "sxl/intuitionistic.hpp"
#include "sxl/io.hpp"
#include "sxl/random_gen.hpp"

using namespace sxl;

namespace {

const Signature mall = Signature::builtin("mall");
const Signature ll = Signature::builtin("ll");

IntuitSequent iseq(const std::string& text, const Signature& sig) {
  return parse_intuit_sequent(text, sig);
}
Formula cform(const std::string& text, const Signature& sig) {
  return parse_formula(text, sig);
}

}  // namespace

TEST_CASE("decide: dr consumes the right formula, never copying") {
  auto decisions = decide(mall, iseq("lin:p |- lin:p", mall));
  REQUIRE(decisions.size() == 1);
  CHECK(decisions[0].rule == "dr");
  CHECK(decisions[0].result.shape() == IntuitSequent::Shape::right_focus);

  // Same over an unrestricted zone: still consumed.
  auto decisions2 = decide(Signature::builtin("l"), iseq("lin:p |- lin:p",
                                                         Signature::builtin("l")));
  REQUIRE(decisions2.size() == 1);
  CHECK(decisions2[0].rule == "dr");
}

TEST_CASE("decide: left decisions mirror the classical calculus") {
  auto decisions = decide(ll, iseq("u:(p -o 'n) |- lin:'n", ll));
  REQUIRE(decisions.size() == 1);
  CHECK(decisions[0].rule == "udl");

  // A negative atom is a negative formula, hence a legal left focus; here
  // it closes by nl against the matching right atom.
  auto on_atom = decide(ll, iseq("u:'n |- lin:'n", ll));
  REQUIRE(on_atom.size() == 1);
  CHECK(on_atom[0].rule == "udl");
  auto rules = synthetic_expansions(ll, iseq("u:'n |- lin:'n", ll));
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].premises.empty());
}

TEST_CASE("decide: a lone negative right atom leaves nothing to do") {
  CHECK(decide(mall, iseq("|- lin:'n", mall)).empty());
}

TEST_CASE("focus: lolli sends the right formula to the consequent") {
  auto focused = IntuitSequent::left_focus(
      Context({{"lin", Formula::pos_atom("p")}}), cform("p -o 'm", mall),
      {"lin", Formula::neg_atom("m")});
  auto instances = focus_step(mall, focused);
  // Two splits of {lin:p}; in both the right formula stays with the
  // consequent.
  REQUIRE(instances.size() == 2);
  for (const auto& inst : instances) {
    CHECK(inst.rule == "lr-o");
    REQUIRE(inst.premises.size() == 2);
    CHECK(inst.premises[0].shape() == IntuitSequent::Shape::right_focus);
    CHECK(inst.premises[1].shape() == IntuitSequent::Shape::left_focus);
    CHECK(inst.premises[1].right_passive() ==
          ZonedFormula{"lin", Formula::neg_atom("m")});
  }
  // The whole phase closes: antecedent by pr, consequent by nl.
  auto rules = synthetic_expansions(
      mall, iseq("lin:p, lin:(p -o 'm) |- lin:'m", mall));
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].premises.empty());
}

TEST_CASE("focus: bang side condition ranges over the left context only") {
  auto focused = IntuitSequent::right_focus(
      Context({{"lin", Formula::pos_atom("p")}}), cform("![lin] 'n", mall));
  auto instances = focus_step(mall, focused);
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].rule == "rr!lin");
  REQUIRE(instances[0].premises.size() == 1);
  const auto& premise = instances[0].premises[0];
  CHECK(premise.shape() == IntuitSequent::Shape::active_r);
  CHECK(premise.right_active() == Formula::neg_atom("n"));
  CHECK(premise.left_passive().size() == 1);
}

TEST_CASE("focus: qmark side condition covers the right-hand zone") {
  auto focused = IntuitSequent::left_focus({}, cform("?[u] p", ll),
                                           {"lin", Formula::neg_atom("q")});
  CHECK(focus_step(ll, focused).empty());  // u <= lin fails

  auto ok = IntuitSequent::left_focus({}, cform("?[lin] p", ll),
                                      {"u", Formula::neg_atom("q")});
  auto instances = focus_step(ll, ok);
  REQUIRE(instances.size() == 1);  // lin <= u holds
  CHECK(instances[0].rule == "lr?lin");
}

TEST_CASE("focus: nl needs the matching right atom and unrestricted rest") {
  auto match = IntuitSequent::left_focus(Context({{"u", Formula::neg_atom("m")}}),
                                         Formula::neg_atom("n"),
                                         {"lin", Formula::neg_atom("n")});
  auto instances = focus_step(ll, match);
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].rule == "nl");

  auto mismatch = IntuitSequent::left_focus({}, Formula::neg_atom("n"),
                                            {"lin", Formula::neg_atom("q")});
  CHECK(focus_step(ll, mismatch).empty());

  auto blocked = IntuitSequent::left_focus(
      Context({{"lin", Formula::neg_atom("m")}}), Formula::neg_atom("n"),
      {"lin", Formula::neg_atom("n")});
  CHECK(focus_step(ll, blocked).empty());
}

TEST_CASE("active: right-active work precedes left-active work") {
  auto active = IntuitSequent::active_r(
      {}, FormulaBag({Formula::pos_atom("p")}), cform("p -o 'n", mall));
  IntuitActiveRun run = [&] {
    Budget b;
    return active_normalize_trace(mall, active, b);
  }();
  REQUIRE(run.steps.size() >= 2);
  CHECK(run.steps[0].rule == "rr-o");
  REQUIRE(run.premises.size() == 1);
  CHECK(run.premises.front() ==
        iseq("lin:p, lin:p |- lin:'n", mall));
}

TEST_CASE("active: branching and pruning mirror the classical phase") {
  auto branches = IntuitSequent::active_r({}, {}, cform("'n & 'm", mall));
  Multiset<IntuitSequent> expected;
  expected.insert(iseq("|- lin:'n", mall));
  expected.insert(iseq("|- lin:'m", mall));
  CHECK(active_normalize(mall, branches) == expected);

  auto pruned = IntuitSequent::active_p({}, FormulaBag({Formula::zero()}),
                                        {"lin", Formula::pos_atom("p")});
  CHECK(active_normalize(mall, pruned).empty());

  auto top = IntuitSequent::active_r({}, {}, Formula::top());
  CHECK(active_normalize(mall, top).empty());
}

TEST_CASE("active confluence on random intuitionistic sequents") {
  Rng rng(211);
  for (int trial = 0; trial < 120; ++trial) {
    Signature sig = random_signature(rng);
    IntuitSequent seq = random_intuit_active(rng, sig);
    auto canonical = active_normalize(sig, seq);
    for (int run = 0; run < 10; ++run)
      CHECK(active_normalize_random(sig, seq, rng) == canonical);
  }
}

TEST_CASE("synthetics: identity sequents close in one phase") {
  auto rules = synthetic_expansions(mall, iseq("lin:p |- lin:p", mall));
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].premises.empty());
  CHECK(rules[0].trace[0].rule == "dr");

  auto neg = synthetic_expansions(mall, iseq("lin:'n |- lin:'n", mall));
  REQUIRE(neg.size() == 1);
  CHECK(neg[0].premises.empty());
  CHECK(neg[0].trace[0].rule == "rdl");
}

TEST_CASE("every reachable sequent keeps a single right-hand entity") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    Signature sig = random_signature(rng);
    IntuitSequent seq = random_intuit_neutral(rng, sig);
    Budget budget(200000);
    std::vector<SyntheticRule<IntuitSequent>> rules;
    try {
      rules = expand_candidates(sig, seq, budget);
    } catch (const ResourceLimitError&) {
      continue;
    }
    for (const auto& rule : rules) {
      for (const auto& p : rule.premises) {
        CHECK(p.is_neutral());
        CHECK(p.has_right_passive());
      }
      for (const auto& p : rule.stuck) {
        bool right_ok = p.shape() == IntuitSequent::Shape::right_focus ||
                        p.has_right_passive();
        CHECK(right_ok);
      }
      auto replayed = replay_trace(sig, seq, rule.trace);
      CHECK(replayed.premises == rule.premises);
      CHECK(replayed.stuck == rule.stuck);
    }
  }
}

TEST_CASE("intuitionistic sequents reject par and bot") {
  CHECK_THROWS_AS(iseq("lin:('n | 'm) |- lin:p", mall), ParseError);
  CHECK_THROWS_AS(
      IntuitSequent::right_focus({}, Formula::bang("lin", Formula::bot())),
      SequentError);
}

TEST_CASE("sequent text and JSON round trips") {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    Signature sig = random_signature(rng);
    IntuitSequent seq = random_intuit_neutral(rng, sig);
    CHECK(parse_intuit_sequent(print_sequent(seq), sig) == seq);
    CHECK(intuit_sequent_from_json(sequent_to_json(seq)) == seq);
    IntuitSequent act = random_intuit_active(rng, sig);
    CHECK(intuit_sequent_from_json(sequent_to_json(act)) == act);
  }
}

TEST_CASE("exactly one right entry is enforced at parse time") {
  CHECK_THROWS_AS(iseq("lin:p |- lin:p, lin:q", mall), ParseError);
  CHECK_THROWS_AS(iseq("lin:p |-", mall), ParseError);
}
