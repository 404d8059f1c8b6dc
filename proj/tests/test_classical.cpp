#include <doctest.h>

#include <string>
#include <vector>

#include "sxl/classical.hpp"
#include "sxl/io.hpp"
#include "sxl/random_gen.hpp"

using namespace sxl;

namespace {

const Signature mall = Signature::builtin("mall");
const Signature ll = Signature::builtin("ll");

ClassicalSequent cseq(const std::string& text, const Signature& sig) {
  return parse_classical_sequent(text, sig);
}
Formula cform(const std::string& text, const Signature& sig) {
  return parse_formula(text, sig);
}

}  // namespace

TEST_CASE("decide: atom identity sequent has exactly one decision") {
  auto decisions = decide(mall, cseq("lin:p |- lin:p", mall));
  REQUIRE(decisions.size() == 1);
  CHECK(decisions[0].rule == "rdr");
  const auto& focused = decisions[0].result;
  CHECK(focused.shape() == ClassicalSequent::Shape::right_focus);
  CHECK(focused.focus() == Formula::pos_atom("p"));
  CHECK(focused.left_passive().size() == 1);
  CHECK(focused.right_passive().empty());
}

TEST_CASE("decide: unrestricted left decision keeps its copy") {
  auto decisions = decide(ll, cseq("u:'n |- u:'n", ll));
  REQUIRE(decisions.size() == 1);
  CHECK(decisions[0].rule == "udl");
  CHECK(decisions[0].result.left_passive().size() == 1);  // copy retained
}

TEST_CASE("decide: empty sequent has no decisions") {
  CHECK(decide(mall, cseq("|-", mall)).empty());
}

TEST_CASE("decide: wrong-polarity atoms are not focus targets") {
  // Positive atom on the left, negative atom on the right.
  CHECK(decide(mall, cseq("lin:p |- lin:'n", mall)).empty());
}

TEST_CASE("decision cardinality on random sequents") {
  Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    Signature sig = random_signature(rng);
    ClassicalSequent seq = random_classical_neutral(rng, sig);
    for (const auto& d : decide(sig, seq)) {
      std::size_t lp = d.result.left_passive().size();
      std::size_t rp = d.result.right_passive().size();
      if (d.rule == "udr" || d.rule == "udl") {
        CHECK(lp == seq.left_passive().size());
        CHECK(rp == seq.right_passive().size());
      } else if (d.rule == "rdr") {
        CHECK(lp == seq.left_passive().size());
        CHECK(rp + 1 == seq.right_passive().size());
      } else {
        CHECK(lp + 1 == seq.left_passive().size());
        CHECK(rp == seq.right_passive().size());
      }
    }
  }
}

TEST_CASE("focus: pr closes when the remainder is unrestricted") {
  auto focused = ClassicalSequent::right_focus(
      Context({{"u", Formula::neg_atom("m")}, {"lin", Formula::pos_atom("p")}}),
      Formula::pos_atom("p"), {});
  auto instances = focus_step(ll, focused);
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].rule == "pr");
  CHECK(instances[0].premises.empty());

  // A restricted leftover blocks pr.
  auto blocked = ClassicalSequent::right_focus(
      Context({{"lin", Formula::neg_atom("m")}, {"lin", Formula::pos_atom("p")}}),
      Formula::pos_atom("p"), {});
  CHECK(focus_step(ll, blocked).empty());
}

TEST_CASE("focus: exponential side condition") {
  // u <= lin fails, so the bang cannot fire over a lin-zone formula.
  auto focused = ClassicalSequent::right_focus(
      Context({{"lin", Formula::pos_atom("p")}}), cform("![u] 'n", ll), {});
  CHECK(focus_step(ll, focused).empty());

  // Over a u-zone context it fires and hands the operand to the active phase.
  auto ok = ClassicalSequent::right_focus(
      Context({{"u", Formula::neg_atom("m")}}), cform("![u] 'n", ll), {});
  auto instances = focus_step(ll, ok);
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].rule == "rr!u");
  REQUIRE(instances[0].premises.size() == 1);
  CHECK(instances[0].premises[0].shape() == ClassicalSequent::Shape::active);
  CHECK(instances[0].premises[0].right_active() ==
        FormulaBag({Formula::neg_atom("n")}));
}

TEST_CASE("focus: plus emits one instance per injection") {
  auto focused =
      ClassicalSequent::right_focus({}, cform("p + q", mall), {});
  auto instances = focus_step(mall, focused);
  REQUIRE(instances.size() == 2);
  CHECK(instances[0].rule == "rr+1");
  CHECK(instances[1].rule == "rr+2");
  CHECK(instances[0].premises[0].focus() == Formula::pos_atom("p"));
  CHECK(instances[1].premises[0].focus() == Formula::pos_atom("q"));
}

TEST_CASE("focus: zero and top-on-the-left are dead ends") {
  CHECK(focus_step(mall, ClassicalSequent::right_focus({}, Formula::zero(), {}))
            .empty());
  CHECK(focus_step(mall, ClassicalSequent::left_focus({}, Formula::top(), {}))
            .empty());
}

TEST_CASE("focus: tensor split instrumentation counts 2^(n+m)") {
  ExpandStats stats;
  auto focused = ClassicalSequent::right_focus(
      Context({{"lin", Formula::neg_atom("n")}, {"lin", Formula::neg_atom("m")}}),
      cform("p * q", ll), Context({{"lin", Formula::pos_atom("q")}}));
  focus_step(ll, focused, &stats);
  CHECK(stats.binary_splits == 8);  // n=2 left, m=1 right

  // Unrestricted entries are copied, not split.
  ExpandStats stats2;
  auto focused2 = ClassicalSequent::right_focus(
      Context({{"lin", Formula::neg_atom("n")}, {"u", Formula::neg_atom("b")}}),
      cform("p * q", ll), {});
  auto instances = focus_step(ll, focused2, &stats2);
  CHECK(stats2.binary_splits == 2);
  for (const auto& inst : instances)
    for (const auto& premise : inst.premises)
      CHECK(premise.left_passive().contains({"u", Formula::neg_atom("b")}));
}

TEST_CASE("active: with branches and the branches merge") {
  auto active = ClassicalSequent::active({}, {}, FormulaBag({cform("'n & 'm", mall)}), {});
  auto premises = active_normalize(mall, active);
  Multiset<ClassicalSequent> expected;
  expected.insert(cseq("|- lin:'n", mall));
  expected.insert(cseq("|- lin:'m", mall));
  CHECK(premises == expected);
}

TEST_CASE("active: zero on the left prunes the branch") {
  auto active = ClassicalSequent::active({}, FormulaBag({Formula::zero()}), {}, {});
  CHECK(active_normalize(mall, active).empty());
}

TEST_CASE("active: qmark stores its operand in its zone") {
  auto active =
      ClassicalSequent::active({}, {}, FormulaBag({cform("?[u] p", ll)}), {});
  auto premises = active_normalize(ll, active);
  REQUIRE(premises.size() == 1);
  CHECK(premises.front() == cseq("|- u:p", ll));
}

TEST_CASE("active: top prunes, interacting with branching by union") {
  // (top & 'n) normalizes to the 'n premise only.
  auto active = ClassicalSequent::active(
      {}, {}, FormulaBag({cform("top & 'n", mall)}), {});
  auto premises = active_normalize(mall, active);
  REQUIRE(premises.size() == 1);
  CHECK(premises.front() == cseq("|- lin:'n", mall));
}

TEST_CASE("active confluence: random orderings agree with the canonical one") {
  Rng rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    Signature sig = random_signature(rng);
    ClassicalSequent seq = random_classical_active(rng, sig);
    auto canonical = active_normalize(sig, seq);
    for (int run = 0; run < 10; ++run) {
      auto shuffled = active_normalize_random(sig, seq, rng);
      CHECK(shuffled == canonical);
    }
  }
}

TEST_CASE("synthetics: atom identity yields one closed rule") {
  auto rules = synthetic_expansions(mall, cseq("lin:p |- lin:p", mall));
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].premises.empty());
  CHECK(rules[0].stuck.empty());
  REQUIRE(rules[0].trace.size() == 2);
  CHECK(rules[0].trace[0].rule == "rdr");
  CHECK(rules[0].trace[1].rule == "pr");
}

TEST_CASE("synthetics: tensor of bangs produces both premises in one rule") {
  auto seq = cseq("|- lin:(![lin] 'n) * (![lin] 'm)", mall);
  auto rules = synthetic_expansions(mall, seq);
  REQUIRE(rules.size() == 1);
  Multiset<ClassicalSequent> expected;
  expected.insert(cseq("|- lin:'n", mall));
  expected.insert(cseq("|- lin:'m", mall));
  CHECK(rules[0].premises == expected);
}

TEST_CASE("synthetics: no decisions means no rules") {
  CHECK(synthetic_expansions(mall, cseq("lin:p |- lin:'n", mall)).empty());
  CHECK(synthetic_expansions(mall, cseq("|-", mall)).empty());
}

TEST_CASE("synthetics: side condition holds whenever an exponential fires") {
  Rng rng(57);
  Budget budget(200000);
  for (int trial = 0; trial < 120; ++trial) {
    Signature sig = random_signature(rng);
    ClassicalSequent seq = random_classical_neutral(rng, sig);
    std::vector<SyntheticRule<ClassicalSequent>> rules;
    try {
      rules = expand_candidates(sig, seq, budget);
      budget = Budget(200000);
    } catch (const ResourceLimitError&) {
      budget = Budget(200000);
      continue;
    }
    for (const auto& rule : rules)
      for (const auto& step : rule.trace)
        if (step.rule.rfind("rr!", 0) == 0 || step.rule.rfind("lr?", 0) == 0) {
          // Replays must reproduce the premises; the rule names in the trace
          // certify that the side condition was checked on the way.
          auto replayed = replay_trace(sig, seq, rule.trace);
          CHECK(replayed.premises == rule.premises);
        }
  }
}

TEST_CASE("trace replay reproduces premises and stuck leaves") {
  Rng rng(91);
  for (int trial = 0; trial < 100; ++trial) {
    Signature sig = random_signature(rng);
    ClassicalSequent seq = random_classical_neutral(rng, sig);
    Budget budget(200000);
    std::vector<SyntheticRule<ClassicalSequent>> rules;
    try {
      rules = expand_candidates(sig, seq, budget);
    } catch (const ResourceLimitError&) {
      continue;
    }
    for (const auto& rule : rules) {
      auto replayed = replay_trace(sig, seq, rule.trace);
      CHECK(replayed.premises == rule.premises);
      CHECK(replayed.stuck == rule.stuck);
    }
  }
}

TEST_CASE("budget exhaustion raises instead of truncating") {
  Budget tiny(3);
  CHECK_THROWS_AS(
      synthetic_expansions(mall, cseq("|- lin:(![lin] 'n) * (![lin] 'm)", mall),
                           tiny),
      ResourceLimitError);
}

TEST_CASE("sequent JSON round trips") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Signature sig = random_signature(rng);
    ClassicalSequent seq = random_classical_neutral(rng, sig);
    CHECK(classical_sequent_from_json(sequent_to_json(seq)) == seq);
    ClassicalSequent act = random_classical_active(rng, sig);
    CHECK(classical_sequent_from_json(sequent_to_json(act)) == act);
  }
}

TEST_CASE("neutral sequent text round trips") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    Signature sig = random_signature(rng);
    ClassicalSequent seq = random_classical_neutral(rng, sig);
    CHECK(parse_classical_sequent(print_sequent(seq), sig) == seq);
  }
}
