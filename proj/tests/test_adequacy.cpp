#include <doctest.h>

#include <set>
#include <string>

#include "sxl/adequacy.hpp"
#include "sxl/random_gen.hpp"

using namespace sxl;

namespace {

const Signature mall = Signature::builtin("mall");
const Signature ll = Signature::builtin("ll");

ClassicalSequent cseq(const std::string& text, const Signature& sig) {
  return parse_classical_sequent(text, sig);
}
IntuitSequent iseq(const std::string& text, const Signature& sig) {
  return parse_intuit_sequent(text, sig);
}

}  // namespace

TEST_CASE("prove: identity closes at depth 1 with a single derivation") {
  auto r = prove(mall, cseq("lin:p |- lin:p", mall), 1);
  CHECK(r.status == ProveStatus::proved);
  CHECK(r.count == 1);
  REQUIRE(r.derivation.has_value());
  CHECK(r.derivation->premises.empty());

  auto ri = prove(mall, iseq("lin:'n |- lin:'n", mall), 2);
  CHECK(ri.status == ProveStatus::proved);
  CHECK(ri.count == 1);
}

TEST_CASE("prove: dead ends exhaust, bounds leave the search open") {
  auto r = prove(mall, iseq("|- lin:'n", mall), 5);
  CHECK(r.status == ProveStatus::exhausted);
  CHECK(r.count == 0);

  // Two phases are needed: the bang stores p, the next phase closes.
  auto two = cseq("lin:p |- lin:(![lin] ?[lin] p)", mall);
  CHECK(prove(mall, two, 1).status == ProveStatus::open);
  auto done = prove(mall, two, 2);
  CHECK(done.status == ProveStatus::proved);
  CHECK(done.count == 1);
}

TEST_CASE("prove: counts are trace-granular") {
  // Both injections close, with identical (empty) premise multisets.
  auto r = prove(mall, cseq("lin:p |- lin:(p + p)", mall), 1);
  CHECK(r.status == ProveStatus::proved);
  CHECK(r.count == 2);
  CHECK(synthetic_expansions(mall, cseq("lin:p |- lin:(p + p)", mall)).size() ==
        1);
}

TEST_CASE("prove: validation failures surface as errors") {
  Signature z1 = Signature::make({{"w"}, {}, "w", {}});
  ClassicalSequent foreign = cseq("w:p |- w:p", z1);
  CHECK_THROWS_AS(prove(mall, foreign, 1), SequentError);
  CHECK_THROWS_AS(prove(mall, cseq("|-", mall), 0), Error);
  Budget tiny(2);
  CHECK_THROWS_AS(prove(mall, cseq("lin:p |- lin:p", mall), 3, tiny),
                  ResourceLimitError);
}

TEST_CASE("focal adequacy c2i: atom identity pairs with the rdl rule") {
  Budget budget;
  auto report =
      check_focal_adequacy_c2i(mall, cseq("lin:p |- lin:p", mall), budget);
  CHECK(report.bijective());
  REQUIRE(report.pairs.size() == 1);
  CHECK(report.pairs[0].source.premises.empty());
  CHECK(report.pairs[0].target.premises.empty());
  REQUIRE(!report.pairs[0].target.trace.empty());
  CHECK(report.pairs[0].target.trace[0].rule == "rdl");
}

TEST_CASE("focal adequacy c2i: premise pairing indexes line up") {
  Budget budget;
  auto seq = cseq("|- lin:(![lin] 'n) * (![lin] 'm)", mall);
  auto report = check_focal_adequacy_c2i(mall, seq, budget);
  CHECK(report.bijective());
  REQUIRE(report.pairs.size() == 1);
  const auto& pair = report.pairs[0];
  REQUIRE(pair.premise_pairing.size() == 2);
  REQUIRE(pair.source.premises.size() == 2);
  // Each source premise encodes to the target premise it is paired with.
  const auto& sp = pair.source.premises.items();
  const auto& tp = pair.target.premises.items();
  for (auto [si, ti] : pair.premise_pairing)
    CHECK(c2i_sequent(sp[si], mall) == tp[ti]);
}

TEST_CASE("focal adequacy c2i: distinct source rules may share a target") {
  // The ?-store of 1 on the left and the !-store of bot on the right have
  // the same image, so the two source rules collapse onto one target rule.
  Budget budget;
  auto seq = cseq("lin:(?[lin] 1) |- lin:(![lin] bot)", mall);
  auto S = synthetic_expansions(mall, seq);
  REQUIRE(S.size() == 2);
  CHECK(S[0].premises != S[1].premises);
  auto report = check_focal_adequacy_c2i(mall, seq, budget);
  CHECK(report.bijective());
  CHECK(report.pairs.size() == 2);
  std::set<Multiset<IntuitSequent>> targets;
  for (const auto& p : report.pairs) targets.insert(p.target.premises);
  CHECK(targets.size() == 1);
}

TEST_CASE("focal adequacy i2c: lolli survives only with the right split") {
  Budget budget;
  auto report = check_focal_adequacy_i2c(
      mall, iseq("lin:(p -o 'n) |- lin:q", mall), budget);
  CHECK(report.bijective());  // no completed rule on either side

  // A provable lolli instance pairs one completed rule on each side.
  Budget budget2;
  auto report2 = check_focal_adequacy_i2c(
      mall, iseq("lin:p, lin:(p -o 'm) |- lin:'m", mall), budget2);
  CHECK(report2.bijective());
  REQUIRE(report2.pairs.size() == 1);
  CHECK(report2.pairs[0].source.premises.empty());
  CHECK(report2.pairs[0].target.premises.empty());
}

TEST_CASE("focal adequacy i2c: bang emptiness test mirrors dr") {
  Budget budget;
  auto report = check_focal_adequacy_i2c(
      mall, iseq("lin:p |- lin:(![lin] p)", mall), budget);
  CHECK(report.bijective());
  REQUIRE(report.pairs.size() == 1);
  REQUIRE(report.pairs[0].source.premises.size() == 1);
}

TEST_CASE("naive control: the derived lolli rule has no counterpart") {
  Budget budget;
  auto seq = iseq("lin:(p -o 'n) |- lin:q", mall);
  auto report = check_focal_adequacy_naive(mall, seq, budget);
  CHECK_FALSE(report.bijective());
  CHECK(report.unmatched_source.empty());
  REQUIRE(report.unmatched_target.size() == 1);

  // The offending rule is the lolli split that sends the right formula to
  // the antecedent premise: a right focus on p carrying lin:q, and a left
  // focus on 'n with nothing on the right.
  const auto& offending = report.unmatched_target[0];
  CHECK(offending.premises.empty());
  REQUIRE(offending.stuck.size() == 2);
  auto expected_antecedent = ClassicalSequent::right_focus(
      {}, Formula::pos_atom("p"), Context({{"lin", Formula::pos_atom("q")}}));
  auto expected_consequent =
      ClassicalSequent::left_focus({}, Formula::neg_atom("n"), {});
  CHECK(offending.stuck.contains(expected_antecedent));
  CHECK(offending.stuck.contains(expected_consequent));

  // Matched candidates: the right decision on q, and the split keeping q
  // with the consequent.
  CHECK(report.pairs.size() == 2);
}

TEST_CASE("naive control: benign sequents still pass") {
  Budget budget;
  auto report =
      check_focal_adequacy_naive(mall, iseq("lin:p |- lin:p", mall), budget);
  CHECK(report.bijective());
}

TEST_CASE("random focal adequacy, both directions") {
  Rng rng(606);
  GenConfig cfg;
  int done = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Signature sig = random_signature(rng, cfg);
    ClassicalSequent seq = random_classical_neutral(rng, sig, cfg);
    Budget budget(2'000'000);
    auto report = check_focal_adequacy_c2i(sig, seq, budget);
    CAPTURE(print_sequent(seq));
    CHECK(report.bijective());
    ++done;
  }
  CHECK(done == 60);
  for (int trial = 0; trial < 60; ++trial) {
    Signature sig = random_signature(rng, cfg);
    IntuitSequent seq = random_intuit_neutral(rng, sig, cfg);
    Budget budget(2'000'000);
    auto report = check_focal_adequacy_i2c(sig, seq, budget);
    CAPTURE(print_sequent(seq));
    CHECK(report.bijective());
  }
}

TEST_CASE("global adequacy: agreement and bound semantics") {
  Budget budget;
  auto agree =
      check_global_adequacy_c2i(mall, cseq("lin:p |- lin:p", mall), 1, budget);
  CHECK(agree.verdict == GlobalVerdict::agree);
  CHECK(agree.source.status == ProveStatus::proved);
  CHECK(agree.target.status == ProveStatus::proved);

  Budget budget2;
  auto shallow = check_global_adequacy_c2i(
      mall, cseq("lin:p |- lin:(![lin] ?[lin] p)", mall), 1, budget2);
  CHECK(shallow.verdict == GlobalVerdict::inconclusive);

  Budget budget3;
  auto naive = check_global_adequacy_naive(
      mall, iseq("lin:(p -o 'n) |- lin:q", mall), 3, budget3);
  // Globally both sides are dead here; the focal check is the detector.
  CHECK(naive.verdict == GlobalVerdict::agree);
  CHECK(naive.source.status == ProveStatus::exhausted);
}

TEST_CASE("rule and report JSON round trips") {
  auto rules = synthetic_expansions(mall, cseq("lin:p |- lin:p", mall));
  REQUIRE(rules.size() == 1);
  auto back = classical_rule_from_json(rule_to_json(rules[0]));
  CHECK(back == rules[0]);

  auto irules = synthetic_expansions(mall, iseq("lin:'n |- lin:'n", mall));
  REQUIRE(irules.size() == 1);
  CHECK(intuit_rule_from_json(rule_to_json(irules[0])) == irules[0]);

  Budget budget;
  auto report =
      check_focal_adequacy_c2i(mall, cseq("lin:p |- lin:p", mall), budget);
  auto j = report_to_json(report);
  CHECK(j.at("verdict") == "bijective");
  CHECK(j.at("pairs").size() == 1);
}
