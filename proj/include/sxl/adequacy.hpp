#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sxl/classical.hpp"
#include "sxl/encode.hpp"
#include "sxl/intuitionistic.hpp"
#include "sxl/io.hpp"

namespace sxl {

// ---------------------------------------------------------------------------
// Bounded proof search over synthetic rules
// ---------------------------------------------------------------------------

enum class ProveStatus { proved, exhausted, open };

inline const char* prove_status_name(ProveStatus s) {
  switch (s) {
    case ProveStatus::proved: return "proved";
    case ProveStatus::exhausted: return "exhausted";
    case ProveStatus::open: return "open";
  }
  return "?";
}

template <typename Seq>
struct ProofNode {
  Seq sequent;
  Trace trace;
  std::vector<ProofNode<Seq>> premises;
};

// `depth` counts synthetic phases. `count` is the number of distinct closed
// derivation trees found within the bound (distinct by trace at every node);
// when branches were cut off by the bound it is a lower bound.
template <typename Seq>
struct ProofSearchResult {
  Seq sequent;
  int depth = 0;
  ProveStatus status = ProveStatus::open;
  std::uint64_t count = 0;
  std::optional<ProofNode<Seq>> derivation;
};

namespace detail {

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

template <typename Seq>
struct SearchEntry {
  bool proved = false;
  bool bound_hit = false;
  std::uint64_t count = 0;
  std::optional<ProofNode<Seq>> witness;
};

template <typename Seq>
class Searcher {
public:
  Searcher(const Signature& sig, Budget& budget) : sig_(sig), budget_(budget) {}

  const SearchEntry<Seq>& search(const Seq& seq, int depth) {
    auto key = std::make_pair(seq, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    budget_.tick();
    SearchEntry<Seq> entry;
    if (depth == 0) {
      entry.bound_hit = true;
    } else {
      auto candidates =
          expand_candidates(sig_, seq, budget_, nullptr, /*completed_only=*/true);
      for (const auto& cand : candidates) {
        bool all_proved = true;
        bool any_bound = false;
        std::uint64_t product = 1;
        std::vector<ProofNode<Seq>> kids;
        for (const auto& premise : cand.premises) {
          const auto& sub = search(premise, depth - 1);
          all_proved = all_proved && sub.proved;
          any_bound = any_bound || sub.bound_hit;
          product = sat_mul(product, sub.count);
          if (all_proved && !entry.witness) kids.push_back(*sub.witness);
        }
        if (all_proved) {
          entry.proved = true;
          entry.count = sat_add(entry.count, product);
          if (!entry.witness)
            entry.witness = ProofNode<Seq>{seq, cand.trace, std::move(kids)};
        }
        entry.bound_hit = entry.bound_hit || any_bound;
      }
    }
    return memo_.emplace(std::move(key), std::move(entry)).first->second;
  }

private:
  const Signature& sig_;
  Budget& budget_;
  std::map<std::pair<Seq, int>, SearchEntry<Seq>> memo_;
};

}  // namespace detail

// Exhaustive depth-bounded search. `proved` means some expansion tree closes
// every leaf within the bound; `exhausted` means the full tree was explored
// without the bound biting anywhere; `open` means the bound cut something
// off.
template <typename Seq>
ProofSearchResult<Seq> prove(const Signature& sig, const Seq& seq, int depth,
                             Budget& budget) {
  if (depth < 1) throw Error("prove requires depth >= 1");
  if (!seq.is_neutral()) throw SequentError("prove expects a neutral sequent");
  validate_sequent(sig, seq);
  detail::Searcher<Seq> searcher(sig, budget);
  const auto& entry = searcher.search(seq, depth);
  ProofSearchResult<Seq> result;
  result.sequent = seq;
  result.depth = depth;
  result.count = entry.count;
  result.derivation = entry.witness;
  result.status = entry.proved      ? ProveStatus::proved
                  : entry.bound_hit ? ProveStatus::open
                                    : ProveStatus::exhausted;
  return result;
}

template <typename Seq>
ProofSearchResult<Seq> prove(const Signature& sig, const Seq& seq, int depth) {
  Budget budget;
  return prove(sig, seq, depth, budget);
}

// ---------------------------------------------------------------------------
// Focal adequacy
// ---------------------------------------------------------------------------

// A matched pair of rules: the elementwise encoding of the source premises
// equals the target premise multiset. `premise_pairing` lists (source
// premise index, target premise index) positions within the sorted premise
// lists.
template <typename Src, typename Tgt>
struct AdequacyPair {
  SyntheticRule<Src> source;
  SyntheticRule<Tgt> target;
  std::vector<std::pair<int, int>> premise_pairing;
};

// Synthetic rules are compared modulo the encoding: the rule sets agree when
// the encoded source rules and the target rules coincide as sets of premise
// multisets. Distinct source rules may encode to the same target rule (the
// formula translations identify some unit-isomorphic shapes); such rules
// share their target partner and the comparison remains exact.
template <typename Src, typename Tgt>
struct AdequacyReport {
  std::string direction;
  Src source_conclusion;
  Tgt target_conclusion;
  std::vector<AdequacyPair<Src, Tgt>> pairs;
  std::vector<SyntheticRule<Src>> unmatched_source;
  std::vector<SyntheticRule<Tgt>> unmatched_target;

  bool bijective() const {
    return unmatched_source.empty() && unmatched_target.empty();
  }
};

namespace detail {

template <typename Src, typename Tgt, typename EncodeSeq>
AdequacyReport<Src, Tgt> match_rules(std::string direction,
                                     const Src& source_conclusion,
                                     const Tgt& target_conclusion,
                                     const std::vector<SyntheticRule<Src>>& S,
                                     const std::vector<SyntheticRule<Tgt>>& T,
                                     EncodeSeq encode) {
  AdequacyReport<Src, Tgt> report;
  report.direction = std::move(direction);
  report.source_conclusion = source_conclusion;
  report.target_conclusion = target_conclusion;

  using Key = std::pair<Multiset<Tgt>, Multiset<Tgt>>;
  std::map<Key, std::size_t> target_index;
  for (std::size_t i = 0; i < T.size(); ++i)
    target_index.emplace(std::make_pair(T[i].premises, T[i].stuck), i);

  std::vector<bool> hit(T.size(), false);
  for (const auto& s : S) {
    std::vector<std::pair<Tgt, int>> encoded;
    int pos = 0;
    for (const auto& p : s.premises) encoded.emplace_back(encode(p), pos++);
    std::sort(encoded.begin(), encoded.end());
    Multiset<Tgt> ep;
    for (const auto& [e, i] : encoded) ep.insert(e);
    Multiset<Tgt> es;
    for (const auto& p : s.stuck) es.insert(encode(p));

    auto it = target_index.find(std::make_pair(ep, es));
    if (it == target_index.end()) {
      report.unmatched_source.push_back(s);
      continue;
    }
    hit[it->second] = true;
    AdequacyPair<Src, Tgt> pair{s, T[it->second], {}};
    for (std::size_t k = 0; k < encoded.size(); ++k)
      pair.premise_pairing.emplace_back(encoded[k].second, static_cast<int>(k));
    report.pairs.push_back(std::move(pair));
  }
  for (std::size_t i = 0; i < T.size(); ++i)
    if (!hit[i]) report.unmatched_target.push_back(T[i]);
  return report;
}

}  // namespace detail

// Classical source over sig, intuitionistic target over the same signature.
inline AdequacyReport<ClassicalSequent, IntuitSequent> check_focal_adequacy_c2i(
    const Signature& sig, const ClassicalSequent& seq, Budget& budget) {
  auto S = synthetic_expansions(sig, seq, budget);
  IntuitSequent target = c2i_sequent(seq, sig);
  auto T = synthetic_expansions(sig, target, budget);
  return detail::match_rules(
      "c2i", seq, target, S, T,
      [&](const ClassicalSequent& p) { return c2i_sequent(p, sig); });
}

// Intuitionistic source over sig, classical target over split(sig).
inline AdequacyReport<IntuitSequent, ClassicalSequent> check_focal_adequacy_i2c(
    const Signature& sig, const IntuitSequent& seq, Budget& budget) {
  auto S = synthetic_expansions(sig, seq, budget);
  Signature target_sig = sig.split();
  ClassicalSequent target = i2c_sequent(seq, sig);
  auto T = synthetic_expansions(target_sig, target, budget);
  return detail::match_rules(
      "i2c", seq, target, S, T,
      [&](const IntuitSequent& p) { return i2c_sequent(p, sig); });
}

// The naive control keeps the signature and the connectives; because it is
// the identity on formulas, partial expansions are comparable too, and the
// check runs at candidate granularity (dead branches recorded as stuck
// leaves). This is where the missing-counterpart derived rule shows up.
inline AdequacyReport<IntuitSequent, ClassicalSequent>
check_focal_adequacy_naive(const Signature& sig, const IntuitSequent& seq,
                           Budget& budget) {
  validate_sequent(sig, seq);
  auto S = candidate_rules(sig, seq, budget);
  ClassicalSequent target = naive_i2c_sequent(seq);
  auto T = candidate_rules(sig, target, budget);
  return detail::match_rules(
      "naive-i2c", seq, target, S, T,
      [&](const IntuitSequent& p) { return naive_i2c_sequent(p); });
}

// ---------------------------------------------------------------------------
// Global adequacy
// ---------------------------------------------------------------------------

enum class GlobalVerdict { agree, disagree, inconclusive };

inline const char* global_verdict_name(GlobalVerdict v) {
  switch (v) {
    case GlobalVerdict::agree: return "agree";
    case GlobalVerdict::disagree: return "disagree";
    case GlobalVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

template <typename Src, typename Tgt>
struct GlobalReport {
  GlobalVerdict verdict = GlobalVerdict::inconclusive;
  ProofSearchResult<Src> source;
  ProofSearchResult<Tgt> target;
};

namespace detail {

template <typename Src, typename Tgt>
GlobalVerdict global_verdict(const ProofSearchResult<Src>& a,
                             const ProofSearchResult<Tgt>& b) {
  if (a.status == ProveStatus::open || b.status == ProveStatus::open)
    return GlobalVerdict::inconclusive;
  return a.status == b.status ? GlobalVerdict::agree : GlobalVerdict::disagree;
}

}  // namespace detail

inline GlobalReport<ClassicalSequent, IntuitSequent> check_global_adequacy_c2i(
    const Signature& sig, const ClassicalSequent& seq, int depth,
    Budget& budget) {
  GlobalReport<ClassicalSequent, IntuitSequent> report;
  report.source = prove(sig, seq, depth, budget);
  report.target = prove(sig, c2i_sequent(seq, sig), depth, budget);
  report.verdict = detail::global_verdict(report.source, report.target);
  return report;
}

inline GlobalReport<IntuitSequent, ClassicalSequent> check_global_adequacy_i2c(
    const Signature& sig, const IntuitSequent& seq, int depth, Budget& budget) {
  GlobalReport<IntuitSequent, ClassicalSequent> report;
  report.source = prove(sig, seq, depth, budget);
  Signature target_sig = sig.split();
  report.target = prove(target_sig, i2c_sequent(seq, sig), depth, budget);
  report.verdict = detail::global_verdict(report.source, report.target);
  return report;
}

inline GlobalReport<IntuitSequent, ClassicalSequent>
check_global_adequacy_naive(const Signature& sig, const IntuitSequent& seq,
                            int depth, Budget& budget) {
  GlobalReport<IntuitSequent, ClassicalSequent> report;
  report.source = prove(sig, seq, depth, budget);
  report.target = prove(sig, naive_i2c_sequent(seq), depth, budget);
  report.verdict = detail::global_verdict(report.source, report.target);
  return report;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

template <typename Seq>
nlohmann::json rule_to_json(const SyntheticRule<Seq>& rule) {
  nlohmann::json premises = nlohmann::json::array();
  for (const auto& p : rule.premises) premises.push_back(sequent_to_json(p));
  nlohmann::json stuck = nlohmann::json::array();
  for (const auto& p : rule.stuck) stuck.push_back(sequent_to_json(p));
  return {{"conclusion", sequent_to_json(rule.conclusion)},
          {"premises", premises},
          {"stuck", stuck},
          {"trace", trace_to_json(rule.trace)}};
}

inline SyntheticRule<ClassicalSequent> classical_rule_from_json(
    const nlohmann::json& j) {
  SyntheticRule<ClassicalSequent> rule;
  rule.conclusion = classical_sequent_from_json(j.at("conclusion"));
  for (const auto& p : j.at("premises"))
    rule.premises.insert(classical_sequent_from_json(p));
  for (const auto& p : j.at("stuck"))
    rule.stuck.insert(classical_sequent_from_json(p));
  rule.trace = trace_from_json(j.at("trace"));
  return rule;
}

inline SyntheticRule<IntuitSequent> intuit_rule_from_json(
    const nlohmann::json& j) {
  SyntheticRule<IntuitSequent> rule;
  rule.conclusion = intuit_sequent_from_json(j.at("conclusion"));
  for (const auto& p : j.at("premises"))
    rule.premises.insert(intuit_sequent_from_json(p));
  for (const auto& p : j.at("stuck"))
    rule.stuck.insert(intuit_sequent_from_json(p));
  rule.trace = trace_from_json(j.at("trace"));
  return rule;
}

template <typename Src, typename Tgt>
nlohmann::json report_to_json(const AdequacyReport<Src, Tgt>& report) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& pair : report.pairs) {
    nlohmann::json pp = nlohmann::json::array();
    for (auto [a, b] : pair.premise_pairing) pp.push_back({a, b});
    pairs.push_back({{"source", rule_to_json(pair.source)},
                     {"target", rule_to_json(pair.target)},
                     {"premise_pairing", pp}});
  }
  nlohmann::json us = nlohmann::json::array();
  for (const auto& r : report.unmatched_source) us.push_back(rule_to_json(r));
  nlohmann::json ut = nlohmann::json::array();
  for (const auto& r : report.unmatched_target) ut.push_back(rule_to_json(r));
  nlohmann::json j{{"direction", report.direction},
                   {"source", sequent_to_json(report.source_conclusion)},
                   {"target", sequent_to_json(report.target_conclusion)},
                   {"verdict", report.bijective() ? "bijective" : "counterexample"},
                   {"pairs", pairs},
                   {"unmatched_source", us},
                   {"unmatched_target", ut}};
  if (!report.bijective()) {
    // The canonically smallest offending rule, target side first.
    j["offending"] = !report.unmatched_target.empty()
                         ? rule_to_json(report.unmatched_target.front())
                         : rule_to_json(report.unmatched_source.front());
    j["offending_side"] =
        !report.unmatched_target.empty() ? "target" : "source";
  }
  return j;
}

template <typename Seq>
nlohmann::json proof_node_to_json(const ProofNode<Seq>& node) {
  nlohmann::json kids = nlohmann::json::array();
  for (const auto& k : node.premises) kids.push_back(proof_node_to_json(k));
  return {{"sequent", sequent_to_json(node.sequent)},
          {"trace", trace_to_json(node.trace)},
          {"premises", kids}};
}

template <typename Seq>
nlohmann::json prove_result_to_json(const ProofSearchResult<Seq>& result) {
  nlohmann::json j{{"sequent", sequent_to_json(result.sequent)},
                   {"depth", result.depth},
                   {"status", prove_status_name(result.status)},
                   {"count", result.count}};
  if (result.derivation)
    j["derivation"] = proof_node_to_json(*result.derivation);
  return j;
}

template <typename Src, typename Tgt>
nlohmann::json global_report_to_json(const GlobalReport<Src, Tgt>& report) {
  return {{"verdict", global_verdict_name(report.verdict)},
          {"source", prove_result_to_json(report.source)},
          {"target", prove_result_to_json(report.target)}};
}

}  // namespace sxl
