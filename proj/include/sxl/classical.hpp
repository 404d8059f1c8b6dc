#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sxl/phase.hpp"

namespace sxl {

// ---------------------------------------------------------------------------
// Decision phase
// ---------------------------------------------------------------------------

// Every positive right-passive entry and negative left-passive entry is a
// legal focus target; the zone decides between the consuming (rdr/rdl) and
// copying (udr/udl) forms. Positive atoms on the left and negative atoms on
// the right are not targets: they only participate through pr/nl.
inline std::vector<Decision<ClassicalSequent>> decide(
    const Signature& sig, const ClassicalSequent& seq) {
  if (!seq.is_neutral()) throw SequentError("decide expects a neutral sequent");
  std::vector<Decision<ClassicalSequent>> out;
  for (const auto& e : seq.right_passive().distinct()) {
    if (e.formula.polarity() != Polarity::positive) continue;
    if (sig.is_unrestricted(e.zone)) {
      out.push_back({"udr", ClassicalSequent::right_focus(
                                seq.left_passive(), e.formula,
                                seq.right_passive())});
    } else {
      Context rest = seq.right_passive();
      rest.erase_one(e);
      out.push_back({"rdr", ClassicalSequent::right_focus(
                                seq.left_passive(), e.formula, rest)});
    }
  }
  for (const auto& e : seq.left_passive().distinct()) {
    if (e.formula.polarity() != Polarity::negative) continue;
    if (sig.is_unrestricted(e.zone)) {
      out.push_back({"udl", ClassicalSequent::left_focus(
                                seq.left_passive(), e.formula,
                                seq.right_passive())});
    } else {
      Context rest = seq.left_passive();
      rest.erase_one(e);
      out.push_back({"rdl", ClassicalSequent::left_focus(rest, e.formula,
                                                         seq.right_passive())});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Focus phase
// ---------------------------------------------------------------------------

// All rule instances applicable to a focused sequent. An empty result means
// the branch is dead. Closing rules (pr, nl, rr1, lr bot) yield an instance
// with no premises.
inline std::vector<FocusInstance<ClassicalSequent>> focus_step(
    const Signature& sig, const ClassicalSequent& seq, Budget& budget,
    ExpandStats* stats = nullptr) {
  using Shape = ClassicalSequent::Shape;
  std::vector<FocusInstance<ClassicalSequent>> out;
  const Formula& f = seq.focus();
  const Context& lp = seq.left_passive();
  const Context& rp = seq.right_passive();

  if (seq.shape() == Shape::right_focus) {
    switch (f.kind()) {
      case FKind::pos_atom:
        for (const auto& e : lp.distinct()) {
          if (!(e.formula == f)) continue;
          Context rest = lp;
          rest.erase_one(e);
          if (detail::all_unrestricted(sig, rest) &&
              detail::all_unrestricted(sig, rp))
            out.push_back({"pr", {}});
        }
        break;
      case FKind::one:
        if (detail::all_unrestricted(sig, lp) &&
            detail::all_unrestricted(sig, rp))
          out.push_back({"rr1", {}});
        break;
      case FKind::tensor:
        for (auto& s : detail::enumerate_splits(sig, lp, rp, budget, stats))
          out.push_back(
              {"rr*",
               {ClassicalSequent::right_focus(s.left1, f.lhs(), s.right1),
                ClassicalSequent::right_focus(s.left2, f.rhs(), s.right2)}});
        break;
      case FKind::plus:
        out.push_back(
            {"rr+1", {ClassicalSequent::right_focus(lp, f.lhs(), rp)}});
        out.push_back(
            {"rr+2", {ClassicalSequent::right_focus(lp, f.rhs(), rp)}});
        break;
      case FKind::bang:
        if (detail::zone_floor(sig, f.zone(), lp) &&
            detail::zone_floor(sig, f.zone(), rp))
          out.push_back({"rr!" + f.zone(),
                         {ClassicalSequent::active(lp, {},
                                                   FormulaBag({f.body()}), rp)}});
        break;
      case FKind::zero:
      default:
        break;
    }
  } else if (seq.shape() == Shape::left_focus) {
    switch (f.kind()) {
      case FKind::neg_atom:
        for (const auto& e : rp.distinct()) {
          if (!(e.formula == f)) continue;
          Context rest = rp;
          rest.erase_one(e);
          if (detail::all_unrestricted(sig, lp) &&
              detail::all_unrestricted(sig, rest))
            out.push_back({"nl", {}});
        }
        break;
      case FKind::bot:
        if (detail::all_unrestricted(sig, lp) &&
            detail::all_unrestricted(sig, rp))
          out.push_back({"lrbot", {}});
        break;
      case FKind::with:
        out.push_back(
            {"lr&1", {ClassicalSequent::left_focus(lp, f.lhs(), rp)}});
        out.push_back(
            {"lr&2", {ClassicalSequent::left_focus(lp, f.rhs(), rp)}});
        break;
      case FKind::par:
        for (auto& s : detail::enumerate_splits(sig, lp, rp, budget, stats))
          out.push_back(
              {"lr|",
               {ClassicalSequent::left_focus(s.left1, f.lhs(), s.right1),
                ClassicalSequent::left_focus(s.left2, f.rhs(), s.right2)}});
        break;
      case FKind::lolli:
        for (auto& s : detail::enumerate_splits(sig, lp, rp, budget, stats))
          out.push_back(
              {"lr-o",
               {ClassicalSequent::right_focus(s.left1, f.lhs(), s.right1),
                ClassicalSequent::left_focus(s.left2, f.rhs(), s.right2)}});
        break;
      case FKind::qmark:
        if (detail::zone_floor(sig, f.zone(), lp) &&
            detail::zone_floor(sig, f.zone(), rp))
          out.push_back({"lr?" + f.zone(),
                         {ClassicalSequent::active(lp, FormulaBag({f.body()}),
                                                   {}, rp)}});
        break;
      case FKind::top:
      default:
        break;
    }
  } else {
    throw SequentError("focus_step expects a focused sequent");
  }
  detail::dedup_instances(out);
  return out;
}

inline std::vector<FocusInstance<ClassicalSequent>> focus_step(
    const Signature& sig, const ClassicalSequent& seq,
    ExpandStats* stats = nullptr) {
  Budget budget;
  return focus_step(sig, seq, budget, stats);
}

// ---------------------------------------------------------------------------
// Active phase
// ---------------------------------------------------------------------------

namespace detail {

// The one active rule applicable to `f` as a right-active element.
inline std::pair<std::string, std::vector<ClassicalSequent>>
classical_right_active_step(const Signature& sig, const ClassicalSequent& s,
                            const Formula& f) {
  FormulaBag ra = s.right_active();
  ra.erase_one(f);
  auto with_ra = [&](FormulaBag bag) {
    return ClassicalSequent::active(s.left_passive(), s.left_active(),
                                    std::move(bag), s.right_passive());
  };
  switch (f.kind()) {
    case FKind::pos_atom:
    case FKind::neg_atom: {
      Context rp = s.right_passive();
      rp.insert({sig.working(), f});
      return {"ar", {ClassicalSequent::active(s.left_passive(),
                                              s.left_active(), ra, rp)}};
    }
    case FKind::with: {
      FormulaBag l = ra, r = ra;
      l.insert(f.lhs());
      r.insert(f.rhs());
      return {"rr&", {with_ra(std::move(l)), with_ra(std::move(r))}};
    }
    case FKind::top:
      return {"rrtop", {}};
    case FKind::par: {
      ra.insert(f.lhs());
      ra.insert(f.rhs());
      return {"rr|", {with_ra(std::move(ra))}};
    }
    case FKind::bot:
      return {"rrbot", {with_ra(std::move(ra))}};
    case FKind::lolli: {
      FormulaBag la = s.left_active();
      la.insert(f.lhs());
      ra.insert(f.rhs());
      return {"rr-o", {ClassicalSequent::active(s.left_passive(), la, ra,
                                                s.right_passive())}};
    }
    case FKind::qmark: {
      Context rp = s.right_passive();
      rp.insert({f.zone(), f.body()});
      return {"rr?" + f.zone(),
              {ClassicalSequent::active(s.left_passive(), s.left_active(), ra,
                                        rp)}};
    }
    default:
      throw SequentError("malformed right-active formula");
  }
}

inline std::pair<std::string, std::vector<ClassicalSequent>>
classical_left_active_step(const Signature& sig, const ClassicalSequent& s,
                           const Formula& f) {
  FormulaBag la = s.left_active();
  la.erase_one(f);
  auto with_la = [&](FormulaBag bag) {
    return ClassicalSequent::active(s.left_passive(), std::move(bag),
                                    s.right_active(), s.right_passive());
  };
  switch (f.kind()) {
    case FKind::pos_atom:
    case FKind::neg_atom: {
      Context lp = s.left_passive();
      lp.insert({sig.working(), f});
      return {"al", {ClassicalSequent::active(lp, la, s.right_active(),
                                              s.right_passive())}};
    }
    case FKind::tensor: {
      la.insert(f.lhs());
      la.insert(f.rhs());
      return {"lr*", {with_la(std::move(la))}};
    }
    case FKind::one:
      return {"lr1", {with_la(std::move(la))}};
    case FKind::plus: {
      FormulaBag l = la, r = la;
      l.insert(f.lhs());
      r.insert(f.rhs());
      return {"lr+", {with_la(std::move(l)), with_la(std::move(r))}};
    }
    case FKind::zero:
      return {"lr0", {}};
    case FKind::bang: {
      Context lp = s.left_passive();
      lp.insert({f.zone(), f.body()});
      return {"lr!" + f.zone(),
              {ClassicalSequent::active(lp, la, s.right_active(),
                                        s.right_passive())}};
    }
    default:
      throw SequentError("malformed left-active formula");
  }
}

// Canonical scheduling: right-active formulas before left-active ones, the
// structurally smallest first. Active rules are confluent, so the choice
// only pins down a normal form for traces and comparisons.
inline std::pair<std::string, std::vector<ClassicalSequent>>
classical_active_step(const Signature& sig, const ClassicalSequent& s) {
  if (!s.right_active().empty())
    return classical_right_active_step(sig, s, s.right_active().front());
  return classical_left_active_step(sig, s, s.left_active().front());
}

}  // namespace detail

struct ActiveRun {
  Trace steps;
  Multiset<ClassicalSequent> premises;
};

inline ActiveRun active_normalize_trace(const Signature& sig,
                                        const ClassicalSequent& seq,
                                        Budget& budget) {
  if (seq.shape() != ClassicalSequent::Shape::active)
    throw SequentError("active_normalize expects an active sequent");
  ActiveRun run;
  std::vector<ClassicalSequent> stack{seq};
  while (!stack.empty()) {
    ClassicalSequent s = std::move(stack.back());
    stack.pop_back();
    budget.tick();
    if (s.is_neutral()) {
      run.premises.insert(std::move(s));
      continue;
    }
    auto [rule, succs] = detail::classical_active_step(sig, s);
    run.steps.push_back({rule, 0});
    for (auto it = succs.rbegin(); it != succs.rend(); ++it)
      stack.push_back(std::move(*it));
  }
  return run;
}

inline Multiset<ClassicalSequent> active_normalize(const Signature& sig,
                                                   const ClassicalSequent& seq) {
  Budget budget;
  return active_normalize_trace(sig, seq, budget).premises;
}

// Applies active rules in an arbitrary order picked by `rng`; used to
// exercise the confluence of the active phase.
template <typename Rng>
Multiset<ClassicalSequent> active_normalize_random(const Signature& sig,
                                                   const ClassicalSequent& seq,
                                                   Rng& rng) {
  if (seq.shape() != ClassicalSequent::Shape::active)
    throw SequentError("active_normalize expects an active sequent");
  Multiset<ClassicalSequent> premises;
  std::vector<ClassicalSequent> stack{seq};
  while (!stack.empty()) {
    ClassicalSequent s = std::move(stack.back());
    stack.pop_back();
    if (s.is_neutral()) {
      premises.insert(std::move(s));
      continue;
    }
    const std::size_t nr = s.right_active().size();
    const std::size_t total = nr + s.left_active().size();
    const std::size_t pick = static_cast<std::size_t>(rng() % total);
    auto [rule, succs] =
        pick < nr ? detail::classical_right_active_step(
                        sig, s, s.right_active().items()[pick])
                  : detail::classical_left_active_step(
                        sig, s, s.left_active().items()[pick - nr]);
    for (auto& next : succs) stack.push_back(std::move(next));
  }
  return premises;
}

// ---------------------------------------------------------------------------
// Synthetic expansion
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<BranchExpansion<ClassicalSequent>> expand_focus_tree(
    const Signature& sig, const ClassicalSequent& seq, Budget& budget,
    ExpandStats* stats, bool completed_only) {
  budget.tick();
  auto instances = focus_step(sig, seq, budget, stats);
  if (instances.empty()) {
    if (completed_only) return {};
    BranchExpansion<ClassicalSequent> dead;
    dead.stuck.insert(seq);
    return {std::move(dead)};
  }
  std::vector<BranchExpansion<ClassicalSequent>> out;
  for (int alt = 0; alt < static_cast<int>(instances.size()); ++alt) {
    const auto& inst = instances[alt];
    std::vector<std::vector<BranchExpansion<ClassicalSequent>>> per_premise;
    bool viable = true;
    for (const auto& premise : inst.premises) {
      if (premise.shape() == ClassicalSequent::Shape::active) {
        ActiveRun run = active_normalize_trace(sig, premise, budget);
        BranchExpansion<ClassicalSequent> b;
        b.trace = std::move(run.steps);
        b.premises = std::move(run.premises);
        per_premise.push_back({std::move(b)});
      } else {
        auto subs =
            expand_focus_tree(sig, premise, budget, stats, completed_only);
        if (subs.empty()) {
          viable = false;
          break;
        }
        per_premise.push_back(std::move(subs));
      }
    }
    if (!viable) continue;

    // Cartesian product over the expansions of each premise, traces
    // concatenated in premise order.
    std::vector<BranchExpansion<ClassicalSequent>> combos;
    combos.push_back({{{inst.rule, alt}}, {}, {}});
    for (const auto& options : per_premise) {
      std::vector<BranchExpansion<ClassicalSequent>> next;
      for (const auto& acc : combos)
        for (const auto& opt : options) {
          budget.tick();
          BranchExpansion<ClassicalSequent> merged;
          merged.trace = acc.trace;
          merged.trace.insert(merged.trace.end(), opt.trace.begin(),
                              opt.trace.end());
          merged.premises = acc.premises + opt.premises;
          merged.stuck = acc.stuck + opt.stuck;
          next.push_back(std::move(merged));
        }
      combos = std::move(next);
    }
    for (auto& c : combos) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

// Every maximal expansion of a neutral sequent, in canonical enumeration
// order, at trace granularity. With `completed_only`, expansions with dead
// branches are pruned as early as possible.
inline std::vector<SyntheticRule<ClassicalSequent>> expand_candidates(
    const Signature& sig, const ClassicalSequent& seq, Budget& budget,
    ExpandStats* stats = nullptr, bool completed_only = false) {
  if (!seq.is_neutral())
    throw SequentError("synthetic expansion expects a neutral sequent");
  validate_sequent(sig, seq);
  auto decisions = decide(sig, seq);
  std::vector<SyntheticRule<ClassicalSequent>> out;
  for (int alt = 0; alt < static_cast<int>(decisions.size()); ++alt) {
    for (auto& branch : detail::expand_focus_tree(sig, decisions[alt].result,
                                                  budget, stats,
                                                  completed_only)) {
      SyntheticRule<ClassicalSequent> rule;
      rule.conclusion = seq;
      rule.trace.push_back({decisions[alt].rule, alt});
      rule.trace.insert(rule.trace.end(), branch.trace.begin(),
                        branch.trace.end());
      rule.premises = std::move(branch.premises);
      rule.stuck = std::move(branch.stuck);
      out.push_back(std::move(rule));
    }
  }
  return out;
}

// The synthetic inference rules of a neutral sequent: completed expansions,
// identified by premise multiset, the canonically first trace kept as the
// witness.
inline std::vector<SyntheticRule<ClassicalSequent>> synthetic_expansions(
    const Signature& sig, const ClassicalSequent& seq, Budget& budget) {
  return detail::dedup_rules(
      expand_candidates(sig, seq, budget, nullptr, true));
}

inline std::vector<SyntheticRule<ClassicalSequent>> synthetic_expansions(
    const Signature& sig, const ClassicalSequent& seq) {
  Budget budget;
  return synthetic_expansions(sig, seq, budget);
}

// Candidate rules including dead-branch expansions, identified by
// (premises, stuck); the naive-control adequacy check compares these.
inline std::vector<SyntheticRule<ClassicalSequent>> candidate_rules(
    const Signature& sig, const ClassicalSequent& seq, Budget& budget) {
  return detail::dedup_rules(
      expand_candidates(sig, seq, budget, nullptr, false));
}

// ---------------------------------------------------------------------------
// Trace replay
// ---------------------------------------------------------------------------

struct ReplayResult {
  Multiset<ClassicalSequent> premises;
  Multiset<ClassicalSequent> stuck;
};

// Re-runs a recorded trace against the rule engine. Throws if the trace does
// not describe a maximal expansion of `seq`.
inline ReplayResult replay_trace(const Signature& sig,
                                 const ClassicalSequent& seq,
                                 const Trace& trace) {
  if (!seq.is_neutral()) throw SequentError("replay expects a neutral sequent");
  ReplayResult result;
  std::size_t idx = 0;
  auto next_step = [&](const std::string& ctx) -> const TraceStep& {
    if (idx >= trace.size()) throw Error("trace ended early at " + ctx);
    return trace[idx++];
  };

  auto decisions = decide(sig, seq);
  const TraceStep& d = next_step("decision");
  if (d.alt < 0 || d.alt >= static_cast<int>(decisions.size()) ||
      decisions[d.alt].rule != d.rule)
    throw Error("trace does not match any decision");
  std::vector<ClassicalSequent> stack{decisions[d.alt].result};
  Budget budget;

  while (!stack.empty()) {
    ClassicalSequent s = std::move(stack.back());
    stack.pop_back();
    if (s.shape() == ClassicalSequent::Shape::active) {
      if (s.is_neutral()) {
        result.premises.insert(std::move(s));
        continue;
      }
      auto [rule, succs] = detail::classical_active_step(sig, s);
      const TraceStep& st = next_step("active phase");
      if (st.rule != rule || st.alt != 0)
        throw Error("trace mismatch in active phase: expected " + rule);
      for (auto it = succs.rbegin(); it != succs.rend(); ++it)
        stack.push_back(std::move(*it));
      continue;
    }
    auto instances = focus_step(sig, s, budget);
    if (instances.empty()) {
      result.stuck.insert(std::move(s));
      continue;
    }
    const TraceStep& st = next_step("focus phase");
    if (st.alt < 0 || st.alt >= static_cast<int>(instances.size()) ||
        instances[st.alt].rule != st.rule)
      throw Error("trace mismatch in focus phase at rule " + st.rule);
    const auto& premises = instances[st.alt].premises;
    for (auto it = premises.rbegin(); it != premises.rend(); ++it)
      stack.push_back(*it);
  }
  if (idx != trace.size()) throw Error("trace has unused steps");
  return result;
}

}  // namespace sxl
