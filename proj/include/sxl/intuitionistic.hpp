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

// The right decision rules of the classical calculus collapse into a single
// dr that never copies; left decisions are unchanged.
inline std::vector<Decision<IntuitSequent>> decide(const Signature& sig,
                                                   const IntuitSequent& seq) {
  if (!seq.is_neutral()) throw SequentError("decide expects a neutral sequent");
  std::vector<Decision<IntuitSequent>> out;
  const ZonedFormula& right = seq.right_passive();
  if (right.formula.polarity() == Polarity::positive)
    out.push_back(
        {"dr", IntuitSequent::right_focus(seq.left_passive(), right.formula)});
  for (const auto& e : seq.left_passive().distinct()) {
    if (e.formula.polarity() != Polarity::negative) continue;
    if (sig.is_unrestricted(e.zone)) {
      out.push_back({"udl", IntuitSequent::left_focus(seq.left_passive(),
                                                      e.formula, right)});
    } else {
      Context rest = seq.left_passive();
      rest.erase_one(e);
      out.push_back(
          {"rdl", IntuitSequent::left_focus(rest, e.formula, right)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Focus phase
// ---------------------------------------------------------------------------

inline std::vector<FocusInstance<IntuitSequent>> focus_step(
    const Signature& sig, const IntuitSequent& seq, Budget& budget,
    ExpandStats* stats = nullptr) {
  using Shape = IntuitSequent::Shape;
  std::vector<FocusInstance<IntuitSequent>> out;
  const Formula& f = seq.focus();
  const Context& lp = seq.left_passive();

  if (seq.shape() == Shape::right_focus) {
    switch (f.kind()) {
      case FKind::pos_atom:
        for (const auto& e : lp.distinct()) {
          if (!(e.formula == f)) continue;
          Context rest = lp;
          rest.erase_one(e);
          if (detail::all_unrestricted(sig, rest)) out.push_back({"pr", {}});
        }
        break;
      case FKind::one:
        if (detail::all_unrestricted(sig, lp)) out.push_back({"rr1", {}});
        break;
      case FKind::tensor:
        for (auto& s : detail::enumerate_splits(sig, lp, {}, budget, stats))
          out.push_back(
              {"rr*",
               {IntuitSequent::right_focus(s.left1, f.lhs()),
                IntuitSequent::right_focus(s.left2, f.rhs())}});
        break;
      case FKind::plus:
        out.push_back({"rr+1", {IntuitSequent::right_focus(lp, f.lhs())}});
        out.push_back({"rr+2", {IntuitSequent::right_focus(lp, f.rhs())}});
        break;
      case FKind::bang:
        // The side condition ranges over the left passive context only; the
        // right side is the focus itself.
        if (detail::zone_floor(sig, f.zone(), lp))
          out.push_back({"rr!" + f.zone(),
                         {IntuitSequent::active_r(lp, {}, f.body())}});
        break;
      case FKind::zero:
      default:
        break;
    }
  } else if (seq.shape() == Shape::left_focus) {
    const ZonedFormula& right = seq.right_passive();
    switch (f.kind()) {
      case FKind::neg_atom:
        if (right.formula == f && detail::all_unrestricted(sig, lp))
          out.push_back({"nl", {}});
        break;
      case FKind::with:
        out.push_back(
            {"lr&1", {IntuitSequent::left_focus(lp, f.lhs(), right)}});
        out.push_back(
            {"lr&2", {IntuitSequent::left_focus(lp, f.rhs(), right)}});
        break;
      case FKind::lolli:
        // The right formula always travels with the consequent premise.
        for (auto& s : detail::enumerate_splits(sig, lp, {}, budget, stats))
          out.push_back(
              {"lr-o",
               {IntuitSequent::right_focus(s.left1, f.lhs()),
                IntuitSequent::left_focus(s.left2, f.rhs(), right)}});
        break;
      case FKind::qmark:
        // The side condition covers the right-hand zone as well.
        if (detail::zone_floor(sig, f.zone(), lp) &&
            sig.leq(f.zone(), right.zone))
          out.push_back(
              {"lr?" + f.zone(),
               {IntuitSequent::active_p(lp, FormulaBag({f.body()}), right)}});
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

inline std::vector<FocusInstance<IntuitSequent>> focus_step(
    const Signature& sig, const IntuitSequent& seq,
    ExpandStats* stats = nullptr) {
  Budget budget;
  return focus_step(sig, seq, budget, stats);
}

// ---------------------------------------------------------------------------
// Active phase
// ---------------------------------------------------------------------------

namespace detail {

inline std::pair<std::string, std::vector<IntuitSequent>>
intuit_right_active_step(const Signature& sig, const IntuitSequent& s) {
  const Formula& f = s.right_active();
  switch (f.kind()) {
    case FKind::pos_atom:
    case FKind::neg_atom:
      return {"ar", {IntuitSequent::active_p(s.left_passive(), s.left_active(),
                                             {sig.working(), f})}};
    case FKind::with:
      return {"rr&",
              {IntuitSequent::active_r(s.left_passive(), s.left_active(),
                                       f.lhs()),
               IntuitSequent::active_r(s.left_passive(), s.left_active(),
                                       f.rhs())}};
    case FKind::top:
      return {"rrtop", {}};
    case FKind::lolli: {
      FormulaBag la = s.left_active();
      la.insert(f.lhs());
      return {"rr-o",
              {IntuitSequent::active_r(s.left_passive(), la, f.rhs())}};
    }
    case FKind::qmark:
      return {"rr?" + f.zone(),
              {IntuitSequent::active_p(s.left_passive(), s.left_active(),
                                       {f.zone(), f.body()})}};
    default:
      throw SequentError("malformed right-active formula");
  }
}

inline std::pair<std::string, std::vector<IntuitSequent>>
intuit_left_active_step(const Signature& sig, const IntuitSequent& s,
                        const Formula& f) {
  FormulaBag la = s.left_active();
  la.erase_one(f);
  auto rebuild = [&](Context lp, FormulaBag bag) {
    if (s.shape() == IntuitSequent::Shape::active_r)
      return IntuitSequent::active_r(std::move(lp), std::move(bag),
                                     s.right_active());
    return IntuitSequent::active_p(std::move(lp), std::move(bag),
                                   s.right_passive());
  };
  switch (f.kind()) {
    case FKind::pos_atom:
    case FKind::neg_atom: {
      Context lp = s.left_passive();
      lp.insert({sig.working(), f});
      return {"al", {rebuild(std::move(lp), std::move(la))}};
    }
    case FKind::tensor: {
      la.insert(f.lhs());
      la.insert(f.rhs());
      return {"lr*", {rebuild(s.left_passive(), std::move(la))}};
    }
    case FKind::one:
      return {"lr1", {rebuild(s.left_passive(), std::move(la))}};
    case FKind::plus: {
      FormulaBag l = la, r = la;
      l.insert(f.lhs());
      r.insert(f.rhs());
      return {"lr+",
              {rebuild(s.left_passive(), std::move(l)),
               rebuild(s.left_passive(), std::move(r))}};
    }
    case FKind::zero:
      return {"lr0", {}};
    case FKind::bang: {
      Context lp = s.left_passive();
      lp.insert({f.zone(), f.body()});
      return {"lr!" + f.zone(), {rebuild(std::move(lp), std::move(la))}};
    }
    default:
      throw SequentError("malformed left-active formula");
  }
}

inline std::pair<std::string, std::vector<IntuitSequent>> intuit_active_step(
    const Signature& sig, const IntuitSequent& s) {
  if (s.shape() == IntuitSequent::Shape::active_r)
    return intuit_right_active_step(sig, s);
  return intuit_left_active_step(sig, s, s.left_active().front());
}

}  // namespace detail

struct IntuitActiveRun {
  Trace steps;
  Multiset<IntuitSequent> premises;
};

inline IntuitActiveRun active_normalize_trace(const Signature& sig,
                                              const IntuitSequent& seq,
                                              Budget& budget) {
  if (seq.shape() != IntuitSequent::Shape::active_r &&
      seq.shape() != IntuitSequent::Shape::active_p)
    throw SequentError("active_normalize expects an active sequent");
  IntuitActiveRun run;
  std::vector<IntuitSequent> stack{seq};
  while (!stack.empty()) {
    IntuitSequent s = std::move(stack.back());
    stack.pop_back();
    budget.tick();
    if (s.is_neutral()) {
      run.premises.insert(std::move(s));
      continue;
    }
    auto [rule, succs] = detail::intuit_active_step(sig, s);
    run.steps.push_back({rule, 0});
    for (auto it = succs.rbegin(); it != succs.rend(); ++it)
      stack.push_back(std::move(*it));
  }
  return run;
}

inline Multiset<IntuitSequent> active_normalize(const Signature& sig,
                                                const IntuitSequent& seq) {
  Budget budget;
  return active_normalize_trace(sig, seq, budget).premises;
}

template <typename Rng>
Multiset<IntuitSequent> active_normalize_random(const Signature& sig,
                                                const IntuitSequent& seq,
                                                Rng& rng) {
  if (seq.shape() != IntuitSequent::Shape::active_r &&
      seq.shape() != IntuitSequent::Shape::active_p)
    throw SequentError("active_normalize expects an active sequent");
  Multiset<IntuitSequent> premises;
  std::vector<IntuitSequent> stack{seq};
  while (!stack.empty()) {
    IntuitSequent s = std::move(stack.back());
    stack.pop_back();
    if (s.is_neutral()) {
      premises.insert(std::move(s));
      continue;
    }
    const bool has_right = s.shape() == IntuitSequent::Shape::active_r;
    const std::size_t total = s.left_active().size() + (has_right ? 1 : 0);
    const std::size_t pick = static_cast<std::size_t>(rng() % total);
    auto [rule, succs] =
        (has_right && pick == 0)
            ? detail::intuit_right_active_step(sig, s)
            : detail::intuit_left_active_step(
                  sig, s, s.left_active().items()[pick - (has_right ? 1 : 0)]);
    for (auto& next : succs) stack.push_back(std::move(next));
  }
  return premises;
}

// ---------------------------------------------------------------------------
// Synthetic expansion and replay
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<BranchExpansion<IntuitSequent>> expand_focus_tree(
    const Signature& sig, const IntuitSequent& seq, Budget& budget,
    ExpandStats* stats, bool completed_only) {
  budget.tick();
  auto instances = focus_step(sig, seq, budget, stats);
  if (instances.empty()) {
    if (completed_only) return {};
    BranchExpansion<IntuitSequent> dead;
    dead.stuck.insert(seq);
    return {std::move(dead)};
  }
  std::vector<BranchExpansion<IntuitSequent>> out;
  for (int alt = 0; alt < static_cast<int>(instances.size()); ++alt) {
    const auto& inst = instances[alt];
    std::vector<std::vector<BranchExpansion<IntuitSequent>>> per_premise;
    bool viable = true;
    for (const auto& premise : inst.premises) {
      if (premise.shape() == IntuitSequent::Shape::active_r ||
          premise.shape() == IntuitSequent::Shape::active_p) {
        IntuitActiveRun run = active_normalize_trace(sig, premise, budget);
        BranchExpansion<IntuitSequent> b;
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

    std::vector<BranchExpansion<IntuitSequent>> combos;
    combos.push_back({{{inst.rule, alt}}, {}, {}});
    for (const auto& options : per_premise) {
      std::vector<BranchExpansion<IntuitSequent>> next;
      for (const auto& acc : combos)
        for (const auto& opt : options) {
          budget.tick();
          BranchExpansion<IntuitSequent> merged;
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

inline std::vector<SyntheticRule<IntuitSequent>> expand_candidates(
    const Signature& sig, const IntuitSequent& seq, Budget& budget,
    ExpandStats* stats = nullptr, bool completed_only = false) {
  if (!seq.is_neutral())
    throw SequentError("synthetic expansion expects a neutral sequent");
  validate_sequent(sig, seq);
  auto decisions = decide(sig, seq);
  std::vector<SyntheticRule<IntuitSequent>> out;
  for (int alt = 0; alt < static_cast<int>(decisions.size()); ++alt) {
    for (auto& branch : detail::expand_focus_tree(sig, decisions[alt].result,
                                                  budget, stats,
                                                  completed_only)) {
      SyntheticRule<IntuitSequent> rule;
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

inline std::vector<SyntheticRule<IntuitSequent>> synthetic_expansions(
    const Signature& sig, const IntuitSequent& seq, Budget& budget) {
  return detail::dedup_rules(
      expand_candidates(sig, seq, budget, nullptr, true));
}

inline std::vector<SyntheticRule<IntuitSequent>> synthetic_expansions(
    const Signature& sig, const IntuitSequent& seq) {
  Budget budget;
  return synthetic_expansions(sig, seq, budget);
}

inline std::vector<SyntheticRule<IntuitSequent>> candidate_rules(
    const Signature& sig, const IntuitSequent& seq, Budget& budget) {
  return detail::dedup_rules(
      expand_candidates(sig, seq, budget, nullptr, false));
}

struct IntuitReplayResult {
  Multiset<IntuitSequent> premises;
  Multiset<IntuitSequent> stuck;
};

inline IntuitReplayResult replay_trace(const Signature& sig,
                                       const IntuitSequent& seq,
                                       const Trace& trace) {
  if (!seq.is_neutral()) throw SequentError("replay expects a neutral sequent");
  IntuitReplayResult result;
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
  std::vector<IntuitSequent> stack{decisions[d.alt].result};
  Budget budget;

  while (!stack.empty()) {
    IntuitSequent s = std::move(stack.back());
    stack.pop_back();
    if (s.shape() == IntuitSequent::Shape::active_r ||
        s.shape() == IntuitSequent::Shape::active_p) {
      if (s.is_neutral()) {
        result.premises.insert(std::move(s));
        continue;
      }
      auto [rule, succs] = detail::intuit_active_step(sig, s);
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
