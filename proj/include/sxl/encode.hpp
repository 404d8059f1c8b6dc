#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sxl/formula.hpp"
#include "sxl/sequent.hpp"
#include "sxl/signature.hpp"

namespace sxl {

// ===========================================================================
// Classical → intuitionistic (double-negation translation over an unchanged
// signature). Two mutually recursive formula translations:
//
//   eq keeps the polarity of its argument, ne flips it. Negation is expanded
//   on the fly as ¬A = A ⊸ k, with k the reserved answer atom; every negative
//   atom n maps to a fresh positive dual n^.
// ===========================================================================

enum class CMode { eq, ne };

namespace detail {
inline void check_no_reserved(const Formula& f) {
  if (f.has_reserved_atom())
    throw EncodeError("formula mentions a reserved atom (k or a ^-dual)");
}
}  // namespace detail

inline Formula c2i_formula(const Formula& f, CMode mode) {
  detail::check_no_reserved(f);
  auto eq = [](const Formula& g) { return c2i_formula(g, CMode::eq); };
  auto ne = [](const Formula& g) { return c2i_formula(g, CMode::ne); };
  auto negate = [](Formula g) { return Formula::lolli(std::move(g), answer_atom()); };

  if (mode == CMode::eq) {
    switch (f.kind()) {
      case FKind::pos_atom: return f;
      case FKind::bang: return Formula::bang(f.zone(), eq(f.body()));
      case FKind::tensor: return Formula::tensor(eq(f.lhs()), eq(f.rhs()));
      case FKind::one: return Formula::one();
      case FKind::plus: return Formula::plus(eq(f.lhs()), eq(f.rhs()));
      case FKind::zero: return Formula::zero();
      default: return negate(ne(f));  // negative formulas
    }
  }
  switch (f.kind()) {
    case FKind::neg_atom: return dual_atom(f);
    case FKind::qmark: return Formula::bang(f.zone(), ne(f.body()));
    case FKind::par: return Formula::tensor(ne(f.lhs()), ne(f.rhs()));
    case FKind::bot: return Formula::one();
    case FKind::with: return Formula::plus(ne(f.lhs()), ne(f.rhs()));
    case FKind::top: return Formula::zero();
    case FKind::lolli: return Formula::tensor(eq(f.lhs()), ne(f.rhs()));
    default: return negate(eq(f));  // positive formulas
  }
}

namespace detail {

// Left passive entries translate with eq, right passive entries with ne;
// both land on the left of the intuitionistic sequent, zones preserved.
inline Context c2i_contexts(const Context& left, const Context& right) {
  std::vector<ZonedFormula> out;
  for (const auto& e : left)
    out.push_back({e.zone, c2i_formula(e.formula, CMode::eq)});
  for (const auto& e : right)
    out.push_back({e.zone, c2i_formula(e.formula, CMode::ne)});
  return Context(std::move(out));
}

}  // namespace detail

// Focused sequents become right-focused sequents; active sequents become
// left-active sequents answering k in the working zone.
inline IntuitSequent c2i_sequent(const ClassicalSequent& seq,
                                 const Signature& sig) {
  Context lp = detail::c2i_contexts(seq.left_passive(), seq.right_passive());
  switch (seq.shape()) {
    case ClassicalSequent::Shape::right_focus:
      return IntuitSequent::right_focus(std::move(lp),
                                        c2i_formula(seq.focus(), CMode::eq));
    case ClassicalSequent::Shape::left_focus:
      return IntuitSequent::right_focus(std::move(lp),
                                        c2i_formula(seq.focus(), CMode::ne));
    case ClassicalSequent::Shape::active: {
      std::vector<Formula> la;
      for (const auto& f : seq.left_active())
        la.push_back(c2i_formula(f, CMode::eq));
      for (const auto& f : seq.right_active())
        la.push_back(c2i_formula(f, CMode::ne));
      try {
        return IntuitSequent::active_p(std::move(lp),
                                       FormulaBag(std::move(la)),
                                       {sig.working(), answer_atom()});
      } catch (const SequentError& e) {
        // Reachable only for mid-phase sequents holding a suspended atom of
        // the polarity whose translation is a non-atomic negative formula.
        throw EncodeError(std::string("active context does not translate: ") +
                          e.what());
      }
    }
  }
  throw EncodeError("unreachable");
}

// ===========================================================================
// Intuitionistic → classical over the split signature. Six translations,
// one per sequent position; zone annotations pick the left or right form of
// the split signature according to the side the operand will land on.
//
// An atom in an active position gains an explicit shift so that the target
// calculus stores it in the matching split zone: a left-active atom becomes
// !_(lin.l) a, a right-active atom becomes ?_(lin.r) a. The right-active
// clause must be a qmark: a bang there would be a positive non-atom in a
// right-active position, which neither the grammar nor the target rules
// admit.
// ===========================================================================

enum class IMode { lp, lf, rf, la, ra, rp };

inline const char* imode_name(IMode m) {
  switch (m) {
    case IMode::lp: return "lp";
    case IMode::lf: return "lf";
    case IMode::rf: return "rf";
    case IMode::la: return "la";
    case IMode::ra: return "ra";
    case IMode::rp: return "rp";
  }
  return "?";
}

inline Formula i2c_formula(const Formula& f, IMode mode,
                           const Signature& source_sig) {
  detail::check_no_reserved(f);
  if (!f.is_intuitionistic())
    throw EncodeError("par/bot are not intuitionistic connectives");
  auto rec = [&](const Formula& g, IMode m) {
    return i2c_formula(g, m, source_sig);
  };
  const std::string lin = source_sig.working();

  switch (mode) {
    case IMode::lp:
      if (f.kind() == FKind::pos_atom) return f;
      if (f.polarity() == Polarity::negative) return rec(f, IMode::lf);
      throw EncodeError("lp expects a negative formula or a positive atom");

    case IMode::lf:
      switch (f.kind()) {
        case FKind::neg_atom: return f;
        case FKind::qmark:
          return Formula::qmark(zone_right(f.zone()), rec(f.body(), IMode::la));
        case FKind::with:
          return Formula::with(rec(f.lhs(), IMode::lf), rec(f.rhs(), IMode::lf));
        case FKind::top: return Formula::top();
        case FKind::lolli:
          return Formula::lolli(rec(f.lhs(), IMode::rf), rec(f.rhs(), IMode::lf));
        default:
          throw EncodeError("lf expects a negative formula");
      }

    case IMode::rf:
      switch (f.kind()) {
        case FKind::pos_atom: return f;
        case FKind::bang:
          return Formula::bang(zone_left(f.zone()), rec(f.body(), IMode::ra));
        case FKind::tensor:
          return Formula::tensor(rec(f.lhs(), IMode::rf), rec(f.rhs(), IMode::rf));
        case FKind::one: return Formula::one();
        case FKind::plus:
          return Formula::plus(rec(f.lhs(), IMode::rf), rec(f.rhs(), IMode::rf));
        case FKind::zero: return Formula::zero();
        default:
          throw EncodeError("rf expects a positive formula");
      }

    case IMode::la:
      switch (f.kind()) {
        case FKind::pos_atom:
        case FKind::neg_atom:
          return Formula::bang(zone_left(lin), f);
        case FKind::bang:
          return Formula::bang(zone_left(f.zone()), rec(f.body(), IMode::lp));
        case FKind::tensor:
          return Formula::tensor(rec(f.lhs(), IMode::la), rec(f.rhs(), IMode::la));
        case FKind::one: return Formula::one();
        case FKind::plus:
          return Formula::plus(rec(f.lhs(), IMode::la), rec(f.rhs(), IMode::la));
        case FKind::zero: return Formula::zero();
        default:
          throw EncodeError("la expects a positive formula or a negative atom");
      }

    case IMode::ra:
      switch (f.kind()) {
        case FKind::pos_atom:
        case FKind::neg_atom:
          return Formula::qmark(zone_right(lin), f);
        case FKind::qmark:
          return Formula::qmark(zone_right(f.zone()), rec(f.body(), IMode::rp));
        case FKind::with:
          return Formula::with(rec(f.lhs(), IMode::ra), rec(f.rhs(), IMode::ra));
        case FKind::top: return Formula::top();
        case FKind::lolli:
          return Formula::lolli(rec(f.lhs(), IMode::la), rec(f.rhs(), IMode::ra));
        default:
          throw EncodeError("ra expects a negative formula or a positive atom");
      }

    case IMode::rp:
      if (f.kind() == FKind::neg_atom) return f;
      if (f.polarity() == Polarity::positive) return rec(f, IMode::rf);
      throw EncodeError("rp expects a positive formula or a negative atom");
  }
  throw EncodeError("unreachable");
}

// Zoned entry translations: left-passive entries move to the left form of
// their zone, the right-passive entry to the right form.
inline ZonedFormula i2c_zoned(const ZonedFormula& e, IMode mode,
                              const Signature& source_sig) {
  if (mode == IMode::lp)
    return {zone_left(e.zone), i2c_formula(e.formula, IMode::lp, source_sig)};
  if (mode == IMode::rp)
    return {zone_right(e.zone), i2c_formula(e.formula, IMode::rp, source_sig)};
  throw EncodeError("zoned translation requires mode lp or rp");
}

namespace detail {
inline Context i2c_left_passive(const Context& ctx, const Signature& sig) {
  std::vector<ZonedFormula> out;
  for (const auto& e : ctx) out.push_back(i2c_zoned(e, IMode::lp, sig));
  return Context(std::move(out));
}
inline FormulaBag i2c_left_active(const FormulaBag& bag, const Signature& sig) {
  std::vector<Formula> out;
  for (const auto& f : bag) out.push_back(i2c_formula(f, IMode::la, sig));
  return FormulaBag(std::move(out));
}
}  // namespace detail

// The image lives over split(sig); its right-hand side always sits in
// right-form zones and has at most one entry.
inline ClassicalSequent i2c_sequent(const IntuitSequent& seq,
                                    const Signature& sig) {
  Context lp = detail::i2c_left_passive(seq.left_passive(), sig);
  switch (seq.shape()) {
    case IntuitSequent::Shape::right_focus:
      return ClassicalSequent::right_focus(
          std::move(lp), i2c_formula(seq.focus(), IMode::rf, sig), {});
    case IntuitSequent::Shape::left_focus:
      return ClassicalSequent::left_focus(
          std::move(lp), i2c_formula(seq.focus(), IMode::lf, sig),
          Context({i2c_zoned(seq.right_passive(), IMode::rp, sig)}));
    case IntuitSequent::Shape::active_r:
      return ClassicalSequent::active(
          std::move(lp), detail::i2c_left_active(seq.left_active(), sig),
          FormulaBag({i2c_formula(seq.right_active(), IMode::ra, sig)}), {});
    case IntuitSequent::Shape::active_p:
      return ClassicalSequent::active(
          std::move(lp), detail::i2c_left_active(seq.left_active(), sig), {},
          Context({i2c_zoned(seq.right_passive(), IMode::rp, sig)}));
  }
  throw EncodeError("unreachable");
}

// ===========================================================================
// The naive embedding: connectives kept as themselves, signature unchanged,
// intuitionistic sequent shapes mapped to the corresponding classical ones.
// Not adequate — it exists to demonstrate the failure.
// ===========================================================================

inline ClassicalSequent naive_i2c_sequent(const IntuitSequent& seq) {
  switch (seq.shape()) {
    case IntuitSequent::Shape::right_focus:
      return ClassicalSequent::right_focus(seq.left_passive(), seq.focus(), {});
    case IntuitSequent::Shape::left_focus:
      return ClassicalSequent::left_focus(seq.left_passive(), seq.focus(),
                                          Context({seq.right_passive()}));
    case IntuitSequent::Shape::active_r:
      return ClassicalSequent::active(seq.left_passive(), seq.left_active(),
                                      FormulaBag({seq.right_active()}), {});
    case IntuitSequent::Shape::active_p:
      return ClassicalSequent::active(seq.left_passive(), seq.left_active(), {},
                                      Context({seq.right_passive()}));
  }
  throw EncodeError("unreachable");
}

}  // namespace sxl
