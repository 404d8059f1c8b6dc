#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>

#include "sxl/error.hpp"
#include "sxl/formula.hpp"
#include "sxl/multiset.hpp"
#include "sxl/signature.hpp"

namespace sxl {

struct ZonedFormula {
  std::string zone;
  Formula formula;

  friend bool operator==(const ZonedFormula&, const ZonedFormula&) = default;
  friend std::strong_ordering operator<=>(const ZonedFormula& a,
                                          const ZonedFormula& b) {
    if (auto c = a.zone <=> b.zone; c != 0) return c;
    return a.formula <=> b.formula;
  }
};

using Context = Multiset<ZonedFormula>;
using FormulaBag = Multiset<Formula>;

namespace detail {

inline void check_left_passive(const Context& ctx) {
  for (const auto& e : ctx)
    if (!e.formula.is_pat())
      throw SequentError(
          "left passive entries must be negative formulas or positive atoms");
}
inline void check_right_passive(const Context& ctx) {
  for (const auto& e : ctx)
    if (!e.formula.is_nat())
      throw SequentError(
          "right passive entries must be positive formulas or negative atoms");
}
inline void check_left_active(const FormulaBag& bag) {
  for (const auto& f : bag)
    if (!f.is_nat())
      throw SequentError(
          "left active formulas must be positive or negative atoms");
}
inline void check_right_active(const FormulaBag& bag) {
  for (const auto& f : bag)
    if (!f.is_pat())
      throw SequentError(
          "right active formulas must be negative or positive atoms");
}

}  // namespace detail

// Two-sided focused sequent. Three shapes:
//   right focus   Γ ⊢ [P] ; Δ
//   left focus    Γ ; [N] ⊢ Δ
//   active        Γ ; Ω ⊢ Ξ ; Δ      (neutral when Ω and Ξ are empty)
class ClassicalSequent {
public:
  enum class Shape { right_focus, left_focus, active };

  // The empty neutral sequent; also the placeholder state.
  ClassicalSequent()
      : ClassicalSequent(Shape::active, {}, Formula(), {}, {}, {}) {}

  static ClassicalSequent right_focus(Context lp, Formula focus, Context rp) {
    if (focus.polarity() != Polarity::positive)
      throw SequentError("right focus requires a positive formula");
    detail::check_left_passive(lp);
    detail::check_right_passive(rp);
    return ClassicalSequent(Shape::right_focus, std::move(lp), std::move(focus),
                            {}, {}, std::move(rp));
  }
  static ClassicalSequent left_focus(Context lp, Formula focus, Context rp) {
    if (focus.polarity() != Polarity::negative)
      throw SequentError("left focus requires a negative formula");
    detail::check_left_passive(lp);
    detail::check_right_passive(rp);
    return ClassicalSequent(Shape::left_focus, std::move(lp), std::move(focus),
                            {}, {}, std::move(rp));
  }
  static ClassicalSequent active(Context lp, FormulaBag la, FormulaBag ra,
                                 Context rp) {
    detail::check_left_passive(lp);
    detail::check_right_passive(rp);
    detail::check_left_active(la);
    detail::check_right_active(ra);
    return ClassicalSequent(Shape::active, std::move(lp), Formula(),
                            std::move(la), std::move(ra), std::move(rp));
  }
  static ClassicalSequent neutral(Context lp, Context rp) {
    return active(std::move(lp), {}, {}, std::move(rp));
  }

  Shape shape() const { return shape_; }
  bool is_neutral() const {
    return shape_ == Shape::active && left_active_.empty() &&
           right_active_.empty();
  }

  const Context& left_passive() const { return left_passive_; }
  const Context& right_passive() const { return right_passive_; }
  const Formula& focus() const { return focus_; }
  const FormulaBag& left_active() const { return left_active_; }
  const FormulaBag& right_active() const { return right_active_; }

  friend bool operator==(const ClassicalSequent&,
                         const ClassicalSequent&) = default;
  friend std::strong_ordering operator<=>(const ClassicalSequent& a,
                                          const ClassicalSequent& b) {
    if (auto c = a.shape_ <=> b.shape_; c != 0) return c;
    if (a.shape_ != Shape::active) {
      if (auto c = a.focus_ <=> b.focus_; c != 0) return c;
    }
    if (auto c = a.left_passive_ <=> b.left_passive_; c != 0) return c;
    if (auto c = a.left_active_ <=> b.left_active_; c != 0) return c;
    if (auto c = a.right_active_ <=> b.right_active_; c != 0) return c;
    return a.right_passive_ <=> b.right_passive_;
  }

private:
  ClassicalSequent(Shape s, Context lp, Formula focus, FormulaBag la,
                   FormulaBag ra, Context rp)
      : shape_(s),
        left_passive_(std::move(lp)),
        focus_(std::move(focus)),
        left_active_(std::move(la)),
        right_active_(std::move(ra)),
        right_passive_(std::move(rp)) {}

  Shape shape_;
  Context left_passive_;
  Formula focus_;
  FormulaBag left_active_;
  FormulaBag right_active_;
  Context right_passive_;
};

// Intuitionistic restriction: every sequent has exactly one right-hand
// entity. Four shapes:
//   right focus   Γ ⊢ [P]
//   left focus    Γ ; [N] ⊢ z:Q
//   active (R)    Γ ; Ω ⊢ N ; ·
//   active (P)    Γ ; Ω ⊢ · ; z:Q   (neutral when Ω is empty)
class IntuitSequent {
public:
  enum class Shape { right_focus, left_focus, active_r, active_p };

  // Placeholder state only: no right-hand entity, so never neutral and
  // rejected by the engine entry points.
  IntuitSequent()
      : IntuitSequent(Shape::active_p, {}, Formula(), {}, Formula(),
                      std::nullopt) {}

  static IntuitSequent right_focus(Context lp, Formula focus) {
    if (focus.polarity() != Polarity::positive)
      throw SequentError("right focus requires a positive formula");
    check_formula(focus);
    detail::check_left_passive(lp);
    check_context(lp);
    return IntuitSequent(Shape::right_focus, std::move(lp), std::move(focus),
                         {}, Formula(), std::nullopt);
  }
  static IntuitSequent left_focus(Context lp, Formula focus, ZonedFormula rp) {
    if (focus.polarity() != Polarity::negative)
      throw SequentError("left focus requires a negative formula");
    check_formula(focus);
    check_right(rp);
    detail::check_left_passive(lp);
    check_context(lp);
    return IntuitSequent(Shape::left_focus, std::move(lp), std::move(focus),
                         {}, Formula(), std::move(rp));
  }
  static IntuitSequent active_r(Context lp, FormulaBag la, Formula ra) {
    if (!ra.is_pat())
      throw SequentError(
          "right active formula must be negative or a positive atom");
    check_formula(ra);
    detail::check_left_passive(lp);
    detail::check_left_active(la);
    check_context(lp);
    for (const auto& f : la) check_formula(f);
    return IntuitSequent(Shape::active_r, std::move(lp), Formula(),
                         std::move(la), std::move(ra), std::nullopt);
  }
  static IntuitSequent active_p(Context lp, FormulaBag la, ZonedFormula rp) {
    check_right(rp);
    detail::check_left_passive(lp);
    detail::check_left_active(la);
    check_context(lp);
    for (const auto& f : la) check_formula(f);
    return IntuitSequent(Shape::active_p, std::move(lp), Formula(),
                         std::move(la), Formula(), std::move(rp));
  }
  static IntuitSequent neutral(Context lp, ZonedFormula rp) {
    return active_p(std::move(lp), {}, std::move(rp));
  }

  Shape shape() const { return shape_; }
  bool is_neutral() const {
    return shape_ == Shape::active_p && left_active_.empty() &&
           right_passive_.has_value();
  }

  const Context& left_passive() const { return left_passive_; }
  const Formula& focus() const { return focus_; }
  const FormulaBag& left_active() const { return left_active_; }
  const Formula& right_active() const { return right_active_; }
  const ZonedFormula& right_passive() const { return *right_passive_; }
  bool has_right_passive() const { return right_passive_.has_value(); }

  friend bool operator==(const IntuitSequent&, const IntuitSequent&) = default;
  friend std::strong_ordering operator<=>(const IntuitSequent& a,
                                          const IntuitSequent& b) {
    if (auto c = a.shape_ <=> b.shape_; c != 0) return c;
    if (a.focus_.valid() || b.focus_.valid()) {
      if (!a.focus_.valid()) return std::strong_ordering::less;
      if (!b.focus_.valid()) return std::strong_ordering::greater;
      if (auto c = a.focus_ <=> b.focus_; c != 0) return c;
    }
    if (auto c = a.left_passive_ <=> b.left_passive_; c != 0) return c;
    if (auto c = a.left_active_ <=> b.left_active_; c != 0) return c;
    if (a.right_active_.valid() || b.right_active_.valid()) {
      if (!a.right_active_.valid()) return std::strong_ordering::less;
      if (!b.right_active_.valid()) return std::strong_ordering::greater;
      if (auto c = a.right_active_ <=> b.right_active_; c != 0) return c;
    }
    if (a.right_passive_.has_value() != b.right_passive_.has_value())
      return a.right_passive_.has_value() ? std::strong_ordering::greater
                                          : std::strong_ordering::less;
    if (!a.right_passive_.has_value()) return std::strong_ordering::equal;
    return *a.right_passive_ <=> *b.right_passive_;
  }

private:
  IntuitSequent(Shape s, Context lp, Formula focus, FormulaBag la, Formula ra,
                std::optional<ZonedFormula> rp)
      : shape_(s),
        left_passive_(std::move(lp)),
        focus_(std::move(focus)),
        left_active_(std::move(la)),
        right_active_(std::move(ra)),
        right_passive_(std::move(rp)) {}

  static void check_formula(const Formula& f) {
    if (!f.is_intuitionistic())
      throw SequentError("par/bot cannot occur in an intuitionistic sequent");
  }
  static void check_context(const Context& ctx) {
    for (const auto& e : ctx) check_formula(e.formula);
  }
  static void check_right(const ZonedFormula& rp) {
    if (!rp.formula.is_nat())
      throw SequentError(
          "right-hand formula must be positive or a negative atom");
    check_formula(rp.formula);
  }

  Shape shape_;
  Context left_passive_;
  Formula focus_;
  FormulaBag left_active_;
  Formula right_active_;
  std::optional<ZonedFormula> right_passive_;
};

// Zone-membership validation against a signature; class constraints are
// already enforced by the sequent constructors.
inline void validate_zones(const Signature& sig, const Context& ctx) {
  for (const auto& e : ctx)
    if (!sig.has_zone(e.zone))
      throw SequentError("unknown zone '" + e.zone + "' in sequent");
}
inline void validate_formula_zones(const Signature& sig, const Formula& f) {
  switch (f.kind()) {
    case FKind::bang:
    case FKind::qmark:
      if (!sig.has_zone(f.zone()))
        throw SequentError("unknown zone '" + f.zone() + "' in formula");
      validate_formula_zones(sig, f.body());
      break;
    case FKind::tensor:
    case FKind::plus:
    case FKind::with:
    case FKind::par:
    case FKind::lolli:
      validate_formula_zones(sig, f.lhs());
      validate_formula_zones(sig, f.rhs());
      break;
    default:
      break;
  }
}
inline void validate_sequent(const Signature& sig, const ClassicalSequent& s) {
  validate_zones(sig, s.left_passive());
  validate_zones(sig, s.right_passive());
  for (const auto& e : s.left_passive()) validate_formula_zones(sig, e.formula);
  for (const auto& e : s.right_passive()) validate_formula_zones(sig, e.formula);
  for (const auto& f : s.left_active()) validate_formula_zones(sig, f);
  for (const auto& f : s.right_active()) validate_formula_zones(sig, f);
  if (s.shape() != ClassicalSequent::Shape::active)
    validate_formula_zones(sig, s.focus());
}
inline void validate_sequent(const Signature& sig, const IntuitSequent& s) {
  validate_zones(sig, s.left_passive());
  for (const auto& e : s.left_passive()) validate_formula_zones(sig, e.formula);
  for (const auto& f : s.left_active()) validate_formula_zones(sig, f);
  if (s.shape() == IntuitSequent::Shape::right_focus ||
      s.shape() == IntuitSequent::Shape::left_focus)
    validate_formula_zones(sig, s.focus());
  if (s.shape() == IntuitSequent::Shape::active_r)
    validate_formula_zones(sig, s.right_active());
  if (s.has_right_passive()) {
    if (!sig.has_zone(s.right_passive().zone))
      throw SequentError("unknown zone '" + s.right_passive().zone +
                         "' in sequent");
    validate_formula_zones(sig, s.right_passive().formula);
  }
}

}  // namespace sxl
