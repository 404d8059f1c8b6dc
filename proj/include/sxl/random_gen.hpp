#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sxl/formula.hpp"
#include "sxl/sequent.hpp"
#include "sxl/signature.hpp"

namespace sxl {

// Seeded generators for the randomized adequacy corpus and property tests.
// Everything draws from a caller-owned mt19937_64, so a run is reproducible
// from its seed alone (the raw engine output is used directly; the standard
// distributions are not, since their sequences vary across libraries).

using Rng = std::mt19937_64;

struct GenConfig {
  int max_zones = 3;
  int max_depth = 3;
  int max_context = 3;
};

namespace gen {

inline std::size_t below(Rng& rng, std::size_t n) { return rng() % n; }
inline bool chance(Rng& rng, int percent) {
  return below(rng, 100) < static_cast<std::size_t>(percent);
}

inline std::string pick_zone(Rng& rng, const Signature& sig) {
  return sig.zones()[below(rng, sig.zones().size())];
}

inline Formula pos_atom(Rng& rng) {
  static const char* names[] = {"p", "q", "a"};
  return Formula::pos_atom(names[below(rng, 3)]);
}
inline Formula neg_atom(Rng& rng) {
  static const char* names[] = {"n", "m", "b"};
  return Formula::neg_atom(names[below(rng, 3)]);
}

}  // namespace gen

inline Signature random_signature(Rng& rng, const GenConfig& cfg = {}) {
  Signature::Raw raw;
  const int n = 1 + static_cast<int>(gen::below(
                        rng, static_cast<std::size_t>(cfg.max_zones)));
  for (int i = 0; i < n; ++i) raw.zones.push_back("z" + std::to_string(i));
  raw.working = raw.zones[0];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && gen::chance(rng, 33))
        raw.order.emplace_back(raw.zones[i], raw.zones[j]);

  // A random seed set, then saturated upward so the unrestricted zones are
  // closed under the preorder.
  std::vector<bool> unr(n, false);
  for (int i = 0; i < n; ++i) unr[i] = gen::chance(rng, 40);
  Signature order_only =
      Signature::make({raw.zones, raw.order, raw.working, {}});
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (unr[i] && !unr[j] && order_only.leq(raw.zones[i], raw.zones[j])) {
          unr[j] = true;
          changed = true;
        }
  }
  for (int i = 0; i < n; ++i)
    if (unr[i]) raw.unrestricted.push_back(raw.zones[i]);
  return Signature::make(std::move(raw));
}

// Random formula of the requested polarity. With `intuitionistic`, par and
// bot are never produced.
inline Formula random_formula(Rng& rng, const Signature& sig, Polarity pol,
                              int depth, bool intuitionistic) {
  if (pol == Polarity::positive) {
    const std::size_t n = depth <= 0 ? 2 : 6;
    switch (gen::below(rng, n)) {
      case 0: return gen::pos_atom(rng);
      case 1: return gen::chance(rng, 50) ? Formula::one() : Formula::zero();
      case 2:
        return Formula::tensor(
            random_formula(rng, sig, Polarity::positive, depth - 1,
                           intuitionistic),
            random_formula(rng, sig, Polarity::positive, depth - 1,
                           intuitionistic));
      case 3:
        return Formula::plus(
            random_formula(rng, sig, Polarity::positive, depth - 1,
                           intuitionistic),
            random_formula(rng, sig, Polarity::positive, depth - 1,
                           intuitionistic));
      default: {
        // Operand class: negative formula or positive atom.
        Formula body = gen::chance(rng, 25)
                           ? gen::pos_atom(rng)
                           : random_formula(rng, sig, Polarity::negative,
                                            depth - 1, intuitionistic);
        return Formula::bang(gen::pick_zone(rng, sig), body);
      }
    }
  }
  const std::size_t n = depth <= 0 ? 2 : (intuitionistic ? 6 : 8);
  switch (gen::below(rng, n)) {
    case 0: return gen::neg_atom(rng);
    case 1:
      return intuitionistic
                 ? Formula::top()
                 : (gen::chance(rng, 50) ? Formula::top() : Formula::bot());
    case 2:
      return Formula::with(
          random_formula(rng, sig, Polarity::negative, depth - 1,
                         intuitionistic),
          random_formula(rng, sig, Polarity::negative, depth - 1,
                         intuitionistic));
    case 3:
      return Formula::lolli(
          random_formula(rng, sig, Polarity::positive, depth - 1,
                         intuitionistic),
          random_formula(rng, sig, Polarity::negative, depth - 1,
                         intuitionistic));
    case 4:
    case 5: {
      // Operand class: positive formula or negative atom.
      Formula body = gen::chance(rng, 25)
                         ? gen::neg_atom(rng)
                         : random_formula(rng, sig, Polarity::positive,
                                          depth - 1, intuitionistic);
      return Formula::qmark(gen::pick_zone(rng, sig), body);
    }
    default:
      return Formula::par(
          random_formula(rng, sig, Polarity::negative, depth - 1, false),
          random_formula(rng, sig, Polarity::negative, depth - 1, false));
  }
}

// Negative formula or positive atom.
inline Formula random_pat(Rng& rng, const Signature& sig, int depth,
                          bool intuitionistic) {
  if (gen::chance(rng, 30)) return gen::pos_atom(rng);
  return random_formula(rng, sig, Polarity::negative, depth, intuitionistic);
}

// Positive formula or negative atom.
inline Formula random_nat(Rng& rng, const Signature& sig, int depth,
                          bool intuitionistic) {
  if (gen::chance(rng, 30)) return gen::neg_atom(rng);
  return random_formula(rng, sig, Polarity::positive, depth, intuitionistic);
}

inline Context random_left_passive(Rng& rng, const Signature& sig,
                                   const GenConfig& cfg, bool intuitionistic) {
  std::vector<ZonedFormula> entries;
  const std::size_t n =
      gen::below(rng, static_cast<std::size_t>(cfg.max_context) + 1);
  for (std::size_t i = 0; i < n; ++i)
    entries.push_back({gen::pick_zone(rng, sig),
                       random_pat(rng, sig, cfg.max_depth, intuitionistic)});
  return Context(std::move(entries));
}

inline ClassicalSequent random_classical_neutral(Rng& rng,
                                                 const Signature& sig,
                                                 const GenConfig& cfg = {}) {
  Context left = random_left_passive(rng, sig, cfg, false);
  std::vector<ZonedFormula> right;
  const std::size_t n =
      gen::below(rng, static_cast<std::size_t>(cfg.max_context) + 1);
  for (std::size_t i = 0; i < n; ++i)
    right.push_back(
        {gen::pick_zone(rng, sig), random_nat(rng, sig, cfg.max_depth, false)});
  return ClassicalSequent::neutral(std::move(left), Context(std::move(right)));
}

inline IntuitSequent random_intuit_neutral(Rng& rng, const Signature& sig,
                                           const GenConfig& cfg = {}) {
  Context left = random_left_passive(rng, sig, cfg, true);
  ZonedFormula right{gen::pick_zone(rng, sig),
                     random_nat(rng, sig, cfg.max_depth, true)};
  return IntuitSequent::neutral(std::move(left), std::move(right));
}

inline ClassicalSequent random_classical_active(Rng& rng, const Signature& sig,
                                                const GenConfig& cfg = {}) {
  Context left = random_left_passive(rng, sig, cfg, false);
  std::vector<ZonedFormula> right;
  const std::size_t nr =
      gen::below(rng, static_cast<std::size_t>(cfg.max_context) + 1);
  for (std::size_t i = 0; i < nr; ++i)
    right.push_back(
        {gen::pick_zone(rng, sig), random_nat(rng, sig, cfg.max_depth, false)});
  std::vector<Formula> la, ra;
  const std::size_t nla =
      gen::below(rng, static_cast<std::size_t>(cfg.max_context) + 1);
  for (std::size_t i = 0; i < nla; ++i)
    la.push_back(random_nat(rng, sig, cfg.max_depth, false));
  const std::size_t nra =
      gen::below(rng, static_cast<std::size_t>(cfg.max_context) + 1);
  for (std::size_t i = 0; i < nra; ++i)
    ra.push_back(random_pat(rng, sig, cfg.max_depth, false));
  return ClassicalSequent::active(std::move(left), FormulaBag(std::move(la)),
                                  FormulaBag(std::move(ra)),
                                  Context(std::move(right)));
}

inline IntuitSequent random_intuit_active(Rng& rng, const Signature& sig,
                                          const GenConfig& cfg = {}) {
  Context left = random_left_passive(rng, sig, cfg, true);
  std::vector<Formula> la;
  const std::size_t nla =
      gen::below(rng, static_cast<std::size_t>(cfg.max_context) + 1);
  for (std::size_t i = 0; i < nla; ++i)
    la.push_back(random_nat(rng, sig, cfg.max_depth, true));
  if (gen::chance(rng, 50))
    return IntuitSequent::active_r(std::move(left), FormulaBag(std::move(la)),
                                   random_pat(rng, sig, cfg.max_depth, true));
  return IntuitSequent::active_p(
      std::move(left), FormulaBag(std::move(la)),
      {gen::pick_zone(rng, sig), random_nat(rng, sig, cfg.max_depth, true)});
}

}  // namespace sxl
