#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sxl/error.hpp"
#include "sxl/multiset.hpp"
#include "sxl/sequent.hpp"

namespace sxl {

// One rule application inside a synthetic step. `alt` indexes into the
// canonical list of alternatives available at that point, which is what
// makes traces replayable.
struct TraceStep {
  std::string rule;
  int alt = 0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
  friend std::strong_ordering operator<=>(const TraceStep&,
                                          const TraceStep&) = default;
};

using Trace = std::vector<TraceStep>;

inline nlohmann::json trace_to_json(const Trace& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : trace) arr.push_back({{"rule", s.rule}, {"alt", s.alt}});
  return arr;
}

inline Trace trace_from_json(const nlohmann::json& arr) {
  Trace out;
  for (const auto& s : arr)
    out.push_back({s.at("rule").get<std::string>(), s.at("alt").get<int>()});
  return out;
}

// A maximal decision→focus→active expansion of a neutral sequent. When every
// branch either closes or reaches a neutral premise, `stuck` is empty and
// this is a synthetic inference rule proper; a nonempty `stuck` records the
// focused sequents where branches died.
template <typename Seq>
struct SyntheticRule {
  Seq conclusion;
  Multiset<Seq> premises;
  Multiset<Seq> stuck;
  Trace trace;

  bool completed() const { return stuck.empty(); }

  friend bool operator==(const SyntheticRule&, const SyntheticRule&) = default;
};

struct ExpandStats {
  // Raw binary-rule context splits enumerated, before value dedup: each
  // split of n restricted entries contributes 2^n.
  std::uint64_t binary_splits = 0;
};

// Guard against exponential blowup from context splitting. Exhaustion is an
// error, never a silent truncation.
class Budget {
public:
  explicit Budget(std::int64_t limit = 1'000'000) : limit_(limit) {}

  void tick(std::int64_t n = 1) {
    used_ += n;
    if (used_ > limit_)
      throw ResourceLimitError("node budget exceeded (" +
                               std::to_string(limit_) + " sequents)");
  }

  std::int64_t used() const { return used_; }

private:
  std::int64_t limit_;
  std::int64_t used_ = 0;
};

template <typename Seq>
struct Decision {
  std::string rule;
  Seq result;
};

template <typename Seq>
struct FocusInstance {
  std::string rule;
  std::vector<Seq> premises;
};

namespace detail {

// All ways to distribute the restricted parts of two passive contexts over
// two premises; unrestricted entries are copied to both sides. Value-equal
// outcomes (from permuting equal copies) are merged.
struct ContextSplit {
  Context left1, right1, left2, right2;
  friend bool operator==(const ContextSplit&, const ContextSplit&) = default;
  friend std::strong_ordering operator<=>(const ContextSplit&,
                                          const ContextSplit&) = default;
};

inline std::vector<ContextSplit> enumerate_splits(const Signature& sig,
                                                  const Context& left,
                                                  const Context& right,
                                                  Budget& budget,
                                                  ExpandStats* stats) {
  auto unrestricted = [&](const ZonedFormula& e) {
    return sig.is_unrestricted(e.zone);
  };
  auto [lu, lr] = left.partition(unrestricted);
  auto [ru, rr] = right.partition(unrestricted);

  std::vector<ZonedFormula> res;
  for (const auto& e : lr) res.push_back(e);
  for (const auto& e : rr) res.push_back(e);
  const std::size_t n_left = lr.size();
  const std::size_t n = res.size();
  if (n > 24) throw ResourceLimitError("context split too large");

  std::set<ContextSplit> seen;
  std::vector<ContextSplit> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    budget.tick();
    if (stats) ++stats->binary_splits;
    ContextSplit split{lu, ru, lu, ru};
    for (std::size_t i = 0; i < n; ++i) {
      Context& dst = i < n_left ? (mask >> i & 1 ? split.left2 : split.left1)
                                : (mask >> i & 1 ? split.right2 : split.right1);
      dst.insert(res[i]);
    }
    if (seen.insert(split).second) out.push_back(std::move(split));
  }
  return out;
}

inline bool all_unrestricted(const Signature& sig, const Context& ctx) {
  return ctx.all_of(
      [&](const ZonedFormula& e) { return sig.is_unrestricted(e.zone); });
}

// Exponential side condition: every passive formula sits in a zone at or
// above z.
inline bool zone_floor(const Signature& sig, const std::string& z,
                       const Context& ctx) {
  return ctx.all_of(
      [&](const ZonedFormula& e) { return sig.leq(z, e.zone); });
}

template <typename Seq>
void dedup_instances(std::vector<FocusInstance<Seq>>& instances) {
  std::set<std::pair<std::string, std::vector<Seq>>> seen;
  std::vector<FocusInstance<Seq>> out;
  for (auto& inst : instances)
    if (seen.emplace(inst.rule, inst.premises).second)
      out.push_back(std::move(inst));
  instances = std::move(out);
}

// Partial expansion of one branch of the focus tree.
template <typename Seq>
struct BranchExpansion {
  Trace trace;
  Multiset<Seq> premises;
  Multiset<Seq> stuck;
};

// Identify rules by (premises, stuck); the canonically first trace stays as
// the witness. Output in key order.
template <typename Seq>
std::vector<SyntheticRule<Seq>> dedup_rules(
    std::vector<SyntheticRule<Seq>> rules) {
  std::map<std::pair<Multiset<Seq>, Multiset<Seq>>, SyntheticRule<Seq>> by_key;
  for (auto& r : rules)
    by_key.emplace(std::make_pair(r.premises, r.stuck), std::move(r));
  std::vector<SyntheticRule<Seq>> out;
  for (auto& [key, rule] : by_key) out.push_back(std::move(rule));
  return out;
}

}  // namespace detail

}  // namespace sxl
