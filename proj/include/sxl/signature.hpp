#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sxl/error.hpp"

namespace sxl {

// Zone names of a split signature carry a .l / .r suffix.
inline std::string zone_left(const std::string& z) { return z + ".l"; }
inline std::string zone_right(const std::string& z) { return z + ".r"; }

// A subexponential signature: a finite preordered zone set with a working
// zone and an upward-closed set of unrestricted zones. The preorder is kept
// as generating pairs; the reflexive-transitive closure is computed once at
// construction so side-condition queries are O(1).
class Signature {
public:
  struct Raw {
    std::vector<std::string> zones;
    std::vector<std::pair<std::string, std::string>> order;
    std::string working;
    std::vector<std::string> unrestricted;
  };

  // Invariant violations, as human-readable strings. Empty means valid.
  static std::vector<std::string> check(const Raw& raw) {
    std::vector<std::string> bad;
    if (raw.zones.empty()) bad.push_back("zone set is empty");
    std::map<std::string, int> index;
    for (const auto& z : raw.zones) {
      if (z.empty()) bad.push_back("zone name is empty");
      if (index.count(z)) bad.push_back("duplicate zone '" + z + "'");
      index.emplace(z, static_cast<int>(index.size()));
    }
    if (!index.count(raw.working))
      bad.push_back("working zone '" + raw.working + "' is not a zone");
    for (const auto& [a, b] : raw.order) {
      if (!index.count(a)) bad.push_back("order mentions unknown zone '" + a + "'");
      if (!index.count(b)) bad.push_back("order mentions unknown zone '" + b + "'");
    }
    for (const auto& u : raw.unrestricted)
      if (!index.count(u))
        bad.push_back("unrestricted zone '" + u + "' is not a zone");
    if (!bad.empty()) return bad;

    auto closure = close(raw.zones.size(), raw.order, index);
    for (const auto& u : raw.unrestricted) {
      for (const auto& z : raw.zones) {
        bool uz = closure[index.at(u)][index.at(z)];
        bool z_unr = std::find(raw.unrestricted.begin(), raw.unrestricted.end(),
                               z) != raw.unrestricted.end();
        if (uz && !z_unr)
          bad.push_back("unrestricted set is not upward closed: " + u +
                        " <= " + z + " but '" + z + "' is restricted");
      }
    }
    return bad;
  }

  static Signature make(Raw raw) {
    auto bad = check(raw);
    if (!bad.empty()) {
      std::string msg = "invalid signature:";
      for (const auto& b : bad) msg += "\n  - " + b;
      throw SignatureError(msg);
    }
    return Signature(std::move(raw));
  }

  static Signature builtin(const std::string& name) {
    if (name == "mall") return make({{"lin"}, {}, "lin", {}});
    if (name == "ll") return make({{"lin", "u"}, {{"lin", "u"}}, "lin", {"u"}});
    if (name == "l") return make({{"lin"}, {}, "lin", {"lin"}});
    throw SignatureError("unknown builtin signature '" + name + "'");
  }

  const std::vector<std::string>& zones() const { return raw_.zones; }
  const std::vector<std::pair<std::string, std::string>>& order_pairs() const {
    return raw_.order;
  }
  const std::string& working() const { return raw_.working; }
  const std::vector<std::string>& unrestricted() const {
    return raw_.unrestricted;
  }

  bool has_zone(const std::string& z) const { return index_.count(z) > 0; }

  // z1 <= z2 in the reflexive-transitive closure.
  bool leq(const std::string& z1, const std::string& z2) const {
    return closure_[zone_index(z1)][zone_index(z2)];
  }

  bool is_unrestricted(const std::string& z) const {
    zone_index(z);
    return std::find(raw_.unrestricted.begin(), raw_.unrestricted.end(), z) !=
           raw_.unrestricted.end();
  }

  // The split form: every zone doubles into a left and a right form. Right
  // forms sit strictly below their left forms and are always restricted;
  // both forms retain the source ordering internally.
  Signature split() const {
    Raw out;
    for (const auto& z : raw_.zones) out.zones.push_back(zone_left(z));
    for (const auto& z : raw_.zones) out.zones.push_back(zone_right(z));
    for (const auto& [a, b] : raw_.order) {
      out.order.emplace_back(zone_left(a), zone_left(b));
      out.order.emplace_back(zone_right(a), zone_right(b));
    }
    for (const auto& z : raw_.zones)
      out.order.emplace_back(zone_right(z), zone_left(z));
    out.working = zone_left(raw_.working);
    for (const auto& u : raw_.unrestricted)
      out.unrestricted.push_back(zone_left(u));
    return make(std::move(out));
  }

  // Order isomorphism: a zone bijection preserving both the preorder and
  // the unrestricted set. Returns one witness mapping if any exists. The
  // working zones are not required to correspond.
  std::optional<std::map<std::string, std::string>> order_isomorphism(
      const Signature& other) const {
    const auto n = raw_.zones.size();
    if (n != other.raw_.zones.size()) return std::nullopt;
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    do {
      bool ok = true;
      for (std::size_t i = 0; ok && i < n; ++i) {
        if (is_unrestricted(raw_.zones[i]) !=
            other.is_unrestricted(other.raw_.zones[perm[i]]))
          ok = false;
        for (std::size_t j = 0; ok && j < n; ++j)
          if (closure_[i][j] !=
              other.closure_[perm[i]][perm[j]])
            ok = false;
      }
      if (ok) {
        std::map<std::string, std::string> witness;
        for (std::size_t i = 0; i < n; ++i)
          witness[raw_.zones[i]] = other.raw_.zones[perm[i]];
        return witness;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
  }

  nlohmann::json to_json() const {
    nlohmann::json order = nlohmann::json::array();
    for (const auto& [a, b] : raw_.order) order.push_back({a, b});
    return {{"zones", raw_.zones},
            {"order", order},
            {"working", raw_.working},
            {"unrestricted", raw_.unrestricted}};
  }

  static Signature from_json(const nlohmann::json& j) {
    Raw raw;
    raw.zones = j.at("zones").get<std::vector<std::string>>();
    for (const auto& pair : j.at("order"))
      raw.order.emplace_back(pair.at(0).get<std::string>(),
                             pair.at(1).get<std::string>());
    raw.working = j.at("working").get<std::string>();
    raw.unrestricted = j.at("unrestricted").get<std::vector<std::string>>();
    return make(std::move(raw));
  }

private:
  explicit Signature(Raw raw) : raw_(std::move(raw)) {
    for (const auto& z : raw_.zones)
      index_.emplace(z, static_cast<int>(index_.size()));
    closure_ = close(raw_.zones.size(), raw_.order, index_);
  }

  static std::vector<std::vector<bool>> close(
      std::size_t n, const std::vector<std::pair<std::string, std::string>>& order,
      const std::map<std::string, int>& index) {
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
    for (const auto& [a, b] : order) m[index.at(a)][index.at(b)] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (m[i][k] && m[k][j]) m[i][j] = true;
    return m;
  }

  int zone_index(const std::string& z) const {
    auto it = index_.find(z);
    if (it == index_.end())
      throw SignatureError("unknown zone '" + z + "'");
    return it->second;
  }

  Raw raw_;
  std::map<std::string, int> index_;
  std::vector<std::vector<bool>> closure_;
};

}  // namespace sxl
