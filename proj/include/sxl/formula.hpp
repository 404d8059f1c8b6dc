#pragma once

#include <compare>
#include <memory>
#include <string>
#include <utility>

#include "sxl/error.hpp"

namespace sxl {

enum class Polarity { positive, negative };

// Constructor tags, grouped by polarity. The numeric order doubles as the
// canonical structural order used wherever a deterministic formula order is
// needed (multiset normal forms, active-phase scheduling, traces).
enum class FKind {
  pos_atom,
  tensor,
  one,
  plus,
  zero,
  bang,
  neg_atom,
  with,
  top,
  par,
  bot,
  lolli,
  qmark,
};

inline const char* fkind_name(FKind k) {
  switch (k) {
    case FKind::pos_atom: return "pos_atom";
    case FKind::tensor: return "tensor";
    case FKind::one: return "one";
    case FKind::plus: return "plus";
    case FKind::zero: return "zero";
    case FKind::bang: return "bang";
    case FKind::neg_atom: return "neg_atom";
    case FKind::with: return "with";
    case FKind::top: return "top";
    case FKind::par: return "par";
    case FKind::bot: return "bot";
    case FKind::lolli: return "lolli";
    case FKind::qmark: return "qmark";
  }
  return "?";
}

// The answer atom of the classical-to-intuitionistic translation and the
// dual-atom marker are reserved; user syntax may not mention them.
inline bool reserved_atom_name(const std::string& name) {
  return name == "k" || name.find('^') != std::string::npos;
}

// Immutable polarized formula with structural equality. Nodes are shared,
// so copies are cheap; two flags that tests and encoders query often are
// cached bottom-up.
class Formula {
  struct Node {
    FKind kind;
    std::string name;  // atoms
    std::string zone;  // bang / qmark
    std::shared_ptr<const Node> a, b;
    bool has_reserved = false;
    bool has_par_bot = false;
  };

public:
  Formula() = default;

  static Formula pos_atom(std::string name) {
    return atom(FKind::pos_atom, std::move(name));
  }
  static Formula neg_atom(std::string name) {
    return atom(FKind::neg_atom, std::move(name));
  }
  static Formula one() { return nullary(FKind::one); }
  static Formula zero() { return nullary(FKind::zero); }
  static Formula top() { return nullary(FKind::top); }
  static Formula bot() { return nullary(FKind::bot); }

  static Formula tensor(Formula l, Formula r) {
    require(l.polarity() == Polarity::positive &&
                r.polarity() == Polarity::positive,
            "tensor requires positive operands");
    return binary(FKind::tensor, std::move(l), std::move(r));
  }
  static Formula plus(Formula l, Formula r) {
    require(l.polarity() == Polarity::positive &&
                r.polarity() == Polarity::positive,
            "plus requires positive operands");
    return binary(FKind::plus, std::move(l), std::move(r));
  }
  static Formula with(Formula l, Formula r) {
    require(l.polarity() == Polarity::negative &&
                r.polarity() == Polarity::negative,
            "with requires negative operands");
    return binary(FKind::with, std::move(l), std::move(r));
  }
  static Formula par(Formula l, Formula r) {
    require(l.polarity() == Polarity::negative &&
                r.polarity() == Polarity::negative,
            "par requires negative operands");
    return binary(FKind::par, std::move(l), std::move(r));
  }
  static Formula lolli(Formula antecedent, Formula consequent) {
    require(antecedent.polarity() == Polarity::positive,
            "lolli requires a positive antecedent");
    require(consequent.polarity() == Polarity::negative,
            "lolli requires a negative consequent");
    return binary(FKind::lolli, std::move(antecedent), std::move(consequent));
  }
  // Operand class: negative formula or positive atom.
  static Formula bang(std::string zone, Formula body) {
    require(body.is_pat(), "bang operand must be negative or a positive atom");
    return zoned(FKind::bang, std::move(zone), std::move(body));
  }
  // Operand class: positive formula or negative atom.
  static Formula qmark(std::string zone, Formula body) {
    require(body.is_nat(), "qmark operand must be positive or a negative atom");
    return zoned(FKind::qmark, std::move(zone), std::move(body));
  }

  bool valid() const { return node_ != nullptr; }
  FKind kind() const { return node_->kind; }

  Polarity polarity() const {
    switch (node_->kind) {
      case FKind::pos_atom:
      case FKind::tensor:
      case FKind::one:
      case FKind::plus:
      case FKind::zero:
      case FKind::bang:
        return Polarity::positive;
      default:
        return Polarity::negative;
    }
  }

  bool is_atom() const {
    return node_->kind == FKind::pos_atom || node_->kind == FKind::neg_atom;
  }
  // Negative formula or positive atom.
  bool is_pat() const {
    return polarity() == Polarity::negative || node_->kind == FKind::pos_atom;
  }
  // Positive formula or negative atom.
  bool is_nat() const {
    return polarity() == Polarity::positive || node_->kind == FKind::neg_atom;
  }

  const std::string& atom_name() const { return node_->name; }
  const std::string& zone() const { return node_->zone; }
  Formula body() const { return Formula(node_->a); }  // bang/qmark operand
  Formula lhs() const { return Formula(node_->a); }
  Formula rhs() const { return Formula(node_->b); }

  bool has_reserved_atom() const { return node_->has_reserved; }
  // True when neither par nor bot occurs anywhere in the tree.
  bool is_intuitionistic() const { return !node_->has_par_bot; }

  friend bool operator==(const Formula& x, const Formula& y) {
    if (x.node_ == y.node_) return true;
    if (!x.node_ || !y.node_) return false;
    return x.compare(y) == 0;
  }
  friend std::strong_ordering operator<=>(const Formula& x, const Formula& y) {
    int c = x.compare(y);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static void require(bool ok, const char* msg) {
    if (!ok) throw FormulaError(msg);
  }

  static Formula atom(FKind k, std::string name) {
    require(!name.empty(), "atom name must be nonempty");
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->has_reserved = reserved_atom_name(name);
    n->name = std::move(name);
    return Formula(std::move(n));
  }
  static Formula nullary(FKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->has_par_bot = (k == FKind::bot);
    return Formula(std::move(n));
  }
  static Formula binary(FKind k, Formula l, Formula r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->has_reserved = l.node_->has_reserved || r.node_->has_reserved;
    n->has_par_bot =
        (k == FKind::par) || l.node_->has_par_bot || r.node_->has_par_bot;
    n->a = std::move(l.node_);
    n->b = std::move(r.node_);
    return Formula(std::move(n));
  }
  static Formula zoned(FKind k, std::string zone, Formula body) {
    require(!zone.empty(), "zone name must be nonempty");
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->zone = std::move(zone);
    n->has_reserved = body.node_->has_reserved;
    n->has_par_bot = body.node_->has_par_bot;
    n->a = std::move(body.node_);
    return Formula(std::move(n));
  }

  int compare(const Formula& other) const {
    return compare_nodes(node_.get(), other.node_.get());
  }
  static int compare_nodes(const Node* x, const Node* y) {
    if (x == y) return 0;
    if (x->kind != y->kind)
      return static_cast<int>(x->kind) < static_cast<int>(y->kind) ? -1 : 1;
    if (int c = x->name.compare(y->name)) return c;
    if (int c = x->zone.compare(y->zone)) return c;
    if (x->a || y->a) {
      if (!x->a) return -1;
      if (!y->a) return 1;
      if (int c = compare_nodes(x->a.get(), y->a.get())) return c;
    }
    if (x->b || y->b) {
      if (!x->b) return -1;
      if (!y->b) return 1;
      if (int c = compare_nodes(x->b.get(), y->b.get())) return c;
    }
    return 0;
  }

  std::shared_ptr<const Node> node_;
};

inline Polarity polarity_of(const Formula& f) { return f.polarity(); }

// Maps a negative atom n to its fresh positive dual written n^.
inline Formula dual_atom(const Formula& n) {
  if (!n.valid() || n.kind() != FKind::neg_atom)
    throw FormulaError("dual_atom expects a negative atom");
  return Formula::pos_atom(n.atom_name() + "^");
}

// The fixed answer atom of the double-negation translation.
inline Formula answer_atom() { return Formula::neg_atom("k"); }

}  // namespace sxl
