#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sxl/error.hpp"
#include "sxl/formula.hpp"
#include "sxl/sequent.hpp"
#include "sxl/signature.hpp"

namespace sxl {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

enum class Tok {
  ident,       // zone or positive atom (may contain dots when used as a zone)
  tick_ident,  // 'n
  one,
  zero,
  kw_top,
  kw_bot,
  star,
  plus,
  amp,
  pipe,
  lolli,
  bang,
  qmark,
  lbracket,
  rbracket,
  lparen,
  rparen,
  colon,
  comma,
  turnstile,  // |-
  end,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind)
      throw ParseError(std::string("expected ") + what, tok_.pos);
    advance();
  }

private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    tok_.pos = pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::end, "", pos_};
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '*': tok_ = {Tok::star, "*", pos_++}; return;
      case '+': tok_ = {Tok::plus, "+", pos_++}; return;
      case '&': tok_ = {Tok::amp, "&", pos_++}; return;
      case '!': tok_ = {Tok::bang, "!", pos_++}; return;
      case '?': tok_ = {Tok::qmark, "?", pos_++}; return;
      case '[': tok_ = {Tok::lbracket, "[", pos_++}; return;
      case ']': tok_ = {Tok::rbracket, "]", pos_++}; return;
      case '(': tok_ = {Tok::lparen, "(", pos_++}; return;
      case ')': tok_ = {Tok::rparen, ")", pos_++}; return;
      case ':': tok_ = {Tok::colon, ":", pos_++}; return;
      case ',': tok_ = {Tok::comma, ",", pos_++}; return;
      case '1': tok_ = {Tok::one, "1", pos_++}; return;
      case '0': tok_ = {Tok::zero, "0", pos_++}; return;
      case '|':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
          tok_ = {Tok::turnstile, "|-", pos_};
          pos_ += 2;
        } else {
          tok_ = {Tok::pipe, "|", pos_++};
        }
        return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == 'o') {
          tok_ = {Tok::lolli, "-o", pos_};
          pos_ += 2;
          return;
        }
        throw ParseError("stray '-'", pos_);
      case '\'': {
        std::size_t start = pos_++;
        if (pos_ >= text_.size() || !ident_start(text_[pos_]))
          throw ParseError("expected identifier after '", start);
        tok_ = {Tok::tick_ident, lex_name(), start};
        return;
      }
      default:
        if (ident_start(c)) {
          std::size_t start = pos_;
          std::string name = lex_name();
          if (name == "top") tok_ = {Tok::kw_top, name, start};
          else if (name == "bot") tok_ = {Tok::kw_bot, name, start};
          else tok_ = {Tok::ident, name, start};
          return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
  }

  // name := ident ('.' ident)* '^'*   — dots appear in split-form zone
  // names, the caret marks dual atoms.
  std::string lex_name() {
    std::string out;
    while (pos_ < text_.size() && ident_char(text_[pos_])) out += text_[pos_++];
    while (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
           ident_char(text_[pos_ + 1])) {
      out += text_[pos_++];
      while (pos_ < text_.size() && ident_char(text_[pos_])) out += text_[pos_++];
    }
    while (pos_ < text_.size() && text_[pos_] == '^') out += text_[pos_++];
    return out;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_{Tok::end, "", 0};
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Formula and sequent parsing
// ---------------------------------------------------------------------------

struct ParseOptions {
  // Dual atoms (n^) and the answer atom k only appear in encoder output;
  // user syntax rejects them unless explicitly allowed.
  bool allow_reserved = false;
};

namespace detail {

class FormulaParser {
public:
  FormulaParser(detail::Lexer& lex, const Signature& sig, ParseOptions opts)
      : lex_(lex), sig_(sig), opts_(opts) {}

  Formula parse() { return parse_lolli(); }

private:
  Formula parse_lolli() {
    std::size_t pos = lex_.peek().pos;
    Formula lhs = parse_tier();
    if (lex_.peek().kind == Tok::lolli) {
      lex_.take();
      Formula rhs = parse_lolli();
      return build(pos, [&] { return Formula::lolli(lhs, rhs); });
    }
    return lhs;
  }

  Formula parse_tier() {
    Formula acc = parse_unary();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k != Tok::star && k != Tok::plus && k != Tok::amp && k != Tok::pipe)
        return acc;
      std::size_t pos = lex_.take().pos;
      Formula rhs = parse_unary();
      acc = build(pos, [&]() -> Formula {
        switch (k) {
          case Tok::star: return Formula::tensor(acc, rhs);
          case Tok::plus: return Formula::plus(acc, rhs);
          case Tok::amp: return Formula::with(acc, rhs);
          default: return Formula::par(acc, rhs);
        }
      });
    }
  }

  Formula parse_unary() {
    Tok k = lex_.peek().kind;
    if (k == Tok::bang || k == Tok::qmark) {
      std::size_t pos = lex_.take().pos;
      lex_.expect(Tok::lbracket, "'[' after exponential");
      Token zone = lex_.peek();
      if (zone.kind != Tok::ident)
        throw ParseError("expected zone name", zone.pos);
      lex_.take();
      if (!sig_.has_zone(zone.text))
        throw ParseError("unknown zone '" + zone.text + "'", zone.pos);
      lex_.expect(Tok::rbracket, "']' after zone");
      Formula body = parse_unary();
      return build(pos, [&] {
        return k == Tok::bang ? Formula::bang(zone.text, body)
                              : Formula::qmark(zone.text, body);
      });
    }
    return parse_primary();
  }

  Formula parse_primary() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::lparen: {
        Formula f = parse_lolli();
        lex_.expect(Tok::rparen, "')'");
        return f;
      }
      case Tok::one: return Formula::one();
      case Tok::zero: return Formula::zero();
      case Tok::kw_top: return Formula::top();
      case Tok::kw_bot: return Formula::bot();
      case Tok::ident:
        check_atom_name(t);
        return Formula::pos_atom(t.text);
      case Tok::tick_ident:
        check_atom_name(t);
        return Formula::neg_atom(t.text);
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }

  void check_atom_name(const Token& t) const {
    if (t.text.find('.') != std::string::npos)
      throw ParseError("atom names may not contain '.'", t.pos);
    if (!opts_.allow_reserved && reserved_atom_name(t.text))
      throw ParseError("atom name '" + t.text + "' is reserved", t.pos);
  }

  template <typename Build>
  Formula build(std::size_t pos, Build f) {
    try {
      return f();
    } catch (const FormulaError& e) {
      throw ParseError(e.what(), pos);
    }
  }

  detail::Lexer& lex_;
  const Signature& sig_;
  ParseOptions opts_;
};

inline std::vector<ZonedFormula> parse_entry_list(detail::Lexer& lex,
                                                  const Signature& sig,
                                                  ParseOptions opts) {
  std::vector<ZonedFormula> out;
  if (lex.peek().kind == Tok::turnstile || lex.peek().kind == Tok::end)
    return out;
  for (;;) {
    Token zone = lex.peek();
    if (zone.kind != Tok::ident)
      throw ParseError("expected 'zone:formula' entry", zone.pos);
    lex.take();
    if (!sig.has_zone(zone.text))
      throw ParseError("unknown zone '" + zone.text + "'", zone.pos);
    lex.expect(Tok::colon, "':' after zone");
    FormulaParser fp(lex, sig, opts);
    out.push_back({zone.text, fp.parse()});
    if (lex.peek().kind != Tok::comma) return out;
    lex.take();
  }
}

}  // namespace detail

inline Formula parse_formula(const std::string& text, const Signature& sig,
                             ParseOptions opts = {}) {
  detail::Lexer lex(text);
  detail::FormulaParser parser(lex, sig, opts);
  Formula f = parser.parse();
  if (lex.peek().kind != detail::Tok::end)
    throw ParseError("trailing input after formula", lex.peek().pos);
  return f;
}

// Neutral sequent syntax: `z1:F1, z2:F2 |- z3:G1`. Either side may be empty.
inline ClassicalSequent parse_classical_sequent(const std::string& text,
                                                const Signature& sig,
                                                ParseOptions opts = {}) {
  detail::Lexer lex(text);
  std::size_t left_pos = lex.peek().pos;
  auto left = detail::parse_entry_list(lex, sig, opts);
  lex.expect(detail::Tok::turnstile, "'|-'");
  std::size_t right_pos = lex.peek().pos;
  auto right = detail::parse_entry_list(lex, sig, opts);
  if (lex.peek().kind != detail::Tok::end)
    throw ParseError("trailing input after sequent", lex.peek().pos);
  try {
    return ClassicalSequent::neutral(Context(std::move(left)),
                                     Context(std::move(right)));
  } catch (const SequentError& e) {
    throw ParseError(e.what(), left.empty() ? right_pos : left_pos);
  }
}

// Same syntax with exactly one entry on the right.
inline IntuitSequent parse_intuit_sequent(const std::string& text,
                                          const Signature& sig,
                                          ParseOptions opts = {}) {
  detail::Lexer lex(text);
  std::size_t left_pos = lex.peek().pos;
  auto left = detail::parse_entry_list(lex, sig, opts);
  lex.expect(detail::Tok::turnstile, "'|-'");
  std::size_t right_pos = lex.peek().pos;
  auto right = detail::parse_entry_list(lex, sig, opts);
  if (lex.peek().kind != detail::Tok::end)
    throw ParseError("trailing input after sequent", lex.peek().pos);
  if (right.size() != 1)
    throw ParseError("intuitionistic sequents have exactly one right entry",
                     right_pos);
  try {
    return IntuitSequent::neutral(Context(std::move(left)),
                                  std::move(right.front()));
  } catch (const SequentError& e) {
    throw ParseError(e.what(), left_pos);
  }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

enum class PrintStyle { ascii, unicode };

namespace detail {

// Precedence levels: 1 lolli, 2 binary tier, 3 atoms/units/exponentials.
inline int prec_of(const Formula& f) {
  switch (f.kind()) {
    case FKind::lolli: return 1;
    case FKind::tensor:
    case FKind::plus:
    case FKind::with:
    case FKind::par: return 2;
    default: return 3;
  }
}

inline void print_rec(std::string& out, const Formula& f, PrintStyle style,
                      int min_prec) {
  const bool uni = style == PrintStyle::unicode;
  int prec = prec_of(f);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case FKind::pos_atom: out += f.atom_name(); break;
    case FKind::neg_atom: out += '\''; out += f.atom_name(); break;
    case FKind::one: out += '1'; break;
    case FKind::zero: out += '0'; break;
    case FKind::top: out += uni ? "⊤" : "top"; break;
    case FKind::bot: out += uni ? "⊥" : "bot"; break;
    case FKind::tensor:
    case FKind::plus:
    case FKind::with:
    case FKind::par: {
      const char* op = nullptr;
      switch (f.kind()) {
        case FKind::tensor: op = uni ? " ⊗ " : " * "; break;
        case FKind::plus: op = uni ? " ⊕ " : " + "; break;
        case FKind::with: op = " & "; break;
        default: op = uni ? " ⅋ " : " | "; break;
      }
      // The binary tier is left-associative; the right operand needs parens
      // when it is itself a tier-2 formula.
      print_rec(out, f.lhs(), style, 2);
      out += op;
      print_rec(out, f.rhs(), style, 3);
      break;
    }
    case FKind::lolli:
      print_rec(out, f.lhs(), style, 2);
      out += uni ? " ⊸ " : " -o ";
      print_rec(out, f.rhs(), style, 1);  // right-associative
      break;
    case FKind::bang:
    case FKind::qmark: {
      const char* op = f.kind() == FKind::bang ? "!" : "?";
      if (uni) {
        out += op;
        out += '_';
        out += f.zone();
        out += ' ';
      } else {
        out += op;
        out += '[';
        out += f.zone();
        out += "] ";
      }
      print_rec(out, f.body(), style, 3);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string print_formula(const Formula& f,
                                 PrintStyle style = PrintStyle::ascii) {
  std::string out;
  detail::print_rec(out, f, style, 0);
  return out;
}

inline std::string print_context(const Context& ctx,
                                 PrintStyle style = PrintStyle::ascii) {
  std::string out;
  bool first = true;
  for (const auto& e : ctx) {
    if (!first) out += ", ";
    first = false;
    out += e.zone + ":" + print_formula(e.formula, style);
  }
  return out;
}

namespace detail {
inline std::string print_bag(const FormulaBag& bag, PrintStyle style) {
  if (bag.empty()) return ".";
  std::string out;
  bool first = true;
  for (const auto& f : bag) {
    if (!first) out += ", ";
    first = false;
    out += print_formula(f, style);
  }
  return out;
}
}  // namespace detail

inline std::string print_sequent(const ClassicalSequent& s,
                                 PrintStyle style = PrintStyle::ascii) {
  std::string lp = print_context(s.left_passive(), style);
  std::string rp = print_context(s.right_passive(), style);
  switch (s.shape()) {
    case ClassicalSequent::Shape::right_focus:
      return lp + " |- [" + print_formula(s.focus(), style) + "] ; " +
             (rp.empty() ? "." : rp);
    case ClassicalSequent::Shape::left_focus:
      return (lp.empty() ? "." : lp) + " ; [" +
             print_formula(s.focus(), style) + "] |- " + rp;
    case ClassicalSequent::Shape::active:
      if (s.is_neutral()) {
        std::string out = lp;
        out += lp.empty() ? "|- " : " |- ";
        out += rp;
        if (rp.empty() && !out.empty() && out.back() == ' ') out.pop_back();
        return out;
      }
      return (lp.empty() ? "." : lp) + " ; " +
             detail::print_bag(s.left_active(), style) + " |- " +
             detail::print_bag(s.right_active(), style) + " ; " +
             (rp.empty() ? "." : rp);
  }
  return "";
}

inline std::string print_sequent(const IntuitSequent& s,
                                 PrintStyle style = PrintStyle::ascii) {
  std::string lp = print_context(s.left_passive(), style);
  auto right = [&]() {
    const auto& e = s.right_passive();
    return e.zone + ":" + print_formula(e.formula, style);
  };
  switch (s.shape()) {
    case IntuitSequent::Shape::right_focus:
      return lp + " |- [" + print_formula(s.focus(), style) + "]";
    case IntuitSequent::Shape::left_focus:
      return (lp.empty() ? "." : lp) + " ; [" +
             print_formula(s.focus(), style) + "] |- " + right();
    case IntuitSequent::Shape::active_r:
      return (lp.empty() ? "." : lp) + " ; " +
             detail::print_bag(s.left_active(), style) + " |- " +
             print_formula(s.right_active(), style) + " ; .";
    case IntuitSequent::Shape::active_p:
      if (s.is_neutral()) {
        std::string out = lp;
        out += lp.empty() ? "|- " : " |- ";
        return out + right();
      }
      return (lp.empty() ? "." : lp) + " ; " +
             detail::print_bag(s.left_active(), style) + " |- . ; " + right();
  }
  return "";
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::json formula_to_json(const Formula& f) {
  nlohmann::json j{{"kind", fkind_name(f.kind())}};
  switch (f.kind()) {
    case FKind::pos_atom:
    case FKind::neg_atom:
      j["name"] = f.atom_name();
      break;
    case FKind::bang:
    case FKind::qmark:
      j["zone"] = f.zone();
      j["body"] = formula_to_json(f.body());
      break;
    case FKind::tensor:
    case FKind::plus:
    case FKind::with:
    case FKind::par:
    case FKind::lolli:
      j["lhs"] = formula_to_json(f.lhs());
      j["rhs"] = formula_to_json(f.rhs());
      break;
    default:
      break;
  }
  return j;
}

inline Formula formula_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  auto bin = [&](auto make) {
    return make(formula_from_json(j.at("lhs")), formula_from_json(j.at("rhs")));
  };
  if (kind == "pos_atom") return Formula::pos_atom(j.at("name"));
  if (kind == "neg_atom") return Formula::neg_atom(j.at("name"));
  if (kind == "one") return Formula::one();
  if (kind == "zero") return Formula::zero();
  if (kind == "top") return Formula::top();
  if (kind == "bot") return Formula::bot();
  if (kind == "tensor") return bin(Formula::tensor);
  if (kind == "plus") return bin(Formula::plus);
  if (kind == "with") return bin(Formula::with);
  if (kind == "par") return bin(Formula::par);
  if (kind == "lolli") return bin(Formula::lolli);
  if (kind == "bang")
    return Formula::bang(j.at("zone"), formula_from_json(j.at("body")));
  if (kind == "qmark")
    return Formula::qmark(j.at("zone"), formula_from_json(j.at("body")));
  throw Error("unknown formula kind '" + kind + "' in JSON");
}

inline nlohmann::json context_to_json(const Context& ctx) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : ctx)
    arr.push_back({{"zone", e.zone}, {"formula", formula_to_json(e.formula)}});
  return arr;
}

inline Context context_from_json(const nlohmann::json& arr) {
  std::vector<ZonedFormula> entries;
  for (const auto& e : arr)
    entries.push_back(
        {e.at("zone").get<std::string>(), formula_from_json(e.at("formula"))});
  return Context(std::move(entries));
}

inline nlohmann::json bag_to_json(const FormulaBag& bag) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : bag) arr.push_back(formula_to_json(f));
  return arr;
}

inline FormulaBag bag_from_json(const nlohmann::json& arr) {
  std::vector<Formula> fs;
  for (const auto& f : arr) fs.push_back(formula_from_json(f));
  return FormulaBag(std::move(fs));
}

inline nlohmann::json sequent_to_json(const ClassicalSequent& s) {
  nlohmann::json j{{"calculus", "classical"},
                   {"left_passive", context_to_json(s.left_passive())},
                   {"right_passive", context_to_json(s.right_passive())}};
  switch (s.shape()) {
    case ClassicalSequent::Shape::right_focus:
      j["shape"] = "right_focus";
      j["focus"] = formula_to_json(s.focus());
      break;
    case ClassicalSequent::Shape::left_focus:
      j["shape"] = "left_focus";
      j["focus"] = formula_to_json(s.focus());
      break;
    case ClassicalSequent::Shape::active:
      j["shape"] = "active";
      j["left_active"] = bag_to_json(s.left_active());
      j["right_active"] = bag_to_json(s.right_active());
      break;
  }
  return j;
}

inline nlohmann::json sequent_to_json(const IntuitSequent& s) {
  nlohmann::json j{{"calculus", "intuitionistic"},
                   {"left_passive", context_to_json(s.left_passive())}};
  auto right = [&] {
    const auto& e = s.right_passive();
    return nlohmann::json{{"zone", e.zone},
                          {"formula", formula_to_json(e.formula)}};
  };
  switch (s.shape()) {
    case IntuitSequent::Shape::right_focus:
      j["shape"] = "right_focus";
      j["focus"] = formula_to_json(s.focus());
      break;
    case IntuitSequent::Shape::left_focus:
      j["shape"] = "left_focus";
      j["focus"] = formula_to_json(s.focus());
      j["right_passive"] = right();
      break;
    case IntuitSequent::Shape::active_r:
      j["shape"] = "active_r";
      j["left_active"] = bag_to_json(s.left_active());
      j["right_active"] = formula_to_json(s.right_active());
      break;
    case IntuitSequent::Shape::active_p:
      j["shape"] = "active_p";
      j["left_active"] = bag_to_json(s.left_active());
      j["right_passive"] = right();
      break;
  }
  return j;
}

inline ClassicalSequent classical_sequent_from_json(const nlohmann::json& j) {
  Context lp = context_from_json(j.at("left_passive"));
  Context rp = context_from_json(j.at("right_passive"));
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "right_focus")
    return ClassicalSequent::right_focus(std::move(lp),
                                         formula_from_json(j.at("focus")),
                                         std::move(rp));
  if (shape == "left_focus")
    return ClassicalSequent::left_focus(std::move(lp),
                                        formula_from_json(j.at("focus")),
                                        std::move(rp));
  if (shape == "active")
    return ClassicalSequent::active(std::move(lp),
                                    bag_from_json(j.at("left_active")),
                                    bag_from_json(j.at("right_active")),
                                    std::move(rp));
  throw Error("unknown classical sequent shape '" + shape + "'");
}

inline IntuitSequent intuit_sequent_from_json(const nlohmann::json& j) {
  Context lp = context_from_json(j.at("left_passive"));
  const std::string shape = j.at("shape").get<std::string>();
  auto right = [&] {
    const auto& e = j.at("right_passive");
    return ZonedFormula{e.at("zone").get<std::string>(),
                        formula_from_json(e.at("formula"))};
  };
  if (shape == "right_focus")
    return IntuitSequent::right_focus(std::move(lp),
                                      formula_from_json(j.at("focus")));
  if (shape == "left_focus")
    return IntuitSequent::left_focus(std::move(lp),
                                     formula_from_json(j.at("focus")), right());
  if (shape == "active_r")
    return IntuitSequent::active_r(std::move(lp),
                                   bag_from_json(j.at("left_active")),
                                   formula_from_json(j.at("right_active")));
  if (shape == "active_p")
    return IntuitSequent::active_p(std::move(lp),
                                   bag_from_json(j.at("left_active")), right());
  throw Error("unknown intuitionistic sequent shape '" + shape + "'");
}

}  // namespace sxl
