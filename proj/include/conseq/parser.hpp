#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conseq/ontology.hpp"

namespace conseq {

// ---------------------------------------------------------------------------
// Line-oriented ontology text format, UTF-8, '#' comments.
//
//   axiom := conj "SubClassOf" disj
//          | IDENT "SubClassOf" "AtLeast" INT IDENT IDENT
//          | "Exists" IDENT IDENT "SubClassOf" IDENT
//          | IDENT "SubClassOf" "AtMost" INT IDENT IDENT
//          | IDENT "SubRoleOf" IDENT
//          | IDENT "SubRoleOf" "Inv" IDENT
//   conj  := "Top" | IDENT ("And" IDENT)*
//   disj  := "Bottom" | IDENT ("Or" IDENT)*
//
// Lines containing "->" use the raw DL-clause syntax instead, e.g.
//   B(x), S(x,z1) -> z1 = z2, f1(x) != f2(x)
// with an empty side meaning the empty conjunction/disjunction. The raw path
// exists for clause forms no axiom produces.
// ---------------------------------------------------------------------------

struct ParsedInput {
  std::vector<NormalizedAxiom> axioms;
  std::vector<DLClause> raw_clauses;
};

namespace parse_detail {

struct Token {
  enum class Kind : std::uint8_t {
    Ident, Keyword, Int, LParen, RParen, Comma, Arrow, Eq, Neq, End,
  };
  Kind kind = Kind::End;
  std::string text;
  std::uint32_t value = 0;  // for Int
  int line = 0;
  int col = 0;
};

class Lexer {
 public:
  Lexer(std::string_view line, int line_no) : s_(line), line_no_(line_no) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(line_no_, tok_.kind == Token::Kind::End ? last_col_ : tok_.col,
                     "expected " + expected +
                         (tok_.kind == Token::Kind::End ? " before end of line"
                                                        : ", found '" + tok_.text + "'"));
  }

  Token expect(Token::Kind kind, const std::string& what) {
    if (tok_.kind != kind) fail(what);
    return next();
  }

  Token expect_keyword(std::string_view kw) {
    if (tok_.kind != Token::Kind::Keyword || tok_.text != kw) fail("'" + std::string(kw) + "'");
    return next();
  }

  bool at_keyword(std::string_view kw) const {
    return tok_.kind == Token::Kind::Keyword && tok_.text == kw;
  }

  int line_no() const { return line_no_; }

 private:
  void advance() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    last_col_ = static_cast<int>(pos_) + 1;
    Token t;
    t.line = line_no_;
    t.col = static_cast<int>(pos_) + 1;
    if (pos_ >= s_.size() || s_[pos_] == '#') {
      t.kind = Token::Kind::End;
      tok_ = t;
      return;
    }
    char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '_')) {
        ++pos_;
      }
      t.text = std::string(s_.substr(start, pos_ - start));
      t.kind = SymbolTable::is_reserved(t.text) ? Token::Kind::Keyword : Token::Kind::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      t.text = std::string(s_.substr(start, pos_ - start));
      t.kind = Token::Kind::Int;
      t.value = static_cast<std::uint32_t>(std::stoul(t.text));
    } else if (c == '(') {
      ++pos_;
      t.kind = Token::Kind::LParen;
      t.text = "(";
    } else if (c == ')') {
      ++pos_;
      t.kind = Token::Kind::RParen;
      t.text = ")";
    } else if (c == ',') {
      ++pos_;
      t.kind = Token::Kind::Comma;
      t.text = ",";
    } else if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
      pos_ += 2;
      t.kind = Token::Kind::Arrow;
      t.text = "->";
    } else if (c == '=') {
      ++pos_;
      t.kind = Token::Kind::Eq;
      t.text = "=";
    } else if (c == '!' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') {
      pos_ += 2;
      t.kind = Token::Kind::Neq;
      t.text = "!=";
    } else {
      throw ParseError(line_no_, t.col, std::string("unexpected character '") + c + "'");
    }
    tok_ = t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_no_;
  int last_col_ = 1;
  Token tok_;
};

// Interning wrappers that turn sort conflicts into positioned diagnostics
// (using a unary name as a role or vice versa is an input error).
inline PredicateId intern_concept(SymbolTable& st, const Token& t) {
  try {
    return st.intern_unary(t.text);
  } catch (const InvariantViolation&) {
    throw ParseError(t.line, t.col, "'" + t.text + "' is not usable as a concept here");
  }
}
inline PredicateId intern_role(SymbolTable& st, const Token& t) {
  try {
    return st.intern_binary(t.text);
  } catch (const InvariantViolation&) {
    throw ParseError(t.line, t.col, "'" + t.text + "' is not usable as a role here");
  }
}
inline FunctionId intern_fn(SymbolTable& st, const Token& t) {
  try {
    return st.intern_function(t.text);
  } catch (const InvariantViolation&) {
    throw ParseError(t.line, t.col, "'" + t.text + "' is not usable as a function symbol here");
  }
}

inline NormalizedAxiom parse_axiom(Lexer& lx, SymbolTable& st) {
  if (lx.at_keyword("Exists")) {
    lx.next();
    Token role = lx.expect(Token::Kind::Ident, "a role name");
    Token b1 = lx.expect(Token::Kind::Ident, "a concept name");
    lx.expect_keyword("SubClassOf");
    Token b2 = lx.expect(Token::Kind::Ident, "a concept name");
    return NormalizedAxiom::exists_subclass(intern_role(st, role), intern_concept(st, b1),
                                            intern_concept(st, b2));
  }

  // conj "SubClassOf" ... | IDENT "SubRoleOf" ...
  bool top_lhs = false;
  std::vector<Token> lhs;
  if (lx.at_keyword("Top")) {
    lx.next();
    top_lhs = true;
  } else {
    lhs.push_back(lx.expect(Token::Kind::Ident, "a concept or role name"));
    if (lx.at_keyword("SubRoleOf")) {
      lx.next();
      bool inverse = lx.at_keyword("Inv");
      if (inverse) lx.next();
      Token r2 = lx.expect(Token::Kind::Ident, "a role name");
      return NormalizedAxiom::sub_role(intern_role(st, lhs[0]), intern_role(st, r2), inverse);
    }
    while (lx.at_keyword("And")) {
      lx.next();
      lhs.push_back(lx.expect(Token::Kind::Ident, "a concept name"));
    }
  }
  lx.expect_keyword("SubClassOf");

  if (lx.at_keyword("AtLeast") || lx.at_keyword("AtMost")) {
    bool least = lx.at_keyword("AtLeast");
    Token kw = lx.next();
    if (top_lhs || lhs.size() != 1) {
      throw ParseError(kw.line, kw.col, "number restrictions require a single named concept on the left");
    }
    Token n = lx.expect(Token::Kind::Int, "a cardinality");
    if (n.value < 1) {
      throw ParseError(n.line, n.col, "cardinality must be at least 1");
    }
    Token role = lx.expect(Token::Kind::Ident, "a role name");
    Token b2 = lx.expect(Token::Kind::Ident, "a concept name");
    PredicateId b1p = intern_concept(st, lhs[0]);
    PredicateId rp = intern_role(st, role);
    PredicateId b2p = intern_concept(st, b2);
    return least ? NormalizedAxiom::at_least(b1p, n.value, rp, b2p)
                 : NormalizedAxiom::at_most(b1p, n.value, rp, b2p);
  }

  std::vector<PredicateId> conj;
  for (const Token& t : lhs) conj.push_back(intern_concept(st, t));
  std::vector<PredicateId> disj;
  if (lx.at_keyword("Bottom")) {
    lx.next();
  } else {
    disj.push_back(intern_concept(st, lx.expect(Token::Kind::Ident, "a concept name")));
    while (lx.at_keyword("Or")) {
      lx.next();
      disj.push_back(intern_concept(st, lx.expect(Token::Kind::Ident, "a concept name")));
    }
  }
  return NormalizedAxiom::subclass(std::move(conj), std::move(disj));
}

// Raw DL-clause terms: x | zN | IDENT(x).
struct RawTerm {
  DLFTerm term;
  Token tok;
};

inline std::optional<std::uint32_t> z_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'z') return std::nullopt;
  std::uint32_t v = 0;
  for (char c : name.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + static_cast<std::uint32_t>(c - '0');
  }
  if (v == 0) return std::nullopt;
  return v - 1;  // external z1 is index 0
}

inline RawTerm parse_raw_term(Lexer& lx, SymbolTable& st) {
  Token t = lx.expect(Token::Kind::Ident, "a term (x, zN or f(x))");
  if (t.text == "x") return {DLFTerm::x(), t};
  if (auto z = z_index(t.text)) return {DLFTerm::z(*z), t};
  lx.expect(Token::Kind::LParen, "'(' after function symbol");
  Token inner = lx.expect(Token::Kind::Ident, "'x'");
  if (inner.text != "x") throw ParseError(inner.line, inner.col, "function terms must be applied to x");
  lx.expect(Token::Kind::RParen, "')'");
  return {DLFTerm::f(intern_fn(st, t)), t};
}

inline DLAtom make_raw_atom(const Token& pred, const std::vector<RawTerm>& args, SymbolTable& st) {
  auto bad = [&](const std::string& msg) -> DLAtom {
    throw ParseError(pred.line, pred.col, msg);
  };
  if (args.size() == 1) {
    PredicateId b = intern_concept(st, pred);
    const DLFTerm& a = args[0].term;
    switch (a.kind) {
      case DLFKind::X: return DLAtom::b_x(b);
      case DLFKind::Z: return DLAtom::b_z(b, a.z);
      case DLFKind::Fn: return DLAtom::b_f(b, a.fn);
    }
  }
  if (args.size() == 2) {
    PredicateId s = intern_role(st, pred);
    const DLFTerm& a = args[0].term;
    const DLFTerm& b = args[1].term;
    if (a.kind == DLFKind::X && b.kind == DLFKind::Z) return DLAtom::s_xz(s, b.z);
    if (a.kind == DLFKind::Z && b.kind == DLFKind::X) return DLAtom::s_zx(s, a.z);
    if (a.kind == DLFKind::X && b.kind == DLFKind::Fn) return DLAtom::s_xf(s, b.fn);
    if (a.kind == DLFKind::Fn && b.kind == DLFKind::X) return DLAtom::s_fx(s, a.fn);
    return bad("role atom must be of shape S(x,z), S(z,x), S(x,f(x)) or S(f(x),x)");
  }
  return bad("atoms are unary or binary");
}

inline DLClause parse_raw_clause(Lexer& lx, SymbolTable& st) {
  std::vector<DLAtom> body;
  std::vector<DLLiteral> head;

  auto parse_atom_or_lit = [&](bool in_head) {
    // Lookahead: IDENT '(' starts an atom; otherwise it is an equality side.
    Token first = lx.peek();
    RawTerm lhs{};
    bool is_atom = false;
    std::vector<RawTerm> args;
    Token pred = first;
    if (first.kind != Token::Kind::Ident) lx.fail("an atom or equality");
    // Parse one term; if it came out as a bare predicate application we
    // detect it by the paren and the argument count.
    if (first.text != "x" && !z_index(first.text)) {
      // IDENT '(': could be f(x) (term) or P(...) (atom); disambiguate by
      // what follows the first argument.
      Token name = lx.next();
      lx.expect(Token::Kind::LParen, "'('");
      RawTerm a0 = parse_raw_term(lx, st);
      if (lx.peek().kind == Token::Kind::Comma) {
        lx.next();
        RawTerm a1 = parse_raw_term(lx, st);
        lx.expect(Token::Kind::RParen, "')'");
        args = {a0, a1};
        pred = name;
        is_atom = true;
      } else {
        lx.expect(Token::Kind::RParen, "')'");
        if (a0.term.kind == DLFKind::X && lx.peek().kind != Token::Kind::Eq &&
            lx.peek().kind != Token::Kind::Neq) {
          // P(x): unary atom.
          args = {a0};
          pred = name;
          is_atom = true;
        } else if (a0.term.kind == DLFKind::X) {
          // f(x) followed by an equality sign.
          lhs = {DLFTerm::f(intern_fn(st, name)), name};
        } else {
          // P(z1) or P(f(x)): unary atom with a non-x argument.
          args = {a0};
          pred = name;
          is_atom = true;
        }
      }
    } else {
      lhs = parse_raw_term(lx, st);
    }

    if (is_atom) {
      DLAtom atom = make_raw_atom(pred, args, st);
      if (in_head) {
        head.push_back(DLLiteral::make_atom(atom));
      } else {
        body.push_back(atom);
      }
      return;
    }
    Token op = lx.peek();
    if (op.kind != Token::Kind::Eq && op.kind != Token::Kind::Neq) lx.fail("'=' or '!='");
    lx.next();
    RawTerm rhs = parse_raw_term(lx, st);
    if (!in_head) throw ParseError(op.line, op.col, "equalities may only occur in clause heads");
    if (lhs.term.kind == DLFKind::X || rhs.term.kind == DLFKind::X) {
      throw ParseError(op.line, op.col, "x may not occur in equalities");
    }
    head.push_back(op.kind == Token::Kind::Eq ? DLLiteral::make_eq(lhs.term, rhs.term)
                                              : DLLiteral::make_neq(lhs.term, rhs.term));
  };

  if (lx.peek().kind != Token::Kind::Arrow) {
    parse_atom_or_lit(false);
    while (lx.peek().kind == Token::Kind::Comma) {
      lx.next();
      parse_atom_or_lit(false);
    }
  }
  lx.expect(Token::Kind::Arrow, "'->'");
  if (lx.peek().kind != Token::Kind::End) {
    parse_atom_or_lit(true);
    while (lx.peek().kind == Token::Kind::Comma) {
      lx.next();
      parse_atom_or_lit(true);
    }
  }

  DLClause c(std::move(body), std::move(head));
  auto violations = validate_dl_clause(c);
  if (!violations.empty()) {
    throw ParseError(lx.line_no(), 1, "invalid DL-clause: " + violations.front());
  }
  return c;
}

}  // namespace parse_detail

/// Parses ontology text; one axiom or raw clause per non-comment line.
/// Undeclared identifiers are interned on first use.
inline ParsedInput parse_ontology(std::string_view text, SymbolTable& st) {
  ParsedInput out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    bool blank = true;
    for (char c : line) {
      if (c == '#') break;
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (blank) continue;

    bool raw = line.find("->") != std::string_view::npos;
    parse_detail::Lexer lx(line, line_no);
    if (raw) {
      out.raw_clauses.push_back(parse_detail::parse_raw_clause(lx, st));
    } else {
      out.axioms.push_back(parse_detail::parse_axiom(lx, st));
    }
    if (lx.peek().kind != parse_detail::Token::Kind::End) lx.fail("end of line");
  }
  return out;
}

/// Query surface form: "A SubClassOf B" or "A SubClassOf Bottom".
inline QueryClause parse_query(std::string_view text, SymbolTable& st) {
  parse_detail::Lexer lx(text, 1);
  parse_detail::Token a = lx.expect(parse_detail::Token::Kind::Ident, "a concept name");
  lx.expect_keyword("SubClassOf");
  std::vector<PredicateId> head;
  if (lx.at_keyword("Bottom")) {
    lx.next();
  } else {
    parse_detail::Token b = lx.expect(parse_detail::Token::Kind::Ident, "a concept name");
    head.push_back(parse_detail::intern_concept(st, b));
  }
  if (lx.peek().kind != parse_detail::Token::Kind::End) lx.fail("end of query");
  return QueryClause({parse_detail::intern_concept(st, a)}, std::move(head));
}

/// Convenience wrapper: parse then clausify.
inline Ontology load_ontology(std::string_view text, std::shared_ptr<SymbolTable> st) {
  ParsedInput in = parse_ontology(text, *st);
  return clausify(in.axioms, std::move(in.raw_clauses), std::move(st));
}

}  // namespace conseq
