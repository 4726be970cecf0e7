#pragma once

// Line-oriented text formats for TBoxes, ABoxes, policies and queries, plus
// the FO output language of the rewriters.
//
//   tbox:    ProjA [= Supplier      ex worksOn- [= Employee
//            A [= -B                role worksOn [= involvedIn
//   abox:    worksOn(a,b)
//   policy:  denial :- ProjA(X), ProjB(X)
//   query:   q :- C(X), P(X,Y)
//   fo:      EXISTS X . (A(X) AND NOT B(X))
//
// Uppercase-initial terms are variables, lowercase-initial terms constants.
// '#' starts a comment that runs to the end of the line.

#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cqe/fo.hpp"
#include "cqe/model.hpp"

namespace cqe {

class ParseError : public Error {
 public:
  ParseError(std::string file_kind, std::size_t line, std::size_t column, std::string message,
             std::string token)
      : Error(file_kind + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message +
              (token.empty() ? std::string() : " near '" + token + "'")),
        file_kind_(std::move(file_kind)),
        line_(line),
        column_(column),
        message_(std::move(message)),
        token_(std::move(token)) {}

  const std::string& file_kind() const { return file_kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::string& token() const { return token_; }

 private:
  std::string file_kind_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
  std::string token_;
};

/// True for identifiers that contain the reserved fresh-variable marker "_v<digit>".
inline bool is_reserved_identifier(std::string_view id) {
  for (std::size_t i = 0; i + 2 < id.size(); ++i)
    if (id[i] == '_' && id[i + 1] == 'v' && std::isdigit(static_cast<unsigned char>(id[i + 2]))) return true;
  return false;
}

namespace detail {

enum class Tok { Ident, LParen, RParen, Comma, Subsumed, Minus, If, Dot, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file_kind) : text_(text), kind_(std::move(file_kind)) {}

  /// Non-empty lines of tokens, each terminated by an End token.
  std::vector<std::vector<Token>> lines() {
    std::vector<std::vector<Token>> out;
    std::vector<Token> cur;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        finish_line(out, cur);
        advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      cur.push_back(next());
    }
    finish_line(out, cur);
    return out;
  }

  std::vector<Token> stream() {
    std::vector<Token> out;
    for (auto& l : lines())
      for (auto& t : l)
        if (t.kind != Tok::End) out.push_back(std::move(t));
    out.push_back({Tok::End, "", line_, col_});
    return out;
  }

 private:
  void finish_line(std::vector<std::vector<Token>>& out, std::vector<Token>& cur) {
    if (!cur.empty()) {
      cur.push_back({Tok::End, "", line_, col_});
      out.push_back(std::move(cur));
      cur.clear();
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token next() {
    const std::size_t line = line_, col = col_;
    const char c = text_[pos_];
    auto single = [&](Tok k) {
      advance();
      return Token{k, std::string(1, c), line, col};
    };
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        id.push_back(text_[pos_]);
        advance();
      }
      return {Tok::Ident, std::move(id), line, col};
    }
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case '-': return single(Tok::Minus);
      case '.': return single(Tok::Dot);
      case '=': return single(Tok::Eq);
      case '[':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          advance();
          advance();
          return {Tok::Subsumed, "[=", line, col};
        }
        break;
      case ':':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
          advance();
          advance();
          return {Tok::If, ":-", line, col};
        }
        break;
      default:
        break;
    }
    throw ParseError(kind_, line, col, "unexpected character", std::string(1, c));
  }

  std::string_view text_;
  std::string kind_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

/// Cursor over one token sequence with error helpers.
class Cursor {
 public:
  Cursor(const std::vector<Token>& toks, std::string file_kind, bool allow_reserved = false)
      : toks_(toks), kind_(std::move(file_kind)), allow_reserved_(allow_reserved) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_keyword(std::string_view kw) const { return at(Tok::Ident) && peek().text == kw; }
  const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw ParseError(kind_, t.line, t.column, msg, t.text);
  }

  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }

  std::string ident(const char* what) {
    const Token& t = expect(Tok::Ident, what);
    if (!allow_reserved_ && is_reserved_identifier(t.text))
      fail_at(t, "identifiers containing '_v' followed by a digit are reserved");
    return t.text;
  }

  void expect_end() {
    if (!at(Tok::End)) fail("unexpected trailing input");
  }

  Term term() {
    std::string name = ident("term");
    return std::isupper(static_cast<unsigned char>(name[0])) ? Term::variable(std::move(name))
                                                             : Term::constant(std::move(name));
  }

  Atom atom() {
    std::string pred = ident("predicate name");
    expect(Tok::LParen, "'('");
    std::vector<Term> args{term()};
    if (at(Tok::Comma)) {
      take();
      args.push_back(term());
    }
    if (at(Tok::Comma)) fail("atoms take one or two arguments");
    expect(Tok::RParen, "')'");
    return Atom(std::move(pred), std::move(args));
  }

  const std::string& file_kind() const { return kind_; }

 private:
  const std::vector<Token>& toks_;
  std::string kind_;
  std::size_t pos_ = 0;
  bool allow_reserved_;
};

inline void declare_checked(Signature& sig, const Atom& a, const Cursor& cur, const Token& at) {
  try {
    sig.declare(a.predicate, a.arity());
  } catch (const InvalidInput& e) {
    cur.fail_at(at, e.what());
  }
}

inline BasicConcept parse_basic(Cursor& cur) {
  if (cur.at_keyword("ex") && cur.peek(1).kind == Tok::Ident) {
    cur.take();
    std::string role = cur.ident("role name");
    if (cur.at(Tok::Minus)) {
      cur.take();
      return BasicConcept::exists_inverse(std::move(role));
    }
    return BasicConcept::exists(std::move(role));
  }
  return BasicConcept::atomic(cur.ident("concept name"));
}

inline RoleExpr parse_role(Cursor& cur) {
  std::string name = cur.ident("role name");
  if (cur.at(Tok::Minus)) {
    cur.take();
    return RoleExpr::inverse_of(std::move(name));
  }
  return RoleExpr::direct(std::move(name));
}

inline std::vector<Atom> parse_rule_body(Cursor& cur, std::string_view head, Signature& sig) {
  if (!cur.at_keyword(head)) cur.fail("expected '" + std::string(head) + "'");
  cur.take();
  cur.expect(Tok::If, "':-'");
  if (cur.at(Tok::End)) cur.fail("empty body");
  std::vector<Atom> body;
  for (;;) {
    const Token& start = cur.peek();
    body.push_back(cur.atom());
    declare_checked(sig, body.back(), cur, start);
    if (!cur.at(Tok::Comma)) break;
    cur.take();
  }
  cur.expect_end();
  return body;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parsing

inline TBox parse_tbox(std::string_view text) {
  detail::Lexer lex(text, "tbox");
  TBox tbox;
  for (const auto& line : lex.lines()) {
    detail::Cursor cur(line, "tbox");
    const detail::Token& start = cur.peek();
    try {
      if (cur.at_keyword("role") && cur.peek(1).kind == detail::Tok::Ident) {
        cur.take();
        RoleInclusion ri;
        ri.lhs = detail::parse_role(cur);
        cur.expect(detail::Tok::Subsumed, "'[='");
        if (cur.at(detail::Tok::Minus)) {
          cur.take();
          ri.negated = true;
        }
        ri.rhs = detail::parse_role(cur);
        cur.expect_end();
        tbox.add(ri);
      } else {
        ConceptInclusion ci;
        ci.lhs = detail::parse_basic(cur);
        cur.expect(detail::Tok::Subsumed, "'[='");
        if (cur.at(detail::Tok::Minus)) {
          cur.take();
          ci.negated = true;
        }
        ci.rhs = detail::parse_basic(cur);
        cur.expect_end();
        tbox.add(ci);
      }
    } catch (const InvalidInput& e) {
      cur.fail_at(start, e.what());
    }
  }
  return tbox;
}

inline ABox parse_abox(std::string_view text) {
  detail::Lexer lex(text, "abox");
  ABox abox;
  Signature sig;
  for (const auto& line : lex.lines()) {
    detail::Cursor cur(line, "abox");
    const detail::Token& start = cur.peek();
    Atom a = cur.atom();
    cur.expect_end();
    for (const auto& t : a.args)
      if (t.is_variable()) cur.fail_at(start, "ABox assertions must be ground; '" + t.name + "' is a variable");
    detail::declare_checked(sig, a, cur, start);
    abox.insert(a);
  }
  return abox;
}

inline Policy parse_policy(std::string_view text) {
  detail::Lexer lex(text, "policy");
  std::vector<Denial> denials;
  Signature sig;
  for (const auto& line : lex.lines()) {
    detail::Cursor cur(line, "policy");
    denials.emplace_back(detail::parse_rule_body(cur, "denial", sig));
  }
  return Policy(std::move(denials));
}

/// All "q :- ..." lines of a query file, in file order.
inline std::vector<ConjunctiveQuery> parse_queries(std::string_view text) {
  detail::Lexer lex(text, "query");
  std::vector<ConjunctiveQuery> out;
  for (const auto& line : lex.lines()) {
    detail::Cursor cur(line, "query");
    Signature sig;
    out.emplace_back(detail::parse_rule_body(cur, "q", sig));
  }
  return out;
}

/// Exactly one query.
inline ConjunctiveQuery parse_query(std::string_view text) {
  auto qs = parse_queries(text);
  if (qs.size() != 1)
    throw ParseError("query", 1, 1, "expected exactly one query, found " + std::to_string(qs.size()), "");
  return qs.front();
}

namespace detail {

// FO grammar:
//   disj  = conj { "OR" conj }
//   conj  = unary { "AND" unary }
//   unary = "NOT" unary | "EXISTS" Var "." unary | "(" disj ")"
//         | "TRUE" | "FALSE" | term "=" term | atom
class FOParser {
 public:
  explicit FOParser(Cursor& cur) : cur_(cur) {}

  FOQuery disjunction() {
    std::vector<FOQuery> parts{conjunction()};
    while (cur_.at_keyword("OR")) {
      cur_.take();
      parts.push_back(conjunction());
    }
    return FOQuery::disj(std::move(parts));
  }

 private:
  FOQuery conjunction() {
    std::vector<FOQuery> parts{unary()};
    while (cur_.at_keyword("AND")) {
      cur_.take();
      parts.push_back(unary());
    }
    return FOQuery::conj(std::move(parts));
  }

  FOQuery unary() {
    if (cur_.at(Tok::LParen)) {
      cur_.take();
      FOQuery inner = disjunction();
      cur_.expect(Tok::RParen, "')'");
      return inner;
    }
    if (cur_.at_keyword("NOT")) {
      cur_.take();
      return FOQuery::negate(unary());
    }
    if (cur_.at_keyword("EXISTS")) {
      cur_.take();
      Term v = cur_.term();
      if (!v.is_variable()) cur_.fail("quantified name must be a variable");
      cur_.expect(Tok::Dot, "'.'");
      return FOQuery::exists(v.name, unary());
    }
    if (cur_.at_keyword("TRUE")) {
      cur_.take();
      return FOQuery::truth();
    }
    if (cur_.at_keyword("FALSE")) {
      cur_.take();
      return FOQuery::falsity();
    }
    if (cur_.peek(1).kind == Tok::Eq) {
      Term lhs = cur_.term();
      cur_.take();
      Term rhs = cur_.term();
      return FOQuery::equals(std::move(lhs), std::move(rhs));
    }
    return FOQuery::atom(cur_.atom());
  }

  Cursor& cur_;
};

}  // namespace detail

/// Parses the FO output language. Reserved fresh-variable names are accepted.
inline FOQuery parse_fo(std::string_view text) {
  detail::Lexer lex(text, "fo");
  auto toks = lex.stream();
  detail::Cursor cur(toks, "fo", /*allow_reserved=*/true);
  detail::FOParser p(cur);
  FOQuery q = p.disjunction();
  cur.expect_end();
  return q;
}

// ---------------------------------------------------------------------------
// Serialization

inline std::string to_string(const Term& t) { return t.name; }

inline std::string to_string(const Atom& a) {
  std::string s = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += a.args[i].name;
  }
  return s + ")";
}

inline std::string to_string(const BasicConcept& b) {
  switch (b.kind) {
    case BasicConcept::Kind::Atomic: return b.name;
    case BasicConcept::Kind::Exists: return "ex " + b.name;
    case BasicConcept::Kind::ExistsInverse: return "ex " + b.name + "-";
  }
  return b.name;
}

inline std::string to_string(const RoleExpr& r) { return r.inverse ? r.name + "-" : r.name; }

inline std::string to_string(const TBoxAxiom& ax) {
  if (const auto* ci = std::get_if<ConceptInclusion>(&ax))
    return to_string(ci->lhs) + " [= " + (ci->negated ? "-" : "") + to_string(ci->rhs);
  const auto& ri = std::get<RoleInclusion>(ax);
  return "role " + to_string(ri.lhs) + " [= " + (ri.negated ? "-" : "") + to_string(ri.rhs);
}

inline std::string join_atoms(const std::vector<Atom>& atoms) {
  std::string s;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += ", ";
    s += to_string(atoms[i]);
  }
  return s;
}

inline std::string serialize(const TBox& tbox) {
  std::string s;
  for (const auto& ax : tbox.axioms) s += to_string(ax) + "\n";
  return s;
}

inline std::string serialize(const ABox& abox) {
  std::string s;
  for (const auto& a : abox) s += to_string(a) + "\n";
  return s;
}

inline std::string serialize(const Policy& policy) {
  std::string s;
  for (const auto& d : policy.denials) s += "denial :- " + join_atoms(d.body) + "\n";
  return s;
}

inline std::string serialize(const ConjunctiveQuery& q) { return "q :- " + join_atoms(q.atoms) + "\n"; }

inline std::string serialize(const FOQuery& q) {
  using K = FOQuery::Kind;
  auto nested = [](const FOQuery& c) {
    bool compound = (c.kind() == K::And || c.kind() == K::Or) && !c.children().empty();
    return compound ? "(" + serialize(c) + ")" : serialize(c);
  };
  switch (q.kind()) {
    case K::Atom: return to_string(q.atom_value());
    case K::Equals: return q.atom_value().args[0].name + " = " + q.atom_value().args[1].name;
    case K::Not: return "NOT " + nested(q.child());
    case K::Exists: return "EXISTS " + q.variable() + " . " + nested(q.child());
    case K::And:
    case K::Or: {
      if (q.children().empty()) return q.kind() == K::And ? "TRUE" : "FALSE";
      const char* op = q.kind() == K::And ? " AND " : " OR ";
      std::string s;
      for (std::size_t i = 0; i < q.children().size(); ++i) {
        if (i) s += op;
        s += nested(q.children()[i]);
      }
      return s;
    }
  }
  return {};
}

}  // namespace cqe
