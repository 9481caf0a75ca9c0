// Copyright 2026 The msol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#pragma once

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "msol/alphabet.hpp"
#include "msol/error.hpp"
#include "msol/formula.hpp"

namespace msol {

struct ParseOptions {
  // Accept identifiers starting with the reserved prefix. Only meant for
  // re-reading rendered output of expand().
  bool allow_reserved = false;
};

namespace detail {

enum class Tok {
  Ident, Number, LParen, RParen, Dot, Comma,
  Lt, Le, Gt, Ge, EqTok, Ne, Bang, Amp, Bar, Arrow, DArrow, Plus, Minus, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::End, "", line, col};
    auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (starts("<->")) {
      t.kind = Tok::DArrow;
      advance(3);
    } else if (starts("->")) {
      t.kind = Tok::Arrow;
      advance(2);
    } else if (starts("<=")) {
      t.kind = Tok::Le;
      advance(2);
    } else if (starts(">=")) {
      t.kind = Tok::Ge;
      advance(2);
    } else if (starts("!=")) {
      t.kind = Tok::Ne;
      advance(2);
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '.': t.kind = Tok::Dot; break;
        case ',': t.kind = Tok::Comma; break;
        case '<': t.kind = Tok::Lt; break;
        case '>': t.kind = Tok::Gt; break;
        case '=': t.kind = Tok::EqTok; break;
        case '!': t.kind = Tok::Bang; break;
        case '&': t.kind = Tok::Amp; break;
        case '|': t.kind = Tok::Bar; break;
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        default:
          throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
      }
      advance(1);
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

inline bool is_keyword(const std::string& s) {
  static const char* const kKeywords[] = {"ex1", "all1", "ex2", "all2", "in",
                                          "sub", "succ", "first", "last",
                                          "true", "false"};
  for (const char* k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Alphabet& sigma, ParseOptions options)
      : tokens_(lex(text)), sigma_(sigma), options_(options) {}

  Formula parse() {
    Formula phi = parse_iff();
    if (peek().kind != Tok::End) fail(peek(), "unexpected trailing input");
    return phi;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    take();
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    return take();
  }
  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    std::string near = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    if (t.kind != Tok::End && t.text.empty()) near = "symbol";
    throw SyntaxError(t.line, t.column, message + " near " + near);
  }

  bool is_keyword_tok(const Token& t, const char* kw) const {
    return t.kind == Tok::Ident && t.text == kw;
  }

  // Lowercase-initial names are first-order, uppercase-initial second-order.
  bool uppercase_name(const std::string& s) const {
    std::size_t i = 0;
    while (i < s.size() && s[i] == kReservedPrefix) ++i;
    return i < s.size() && std::isupper(static_cast<unsigned char>(s[i]));
  }

  std::string name(bool second_order) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text)) {
      fail(t, second_order ? "expected set variable" : "expected variable");
    }
    if (t.text[0] == kReservedPrefix && !options_.allow_reserved) {
      throw Error(Errc::ReservedName, "identifier '" + t.text +
                                          "' uses the reserved prefix");
    }
    if (uppercase_name(t.text) != second_order) {
      fail(t, second_order ? "set variables start with an uppercase letter"
                           : "variables start with a lowercase letter");
    }
    return take().text;
  }

  unsigned number() {
    const Token& t = expect(Tok::Number, "natural number");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    while (accept(Tok::DArrow)) lhs = f::iff(lhs, parse_implies());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (accept(Tok::Arrow)) return f::implies(lhs, parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept(Tok::Bar)) lhs = f::lor(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept(Tok::Amp)) lhs = f::land(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    if (accept(Tok::Bang)) return f::neg(parse_unary());
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "ex1" || t.text == "all1") {
        bool exists = t.text == "ex1";
        take();
        std::string x = name(false);
        expect(Tok::Dot, "'.'");
        Formula body = parse_iff();
        return exists ? f::ex1(x, body) : f::all1(x, body);
      }
      if (t.text == "ex2" || t.text == "all2") {
        bool exists = t.text == "ex2";
        take();
        std::string X = name(true);
        expect(Tok::Dot, "'.'");
        Formula body = parse_iff();
        return exists ? f::ex2(X, body) : f::all2(X, body);
      }
    }
    return parse_primary();
  }

  Formula parse_primary() {
    if (accept(Tok::LParen)) {
      Formula phi = parse_iff();
      expect(Tok::RParen, "')'");
      return phi;
    }
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t, "expected formula");
    if (accept_kw("true")) return f::truth();
    if (accept_kw("false")) return f::falsity();
    if ((t.text == "succ" || t.text == "first" || t.text == "last") &&
        peek(1).kind == Tok::LParen) {
      std::string kw = take().text;
      take();
      std::string x = name(false);
      if (kw == "succ") {
        expect(Tok::Comma, "','");
        std::string y = name(false);
        expect(Tok::RParen, "')'");
        return f::succ(x, y);
      }
      expect(Tok::RParen, "')'");
      return kw == "first" ? f::first(x) : f::last(x);
    }
    if (peek(1).kind == Tok::LParen && !is_keyword(t.text)) {
      // letter(x) or X(x); declared letters take precedence.
      std::string head = take().text;
      take();
      std::string x = name(false);
      expect(Tok::RParen, "')'");
      if (sigma_.contains(head)) return f::letter(head, x);
      if (uppercase_name(head)) {
        check_reserved(head);
        return f::member(head, x);
      }
      throw Error(Errc::UnknownLetter, "letter '" + head + "' not in alphabet");
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text) && uppercase_name(t.text)) {
      std::string X = name(true);
      if (accept_kw("sub")) return f::subset(X, name(true));
      if (accept(Tok::EqTok)) return f::set_eq(X, name(true));
      if (accept(Tok::Ne)) return f::set_neq(X, name(true));
      fail(peek(), "expected 'sub', '=' or '!='");
    }
    std::string x = name(false);
    if (accept_kw("in")) return f::member(name(true), x);
    const Token& op = peek();
    switch (op.kind) {
      case Tok::Lt: take(); return f::less(x, name(false));
      case Tok::Le: take(); return f::leq(x, name(false));
      case Tok::Gt: take(); return f::gt(x, name(false));
      case Tok::Ge: take(); return f::geq(x, name(false));
      case Tok::Ne: take(); return f::neq(x, name(false));
      case Tok::EqTok: {
        take();
        if (peek().kind == Tok::Number) return f::eq_const(x, number());
        std::string y = name(false);
        if (accept(Tok::Plus)) return f::plus(x, y, number());
        if (accept(Tok::Minus)) return f::minus(x, y, number());
        return f::eq(x, y);
      }
      default:
        fail(op, "expected comparison or 'in'");
    }
  }

  bool accept_kw(const char* kw) {
    if (!is_keyword_tok(peek(), kw)) return false;
    take();
    return true;
  }

  void check_reserved(const std::string& s) const {
    if (!s.empty() && s[0] == kReservedPrefix && !options_.allow_reserved) {
      throw Error(Errc::ReservedName, "identifier '" + s + "' uses the reserved prefix");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Alphabet& sigma_;
  ParseOptions options_;
};

inline void render_into(const Formula& phi, std::string& out);

inline void render_operand(const Formula& phi, std::string& out) {
  if (phi.is_binary() || phi.is_quantifier()) {
    out += '(';
    render_into(phi, out);
    out += ')';
  } else {
    render_into(phi, out);
  }
}

inline void render_into(const Formula& phi, std::string& out) {
  auto rel = [&](const std::string& a, const char* op, const std::string& b) {
    out += a;
    out += ' ';
    out += op;
    out += ' ';
    out += b;
  };
  auto binary = [&](const char* op) {
    // & and | associate to the left, so a left chain needs no parentheses.
    bool chain = (phi.kind() == Kind::And || phi.kind() == Kind::Or) &&
                 phi.left().kind() == phi.kind();
    if (chain) {
      render_into(phi.left(), out);
    } else {
      render_operand(phi.left(), out);
    }
    out += ' ';
    out += op;
    out += ' ';
    render_operand(phi.right(), out);
  };
  auto quant = [&](const char* kw, const std::string& v) {
    out += kw;
    out += ' ';
    out += v;
    out += ". ";
    render_into(phi.operand(), out);
  };
  switch (phi.kind()) {
    case Kind::Letter: out += phi.letter() + "(" + phi.var() + ")"; break;
    case Kind::Less: rel(phi.var(), "<", phi.var2()); break;
    case Kind::SetMember: rel(phi.var(), "in", phi.set()); break;
    case Kind::Not: out += '!'; render_operand(phi.operand(), out); break;
    case Kind::Or: binary("|"); break;
    case Kind::ExistsFO: quant("ex1", phi.var()); break;
    case Kind::ExistsSO: quant("ex2", phi.set()); break;
    case Kind::True: out += "true"; break;
    case Kind::False: out += "false"; break;
    case Kind::And: binary("&"); break;
    case Kind::Implies: binary("->"); break;
    case Kind::Iff: binary("<->"); break;
    case Kind::ForallFO: quant("all1", phi.var()); break;
    case Kind::ForallSO: quant("all2", phi.set()); break;
    case Kind::Eq: rel(phi.var(), "=", phi.var2()); break;
    case Kind::Neq: rel(phi.var(), "!=", phi.var2()); break;
    case Kind::Leq: rel(phi.var(), "<=", phi.var2()); break;
    case Kind::Geq: rel(phi.var(), ">=", phi.var2()); break;
    case Kind::Gt: rel(phi.var(), ">", phi.var2()); break;
    case Kind::EqConst: rel(phi.var(), "=", std::to_string(phi.constant())); break;
    case Kind::PlusOffset:
      rel(phi.var(), "=", phi.var2() + " + " + std::to_string(phi.constant()));
      break;
    case Kind::MinusOffset:
      rel(phi.var(), "=", phi.var2() + " - " + std::to_string(phi.constant()));
      break;
    case Kind::Succ: out += "succ(" + phi.var() + ", " + phi.var2() + ")"; break;
    case Kind::First: out += "first(" + phi.var() + ")"; break;
    case Kind::Last: out += "last(" + phi.var() + ")"; break;
    case Kind::Subset: rel(phi.set(), "sub", phi.set2()); break;
    case Kind::SetEq: rel(phi.set(), "=", phi.set2()); break;
    case Kind::SetNeq: rel(phi.set(), "!=", phi.set2()); break;
  }
}

}  // namespace detail

/// Parses the textual formula syntax. Sugar is preserved; call expand()
/// for the core form.
///
///   phi  := ex1 v. phi | all1 v. phi | ex2 V. phi | all2 V. phi
///         | phi <-> phi | phi -> phi | phi "|" phi | phi & phi | !phi
///         | (phi) | atom
///   atom := letter(v) | V(v) | v in V | V sub V | V = V | V != V
///         | v cmp v | v = v + n | v = v - n | v = n
///         | succ(v, v) | first(v) | last(v) | true | false
///
/// Precedence from tightest: !, &, |, ->, <->. Quantifier bodies extend as
/// far right as possible. '#' starts a comment.
inline Formula parse_formula(std::string_view text, const Alphabet& sigma,
                             ParseOptions options = {}) {
  Formula phi = detail::FormulaParser(text, sigma, options).parse();
  check_well_formed(phi, sigma);
  return phi;
}

// Binary connectives and quantifiers nested inside other operators are
// parenthesized, so the output re-parses to an identical tree.
inline std::string render_formula(const Formula& phi) {
  std::string out;
  detail::render_into(phi, out);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Formula& phi) {
  return os << render_formula(phi);
}

}  // namespace msol
