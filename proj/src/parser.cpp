#include "amc/parser.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "amc/error.hpp"

namespace amc {

namespace {

enum class Tok { Ident, LCoal, RCoal, Comma, LParen, RParen, Not, And, Or, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (ident_char(c) && c != '\'') {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    auto two = s.substr(i, 2);
    if (two == "<<") {
      out.push_back({Tok::LCoal, "<<", pos});
      advance(2);
      continue;
    }
    if (two == ">>") {
      out.push_back({Tok::RCoal, ">>", pos});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case ',': k = Tok::Comma; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '!': k = Tok::Not; break;
      case '&': k = Tok::And; break;
      case '|': k = Tok::Or; break;
      case '.': k = Tok::Dot; break;
      default: {
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && !ident_char(s[j]) &&
               s[j] != '(' && s[j] != ')')
          ++j;
        if (j == i) j = i + 1;
        throw ParseError("unknown operator '" + std::string(s.substr(i, j - i)) + "'", pos.line, pos.column);
      }
    }
    out.push_back({k, std::string(1, c), pos});
    advance(1);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

bool is_keyword(const std::string& w) {
  return w == "X" || w == "G" || w == "F" || w == "U" || w == "mu" || w == "nu" || w == "true" ||
         w == "false";
}

// Identifiers of this shape are second-order variables in AEMC text.
bool variable_shaped(const std::string& w) {
  if (w.empty() || !std::isupper(static_cast<unsigned char>(w[0]))) return false;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(w[i]))) return false;
  return true;
}

const char* describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    default: return "token";
  }
}

// Recursive-descent parser shared by both logics. `F` is AtlFormula or
// AemcFormula; ATL-only and AEMC-only productions are switched on `kAemc`.
template <class F, bool kAemc>
class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  F parse() {
    F f = formula();
    if (peek().kind != Tok::End) {
      if (is_word("U")) fail("'U' requires a coalition prefix, e.g. <<A>> p U q");
      fail(std::string("unexpected ") + describe(peek()) + " '" + peek().text + "'");
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool is_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, peek()); }
  [[noreturn]] void fail_at(const std::string& msg, const Token& t) const {
    throw ParseError(msg, t.pos.line, t.pos.column);
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) {
      std::string got = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
      fail(std::string("expected ") + what + ", found " + got);
    }
    ++pos_;
  }

  F formula() { return disjunction(); }

  F disjunction() {
    F lhs = conjunction();
    while (peek().kind == Tok::Or) {
      SourcePos p = take().pos;
      F rhs = conjunction();
      lhs = F::disjunction(lhs, rhs, p);
    }
    return lhs;
  }

  F conjunction() {
    F lhs = unary();
    while (peek().kind == Tok::And) {
      SourcePos p = take().pos;
      F rhs = unary();
      lhs = F::conjunction(lhs, rhs, p);
    }
    return lhs;
  }

  F unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: {
        SourcePos p = take().pos;
        return F::negation(unary(), p);
      }
      case Tok::LCoal: return strategic();
      case Tok::LParen: {
        take();
        F f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: return word();
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + t.text + "'");
    }
  }

  F word() {
    Token t = take();
    if (t.text == "true") return F::truth(t.pos);
    if (t.text == "false") return F::falsity(t.pos);
    if (t.text == "mu" || t.text == "nu") {
      if constexpr (kAemc) {
        return fixpoint(t);
      } else {
        fail_at("fixpoint operator '" + t.text + "' is not part of ATL", t);
      }
    }
    if (is_keyword(t.text)) {
      if (t.text == "U") fail_at("'U' requires a coalition prefix, e.g. <<A>> p U q", t);
      fail_at("temporal operator '" + t.text + "' must follow a coalition <<...>>", t);
    }
    if constexpr (kAemc) {
      for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
        if (*it == t.text) return F::var(t.text, t.pos);
      if (variable_shaped(t.text)) fail_at("unbound variable '" + t.text + "'", t);
    }
    return F::prop(t.text, t.pos);
  }

  F fixpoint(const Token& op) {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected a variable after '" + op.text + "'");
    Token v = take();
    if (!variable_shaped(v.text))
      fail_at("variable names are an upper-case letter optionally followed by digits, got '" + v.text + "'", v);
    expect(Tok::Dot, "'.'");
    bound_.push_back(v.text);
    F body = formula();
    bound_.pop_back();
    if constexpr (kAemc) {
      return op.text == "mu" ? F::mu(v.text, body, op.pos) : F::nu(v.text, body, op.pos);
    } else {
      fail_at("fixpoint operator '" + op.text + "' is not part of ATL", op);
    }
  }

  std::vector<std::string> coalition() {
    expect(Tok::LCoal, "'<<'");
    std::vector<std::string> names;
    if (peek().kind == Tok::RCoal) {
      take();
      return names;
    }
    while (true) {
      if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected an agent name");
      names.push_back(take().text);
      if (peek().kind == Tok::Comma) {
        take();
        continue;
      }
      expect(Tok::RCoal, "'>>'");
      return names;
    }
  }

  F strategic() {
    SourcePos p = peek().pos;
    auto coal = coalition();
    if (is_word("X")) {
      take();
      return F::next(coal, formula(), p);
    }
    if constexpr (kAemc) {
      fail("AEMC formulas only use the next-step operator <<A>> X");
    } else {
      if (is_word("G")) {
        take();
        return F::always(coal, formula(), p);
      }
      if (is_word("F")) {
        take();
        return F::eventually(coal, formula(), p);
      }
      // <<A>> (a U b): a parenthesized path formula
      if (peek().kind == Tok::LParen) {
        std::size_t save = pos_;
        take();
        try {
          F lhs = disjunction();
          if (is_word("U")) {
            take();
            F rhs = formula();
            expect(Tok::RParen, "')'");
            return F::until(coal, lhs, rhs, p);
          }
        } catch (const ParseError&) {
        }
        pos_ = save;
      }
      F lhs = disjunction();
      if (!is_word("U")) fail("expected X, G, F or an until formula after the coalition");
      take();
      F rhs = formula();
      return F::until(coal, lhs, rhs, p);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace

AtlFormula parse_atl(std::string_view text) { return Parser<AtlFormula, false>(text).parse(); }
AemcFormula parse_aemc(std::string_view text) { return Parser<AemcFormula, true>(text).parse(); }

}  // namespace amc
