#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"

namespace ltlfo {

namespace detail {

enum class Tok {
  end,
  ident,
  string,
  lparen,
  rparen,
  colon,
  eq,
  neq,
  bang,
  amp,
  bar,
  arrow,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

// '#' starts a comment running to the end of the line.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n')
        ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        ++i;
      out.push_back({Tok::ident, std::string(src.substr(start, i - start)), start});
      continue;
    }
    if (c == '"') {
      std::string text;
      ++i;
      while (true) {
        if (i >= src.size())
          throw syntax_error(start, "closing '\"'");
        char d = src[i++];
        if (d == '"')
          break;
        if (d == '\\') {
          if (i >= src.size() || (src[i] != '"' && src[i] != '\\'))
            throw syntax_error(i, "'\\\"' or '\\\\' escape");
          d = src[i++];
        }
        text += d;
      }
      out.push_back({Tok::string, std::move(text), start});
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "!=") {
      out.push_back({Tok::neq, "!=", start});
      i += 2;
      continue;
    }
    if (two == "->") {
      out.push_back({Tok::arrow, "->", start});
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
    case '(': kind = Tok::lparen; break;
    case ')': kind = Tok::rparen; break;
    case ':': kind = Tok::colon; break;
    case '=': kind = Tok::eq; break;
    case '!': kind = Tok::bang; break;
    case '&': kind = Tok::amp; break;
    case '|': kind = Tok::bar; break;
    default: throw syntax_error(start, "a token");
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::end, "", src.size()});
  return out;
}

inline bool is_keyword(std::string_view s) {
  return s == "G" || s == "F" || s == "X" || s == "U" || s == "R" || s == "exists" || s == "forall" || s == "in" ||
         s == "true" || s == "false";
}

// Recursive descent, loosest level first:
//   implies := or ("->" implies)?
//   or      := and ("|" and)*
//   and     := temporal ("&" temporal)*
//   temporal:= unary (("U" | "R") temporal)?
//   unary   := ("G" | "F" | "X" | "!") unary | quantifier unary-body | primary
class Parser {
public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Formula parse_all() {
    Formula f = implication();
    if (peek().kind != Tok::end)
      throw syntax_error(peek().pos, "end of input");
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  bool at_word(std::string_view w) const { return peek().kind == Tok::ident && peek().text == w; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      throw syntax_error(peek().pos, what);
    ++pos_;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::arrow) {
      ++pos_;
      return Formula::implication(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::bar) {
      ++pos_;
      f = Formula::disjunction(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = temporal();
    while (peek().kind == Tok::amp) {
      ++pos_;
      f = Formula::conjunction(f, temporal());
    }
    return f;
  }

  Formula temporal() {
    Formula lhs = unary();
    if (at_word("U")) {
      ++pos_;
      return Formula::until(lhs, temporal());
    }
    if (at_word("R")) {
      ++pos_;
      return Formula::release(lhs, temporal());
    }
    return lhs;
  }

  Formula unary() {
    if (peek().kind == Tok::bang) {
      ++pos_;
      return Formula::negation(unary());
    }
    if (at_word("G")) {
      ++pos_;
      return Formula::globally(unary());
    }
    if (at_word("F")) {
      ++pos_;
      return Formula::finally(unary());
    }
    if (at_word("X")) {
      ++pos_;
      return Formula::next(unary());
    }
    if (at_word("exists") || at_word("forall")) {
      const bool ex = take().text == "exists";
      if (peek().kind != Tok::ident || is_keyword(peek().text))
        throw syntax_error(peek().pos, "variable name");
      std::string var = take().text;
      if (!at_word("in"))
        throw syntax_error(peek().pos, "'in'");
      ++pos_;
      if (peek().kind != Tok::string)
        throw syntax_error(peek().pos, "quoted path");
      const Token path_tok = take();
      Path path;
      try {
        path = Path::parse(path_tok.text);
      } catch (const error&) {
        throw syntax_error(path_tok.pos, "path of the form \"/seg(/seg)*\"");
      }
      expect(Tok::colon, "':'");
      Formula body = unary();
      return ex ? Formula::exists(std::move(var), std::move(path), body)
                : Formula::forall(std::move(var), std::move(path), body);
    }
    return primary();
  }

  Formula primary() {
    if (peek().kind == Tok::lparen) {
      ++pos_;
      Formula f = implication();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (at_word("true")) {
      ++pos_;
      return Formula::truth();
    }
    if (at_word("false")) {
      ++pos_;
      return Formula::falsity();
    }
    Term lhs = term();
    Tok rel = peek().kind;
    if (rel != Tok::eq && rel != Tok::neq)
      throw syntax_error(peek().pos, "'=' or '!='");
    ++pos_;
    Term rhs = term();
    return rel == Tok::eq ? Formula::equal(std::move(lhs), std::move(rhs))
                          : Formula::not_equal(std::move(lhs), std::move(rhs));
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::string) {
      return Term::constant(take().text);
    }
    if (t.kind == Tok::ident && !is_keyword(t.text)) {
      return Term::variable(take().text);
    }
    throw syntax_error(t.pos, "formula");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses one formula and checks that it is well formed.
///
/// Throws syntax_error, unbound_variable or shadowed_variable.
inline Formula parse(std::string_view text) {
  Formula f = detail::Parser(text).parse_all();
  check_well_formed(f);
  return f;
}

} // namespace ltlfo
