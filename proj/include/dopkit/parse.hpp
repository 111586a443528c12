// Recursive-descent parser for polynomial expressions.
//   expr   := ['-'] term { ('+'|'-') term }
//   term   := factor { ['*'] factor }          (the '*' may be omitted)
//   factor := base ['^' nat]
//   base   := nat ['/' nat] | identifier | '(' expr ')'
#ifndef DOPKIT_PARSE_HPP
#define DOPKIT_PARSE_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "dopkit/polynomial.hpp"

namespace dopkit {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line), col(col) {}
  int line, col;
};

template <class F>
class PolyParser {
public:
  PolyParser(const PolyRing<F>& ring, const std::string& text, int line0 = 1, int col0 = 1)
      : ring_(ring), s_(text), line_(line0), col_(col0) {}

  Poly<F> parse() {
    Poly<F> p = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

private:
  Poly<F> expr() {
    skip_ws();
    bool negate = false;
    if (peek() == '-') { negate = true; advance(); }
    else if (peek() == '+') advance();
    Poly<F> acc = term();
    if (negate) acc = ring_.neg(acc);
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '+') { advance(); acc = ring_.add(acc, term()); }
      else if (c == '-') { advance(); acc = ring_.sub(acc, term()); }
      else break;
    }
    return acc;
  }

  Poly<F> term() {
    Poly<F> acc = factor();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '*') { advance(); acc = ring_.mul(acc, factor()); }
      else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || std::isdigit(static_cast<unsigned char>(c)) || c == '(')
        acc = ring_.mul(acc, factor());
      else break;
    }
    return acc;
  }

  Poly<F> factor() {
    Poly<F> b = base();
    skip_ws();
    if (peek() == '^') {
      advance();
      long e = nat("exponent");
      if (e > 255) fail("exponent too large");
      b = ring_.pow(b, static_cast<int>(e));
    }
    return b;
  }

  Poly<F> base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      advance();
      Poly<F> p = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      advance();
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = nat("number");
      skip_ws();
      if (peek() == '/') {
        advance();
        long den = nat("denominator");
        if (den == 0) fail("zero denominator");
        return ring_.constant(ring_.field().from_ratio(num, den));
      }
      return ring_.constant(ring_.field().from_long(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      int l = line_, co = col_;
      std::string id;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\'')) {
        id += s_[pos_];
        advance();
      }
      for (int i = 0; i < ring_.nvars(); ++i)
        if (ring_.names()[i] == id) return ring_.var(i);
      throw ParseError("unknown variable '" + id + "'", l, co);
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
    return ring_.zero();  // unreachable
  }

  long nat(const char* what) {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(std::string("expected ") + what);
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (1L << 40)) fail("integer literal too large");
      advance();
    }
    return v;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void advance() {
    if (pos_ < s_.size()) {
      if (s_[pos_] == '\n') { ++line_; col_ = 1; }
      else ++col_;
      ++pos_;
    }
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  const PolyRing<F>& ring_;
  const std::string& s_;
  size_t pos_ = 0;
  int line_, col_;
};

template <class F>
Poly<F> parse_poly(const PolyRing<F>& ring, const std::string& text) {
  return PolyParser<F>(ring, text).parse();
}

}  // namespace dopkit

#endif
