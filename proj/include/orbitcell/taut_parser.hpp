#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "graded_poly.hpp"
#include "m0n.hpp"
#include "rational.hpp"

namespace orbitcell {

class ParseError : public std::invalid_argument {
public:
  ParseError(std::size_t position, const std::string &what)
      : std::invalid_argument("parse error at position " + std::to_string(position) + ": " + what),
        position_(position), detail_(what) {}
  std::size_t position() const { return position_; }
  const std::string &detail() const { return detail_; }

private:
  std::size_t position_;
  std::string detail_;
};

namespace detail {

// Recursive descent over
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' INT)?
//   primary := INT ('/' INT)? | 'psi' '(' label ')' | 'delta' '{' label (',' label)* '}' | '(' expr ')'
// with label := 0..n-2 | 'inf'.
class TautParser {
public:
  TautParser(std::string_view src, const m0n::TautSpace &space) : src_(src), space_(space) {}

  GradedPoly parse() {
    GradedPoly e = expr();
    skip_ws();
    if (pos_ != src_.size())
      fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string &msg) const { throw ParseError(at, msg); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (src_.substr(pos_, w.size()) != w)
      return false;
    std::size_t end = pos_ + w.size();
    if (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
      return false;
    pos_ = end;
    return true;
  }

  bool at_digit() {
    skip_ws();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  std::string digits() {
    if (!at_digit())
      fail("expected a number");
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  GradedPoly expr() {
    GradedPoly e = term();
    for (;;) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }

  GradedPoly term() {
    GradedPoly e = unary();
    while (accept('*'))
      e = e * unary();
    return e;
  }

  GradedPoly unary() {
    if (accept('-'))
      return -unary();
    if (accept('+'))
      return unary();
    return power();
  }

  GradedPoly power() {
    GradedPoly base = primary();
    if (!accept('^'))
      return base;
    std::size_t at = (skip_ws(), pos_);
    std::string d = digits();
    if (d.size() > 4)
      fail_at(at, "exponent too large");
    return base.pow(static_cast<unsigned>(std::stoul(d)));
  }

  int label() {
    skip_ws();
    std::size_t at = pos_;
    const int n = space_.points();
    if (accept_word("inf"))
      return n - 1;
    if (!at_digit())
      fail("expected a marking label (0.." + std::to_string(n - 2) + " or inf)");
    std::string d = digits();
    if (d.size() > 3 || std::stoi(d) > n - 2)
      fail_at(at, "invalid label '" + d + "': markings are 0.." + std::to_string(n - 2) + " and inf");
    return std::stoi(d);
  }

  GradedPoly primary() {
    skip_ws();
    std::size_t at = pos_;
    if (at_digit()) {
      std::string text = digits();
      skip_ws();
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        ++pos_;
        text += '/' + digits();
      }
      Rational c;
      try {
        c = Rational::parse(text);
      } catch (const std::exception &ex) {
        fail_at(at, ex.what());
      }
      return GradedPoly::constant(space_.generators(), space_.dimension(), c);
    }
    if (accept_word("psi")) {
      expect('(');
      int l = label();
      expect(')');
      return space_.psi(l);
    }
    if (accept_word("delta")) {
      expect('{');
      m0n::Mask mask = 0;
      do {
        skip_ws();
        std::size_t lat = pos_;
        int l = label();
        if (m0n::has(mask, l))
          fail_at(lat, "repeated label in boundary set");
        mask |= m0n::Mask{1} << l;
      } while (accept(','));
      expect('}');
      try {
        return space_.delta(m0n::BoundarySet(space_.points(), mask));
      } catch (const m0n::MalformedBoundary &ex) {
        fail_at(at, ex.what());
      }
    }
    if (accept('(')) {
      GradedPoly e = expr();
      expect(')');
      return e;
    }
    if (pos_ >= src_.size())
      fail("unexpected end of input");
    fail("unexpected '" + std::string(1, src_[pos_]) + "'");
  }

  std::string_view src_;
  const m0n::TautSpace &space_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a tautological expression on the n-pointed space; boundary sets
/// come back in canonical form.
inline GradedPoly parse_taut_expr(std::string_view src, const m0n::TautSpace &space) {
  return detail::TautParser(src, space).parse();
}

inline GradedPoly parse_taut_expr(std::string_view src, int n = 7) {
  m0n::TautSpace space(n);
  return parse_taut_expr(src, space);
}

} // namespace orbitcell
