#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace orbitcell {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
  Rational() = default;
  Rational(int v) : value_(v) {}
  Rational(long v) : value_(v) {}
  Rational(long long v) : value_(mpz_class(std::to_string(v))) {}
  Rational(const mpz_class &v) : value_(v) {}
  Rational(const mpz_class &num, const mpz_class &den) {
    if (den == 0)
      throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Parses "p" or "p/q" (optional leading sign on p).
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos)
        return Rational(mpz_class(std::string(text)));
      return Rational(mpz_class(std::string(text.substr(0, slash))),
                      mpz_class(std::string(text.substr(slash + 1))));
    } catch (const std::invalid_argument &) {
      throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    }
  }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class &raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational abs() const { return Rational(mpq_class(::abs(value_))); }

  Rational &operator+=(const Rational &o) { value_ += o.value_; return *this; }
  Rational &operator-=(const Rational &o) { value_ -= o.value_; return *this; }
  Rational &operator*=(const Rational &o) { value_ *= o.value_; return *this; }
  Rational &operator/=(const Rational &o) {
    if (o.is_zero())
      throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
  friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational &a, const Rational &b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const {
    if (is_integer())
      return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  /// Always "p/q"; the exact wire form used in JSON output.
  std::string to_fraction_string() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
    return os << r.to_string();
  }

private:
  mpq_class value_{0};
};

inline Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n)
    return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

inline Rational factorial(long n) {
  if (n < 0)
    throw std::domain_error("factorial of a negative number");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

} // namespace orbitcell
