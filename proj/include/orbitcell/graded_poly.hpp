#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace orbitcell {

/// Thrown when two polynomials over different generator lists or truncations meet.
class GeneratorMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Generator {
  std::string name;
  int degree = 1;

  friend bool operator==(const Generator &, const Generator &) = default;
};

/// Ordered, immutable list of named generators with positive degrees.
class GeneratorSet {
public:
  explicit GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].degree <= 0)
        throw std::invalid_argument("generator '" + gens_[i].name + "' must have positive degree");
      if (!index_.emplace(gens_[i].name, i).second)
        throw std::invalid_argument("duplicate generator '" + gens_[i].name + "'");
    }
  }

  static std::shared_ptr<const GeneratorSet> make(std::vector<Generator> gens) {
    return std::make_shared<const GeneratorSet>(std::move(gens));
  }

  std::size_t size() const { return gens_.size(); }
  const Generator &operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Generator> &generators() const { return gens_; }

  std::optional<std::size_t> index_of(const std::string &name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  friend bool operator==(const GeneratorSet &a, const GeneratorSet &b) { return a.gens_ == b.gens_; }

private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, std::size_t> index_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;
using Exponents = std::vector<std::uint16_t>;

/// Term key ordered graded-lexicographically: weighted degree ascending, then
/// exponent vectors descending (earlier generators with larger powers first).
struct TermKey {
  int degree = 0;
  Exponents exps;

  friend bool operator==(const TermKey &, const TermKey &) = default;
  friend bool operator<(const TermKey &a, const TermKey &b) {
    if (a.degree != b.degree)
      return a.degree < b.degree;
    return a.exps > b.exps;
  }
};

/// Sparse polynomial over exact rationals in weighted generators, truncated
/// above a fixed degree. Values are immutable in practice; every operation
/// returns a fresh polynomial.
class GradedPoly {
public:
  using TermMap = std::map<TermKey, Rational>;

  GradedPoly(GeneratorSetPtr gens, int truncation) : gens_(std::move(gens)), truncation_(truncation) {
    if (!gens_)
      throw std::invalid_argument("null generator set");
    if (truncation_ < 0)
      throw std::invalid_argument("negative truncation degree");
  }

  static GradedPoly constant(GeneratorSetPtr gens, int truncation, const Rational &c) {
    GradedPoly p(std::move(gens), truncation);
    p.add_term(Exponents(p.gens_->size(), 0), c);
    return p;
  }

  static GradedPoly generator(GeneratorSetPtr gens, int truncation, std::size_t index) {
    if (index >= gens->size())
      throw std::out_of_range("generator index out of range");
    GradedPoly p(gens, truncation);
    Exponents e(gens->size(), 0);
    e[index] = 1;
    p.add_term(std::move(e), Rational(1));
    return p;
  }

  static GradedPoly generator(GeneratorSetPtr gens, int truncation, const std::string &name) {
    auto idx = gens->index_of(name);
    if (!idx)
      throw GeneratorMismatch("unknown generator '" + name + "'");
    return generator(std::move(gens), truncation, *idx);
  }

  static GradedPoly monomial(GeneratorSetPtr gens, int truncation, Exponents exps,
                             const Rational &c = Rational(1)) {
    GradedPoly p(std::move(gens), truncation);
    p.add_term(std::move(exps), c);
    return p;
  }

  const GeneratorSetPtr &generators() const { return gens_; }
  int truncation() const { return truncation_; }
  const TermMap &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int weighted_degree(const Exponents &e) const {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      d += static_cast<int>(e[i]) * (*gens_)[i].degree;
    return d;
  }

  /// Adds c * x^e in place; drops the term if it exceeds the truncation.
  void add_term(Exponents e, const Rational &c) {
    if (e.size() != gens_->size())
      throw GeneratorMismatch("exponent vector length does not match generator count");
    if (c.is_zero())
      return;
    int d = weighted_degree(e);
    if (d > truncation_)
      return;
    TermKey key{d, std::move(e)};
    auto [it, inserted] = terms_.try_emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  Rational coefficient(const Exponents &e) const {
    auto it = terms_.find(TermKey{weighted_degree(e), e});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponents(gens_->size(), 0)); }

  /// Highest weighted degree present, or -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree; }

  GradedPoly homogeneous(int k) const {
    GradedPoly r(gens_, truncation_);
    for (const auto &[key, c] : terms_)
      if (key.degree == k)
        r.terms_.emplace(key, c);
    return r;
  }

  GradedPoly truncated(int k) const {
    GradedPoly r(gens_, std::min(k, truncation_));
    for (const auto &[key, c] : terms_)
      if (key.degree <= r.truncation_)
        r.terms_.emplace(key, c);
    return r;
  }

  /// Same terms viewed with a different truncation (terms above it are dropped).
  GradedPoly with_truncation(int k) const {
    GradedPoly r(gens_, k);
    for (const auto &[key, c] : terms_)
      if (key.degree <= k)
        r.terms_.emplace(key, c);
    return r;
  }

  bool compatible(const GradedPoly &o) const {
    return truncation_ == o.truncation_ && (gens_ == o.gens_ || *gens_ == *o.gens_);
  }

  void require_compatible(const GradedPoly &o) const {
    if (!compatible(o))
      throw GeneratorMismatch("polynomials over different generator lists or truncations");
  }

  GradedPoly &operator+=(const GradedPoly &o) {
    require_compatible(o);
    for (const auto &[key, c] : o.terms_)
      accumulate(key, c);
    return *this;
  }

  GradedPoly &operator-=(const GradedPoly &o) {
    require_compatible(o);
    for (const auto &[key, c] : o.terms_)
      accumulate(key, -c);
    return *this;
  }

  GradedPoly &operator*=(const Rational &s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto &[key, c] : terms_)
      c *= s;
    return *this;
  }

  friend GradedPoly operator+(GradedPoly a, const GradedPoly &b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly &b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational &s) { return a *= s; }
  friend GradedPoly operator*(const Rational &s, GradedPoly a) { return a *= s; }
  friend GradedPoly operator-(GradedPoly a) { return a *= Rational(-1); }

  friend GradedPoly operator*(const GradedPoly &a, const GradedPoly &b) {
    a.require_compatible(b);
    GradedPoly r(a.gens_, a.truncation_);
    const std::size_t n = a.gens_->size();
    Exponents e(n);
    for (const auto &[ka, ca] : a.terms_) {
      for (const auto &[kb, cb] : b.terms_) {
        // b's terms ascend in degree, so nothing further can fit.
        if (ka.degree + kb.degree > r.truncation_)
          break;
        for (std::size_t i = 0; i < n; ++i)
          e[i] = static_cast<std::uint16_t>(ka.exps[i] + kb.exps[i]);
        r.accumulate(TermKey{ka.degree + kb.degree, e}, ca * cb);
      }
    }
    return r;
  }

  GradedPoly &operator*=(const GradedPoly &o) { return *this = *this * o; }

  GradedPoly pow(unsigned k) const {
    GradedPoly r = constant(gens_, truncation_, Rational(1));
    GradedPoly base = *this;
    while (k) {
      if (k & 1u)
        r *= base;
      k >>= 1u;
      if (k)
        base *= base;
    }
    return r;
  }

  /// Multiplicative inverse up to the truncation degree. Requires constant term 1.
  GradedPoly inverse_unit() const {
    if (!constant_term().is_one())
      throw std::domain_error("series inversion needs constant term 1");
    // 1/(1 + n) = sum_k (-n)^k, with n nilpotent modulo truncation.
    GradedPoly one = constant(gens_, truncation_, Rational(1));
    GradedPoly neg = one - *this;
    GradedPoly r = one;
    GradedPoly power = one;
    for (int k = 1; k <= truncation_; ++k) {
      power *= neg;
      if (power.is_zero())
        break;
      r += power;
    }
    return r;
  }

  /// Multiplies every degree-k component by (-1)^k.
  GradedPoly graded_sign_flip() const {
    GradedPoly r = *this;
    for (auto &[key, c] : r.terms_)
      if (key.degree % 2 != 0)
        c = -c;
    return r;
  }

  /// Permutes generator slots: generator i of the result carries the
  /// exponent of generator perm[i] of this polynomial. Degrees must agree.
  GradedPoly permuted(const std::vector<std::size_t> &perm) const {
    GradedPoly r(gens_, truncation_);
    for (const auto &[key, c] : terms_) {
      Exponents e(key.exps.size());
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = key.exps[perm[i]];
      r.add_term(std::move(e), c);
    }
    return r;
  }

  /// Ring homomorphism sending generator i to images[i]; all images must share
  /// one generator list and truncation.
  GradedPoly substitute(const std::vector<GradedPoly> &images, GeneratorSetPtr target,
                        int target_truncation) const {
    if (images.size() != gens_->size())
      throw GeneratorMismatch("substitution needs one image per generator");
    GradedPoly one = constant(target, target_truncation, Rational(1));
    for (const auto &img : images)
      one.require_compatible(img);
    std::vector<std::vector<GradedPoly>> powers(images.size());
    auto power_of = [&](std::size_t i, unsigned k) -> const GradedPoly & {
      auto &cache = powers[i];
      if (cache.empty())
        cache.push_back(one);
      while (cache.size() <= k)
        cache.push_back(cache.back() * images[i]);
      return cache[k];
    };
    GradedPoly r(target, target_truncation);
    for (const auto &[key, c] : terms_) {
      GradedPoly t = one * c;
      for (std::size_t i = 0; i < key.exps.size() && !t.is_zero(); ++i)
        if (key.exps[i])
          t *= power_of(i, key.exps[i]);
      r += t;
    }
    return r;
  }

  friend bool operator==(const GradedPoly &a, const GradedPoly &b) {
    return a.compatible(b) && a.terms_ == b.terms_;
  }

  std::string monomial_string(const Exponents &e) const {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i])
        continue;
      if (!s.empty())
        s += '*';
      s += (*gens_)[i].name;
      if (e[i] > 1)
        s += '^' + std::to_string(e[i]);
    }
    return s;
  }

  /// Human-readable form in canonical term order, e.g. "1 - 2*h + h^2".
  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[key, c] : terms_) {
      std::string mono = monomial_string(key.exps);
      Rational mag = c.abs();
      if (first)
        os << (c.sign() < 0 ? "-" : "");
      else
        os << (c.sign() < 0 ? " - " : " + ");
      first = false;
      if (mono.empty())
        os << mag;
      else if (mag.is_one())
        os << mono;
      else
        os << mag << '*' << mono;
    }
    return os.str();
  }

  friend std::ostream &operator<<(std::ostream &os, const GradedPoly &p) { return os << p.to_string(); }

private:
  void accumulate(const TermKey &key, const Rational &c) {
    if (c.is_zero() || key.degree > truncation_)
      return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  GeneratorSetPtr gens_;
  int truncation_;
  TermMap terms_;
};

} // namespace orbitcell
