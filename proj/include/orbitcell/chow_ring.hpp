#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graded_poly.hpp"
#include "m0n.hpp"
#include "rational.hpp"

namespace orbitcell {

class UnknownName : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Graded ring presented by generators, monomial vanishing rules and a
/// degree functional on the top degree. The functional is either a table of
/// top-degree monomials (absent keys integrate to zero) or a delegate.
class RingSpec {
public:
  using Delegate = std::function<Rational(const GradedPoly &)>;

  RingSpec(std::string name, std::vector<Generator> generators, int top_degree,
           std::vector<Exponents> vanishing, std::map<Exponents, Rational> table)
      : name_(std::move(name)), gens_(GeneratorSet::make(std::move(generators))), top_degree_(top_degree),
        vanishing_(std::move(vanishing)), table_(std::move(table)) {
    validate();
  }

  RingSpec(std::string name, std::vector<Generator> generators, int top_degree,
           std::vector<Exponents> vanishing, Delegate delegate, std::string delegate_description)
      : name_(std::move(name)), gens_(GeneratorSet::make(std::move(generators))), top_degree_(top_degree),
        vanishing_(std::move(vanishing)), delegate_(std::move(delegate)),
        delegate_description_(std::move(delegate_description)) {
    validate();
  }

  const std::string &name() const { return name_; }
  const GeneratorSetPtr &generators() const { return gens_; }
  int top_degree() const { return top_degree_; }
  const std::vector<Exponents> &vanishing() const { return vanishing_; }
  const std::map<Exponents, Rational> &integral_table() const { return table_; }
  bool delegated() const { return static_cast<bool>(delegate_); }
  const std::string &delegate_description() const { return delegate_description_; }

  GradedPoly zero() const { return GradedPoly(gens_, top_degree_); }
  GradedPoly one() const { return constant(Rational(1)); }
  GradedPoly constant(const Rational &c) const { return GradedPoly::constant(gens_, top_degree_, c); }
  GradedPoly gen(const std::string &name) const { return GradedPoly::generator(gens_, top_degree_, name); }
  GradedPoly monomial(Exponents e, const Rational &c = Rational(1)) const {
    return GradedPoly::monomial(gens_, top_degree_, std::move(e), c);
  }

  bool owns(const GradedPoly &p) const { return p.truncation() == top_degree_ && *p.generators() == *gens_; }

  void require_owned(const GradedPoly &p) const {
    if (!(*p.generators() == *gens_))
      throw GeneratorMismatch("polynomial is not over the generators of ring " + name_);
  }

  bool is_vanishing(const Exponents &e) const {
    for (const auto &v : vanishing_) {
      bool divisible = true;
      for (std::size_t i = 0; i < e.size() && divisible; ++i)
        divisible = e[i] >= v[i];
      if (divisible)
        return true;
    }
    return false;
  }

  /// Drops terms divisible by a vanishing monomial or above the top degree.
  GradedPoly normalize(const GradedPoly &p) const {
    require_owned(p);
    GradedPoly r = zero();
    for (const auto &[key, c] : p.terms())
      if (key.degree <= top_degree_ && !is_vanishing(key.exps))
        r.add_term(key.exps, c);
    return r;
  }

  /// Degree functional: only top-degree terms contribute.
  Rational integrate(const GradedPoly &p) const {
    GradedPoly n = normalize(p);
    if (delegate_)
      return delegate_(n.homogeneous(top_degree_));
    Rational total(0);
    for (const auto &[key, c] : n.terms()) {
      if (key.degree != top_degree_)
        continue;
      if (auto it = table_.find(key.exps); it != table_.end())
        total += c * it->second;
    }
    return total;
  }

private:
  void validate() const {
    if (top_degree_ <= 0)
      throw std::invalid_argument("ring " + name_ + ": top degree must be positive");
    for (const auto &v : vanishing_)
      if (v.size() != gens_->size())
        throw GeneratorMismatch("ring " + name_ + ": vanishing monomial has wrong length");
    GradedPoly probe(gens_, top_degree_);
    for (const auto &[e, value] : table_) {
      if (e.size() != gens_->size())
        throw GeneratorMismatch("ring " + name_ + ": table key has wrong length");
      if (probe.weighted_degree(e) != top_degree_)
        throw std::invalid_argument("ring " + name_ + ": table key not of top degree");
      if (is_vanishing(e))
        throw std::invalid_argument("ring " + name_ + ": table key lies in the vanishing ideal");
    }
  }

  std::string name_;
  GeneratorSetPtr gens_;
  int top_degree_;
  std::vector<Exponents> vanishing_;
  std::map<Exponents, Rational> table_;
  Delegate delegate_;
  std::string delegate_description_;
};

inline const std::vector<std::string> &family_ring_names() {
  static const std::vector<std::string> names{"B1", "B2", "B3", "B4", "BGm", "P19", "P4dual"};
  return names;
}

/// Ring presentations of the test-family bases and the application targets.
inline RingSpec make_family_ring(const std::string &name) {
  using Table = std::map<Exponents, Rational>;
  if (name == "B1" || name == "P4dual")
    return RingSpec(name, {{"h", 1}}, 4, {{5}}, Table{{{4}, Rational(1)}});
  if (name == "P19")
    return RingSpec(name, {{"h", 1}}, 4, {}, Table{{{4}, Rational(1)}});
  if (name == "B2")
    return RingSpec(name, {{"psi_inf", 1}}, 4, {}, Table{{{4}, Rational(1)}});
  if (name == "BGm")
    return RingSpec(name, {{"q", 1}}, 4, {}, Table{{{4}, Rational(1)}});
  if (name == "B4") {
    // Generators u1, u2 (Chern classes of the tautological rank-2 bundle) and E.
    return RingSpec(name, {{"u1", 1}, {"u2", 2}, {"E", 1}}, 4, {{1, 0, 1}, {0, 1, 1}},
                    Table{{{4, 0, 0}, Rational(36)},
                          {{2, 1, 0}, Rational(15)},
                          {{0, 2, 0}, Rational(10)},
                          {{0, 0, 4}, Rational(-30)}});
  }
  if (name == "B3") {
    // Values of the pulled-back Hassett monomials are memoized per ring
    // instance (copies share them); each monomial is pulled back once.
    struct State {
      m0n::TautSpace space{7};
      m0n::Integrator integrator;
      std::mutex mutex;
      std::map<Exponents, Rational> values;
    };
    auto state = std::make_shared<State>();
    auto delegate = [state](const GradedPoly &p) {
      Rational total(0);
      for (const auto &[key, c] : p.terms()) {
        std::optional<Rational> v;
        {
          std::lock_guard lock(state->mutex);
          if (auto it = state->values.find(key.exps); it != state->values.end())
            v = it->second;
        }
        if (!v) {
          GradedPoly mono = GradedPoly::monomial(p.generators(), p.truncation(), key.exps);
          v = state->integrator.integrate(state->space, m0n::hassett_pullback(state->space, mono));
          std::lock_guard lock(state->mutex);
          state->values.emplace(key.exps, *v);
        }
        total += c * *v;
      }
      return total;
    };
    return RingSpec(name, {{m0n::kHassettPsiInf, 1}, {m0n::kHassettDelta0, 1}}, 4, {}, delegate,
                    "pullback to the 7-pointed stable space");
  }
  throw UnknownName("unknown ring '" + name + "'");
}

} // namespace orbitcell
