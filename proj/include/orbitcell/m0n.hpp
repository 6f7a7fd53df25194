#pragma once

// Intersection numbers of psi classes and boundary divisors on the genus-zero
// moduli spaces of stable pointed curves, plus the pullback of classes from the
// weighted (Hassett) space used by the cuspidal-cubic test family.
//
// Markings of a space with n points are the integers 0..n-1. The last marking
// n-1 is printed as "inf"; a boundary divisor is stored as the side of the node
// that does not contain it.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graded_poly.hpp"
#include "rational.hpp"

namespace orbitcell::m0n {

using Mask = std::uint32_t;

inline constexpr int kMinPoints = 3;
inline constexpr int kMaxPoints = 12;

class MalformedBoundary : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1); }
inline int popcount(Mask m) { return std::popcount(m); }
inline bool has(Mask m, int label) { return (m >> label) & 1u; }

inline void check_space(int n) {
  if (n < kMinPoints || n > kMaxPoints)
    throw std::invalid_argument("number of markings must lie in [" + std::to_string(kMinPoints) + ", " +
                                std::to_string(kMaxPoints) + "], got " + std::to_string(n));
}

inline std::string label_name(int n, int label) {
  return label == n - 1 ? std::string("inf") : std::to_string(label);
}

/// Boundary divisor delta_T in canonical form (the side without marking n-1).
class BoundarySet {
public:
  BoundarySet(int n, Mask side) : n_(n) {
    check_space(n);
    if (side & ~full_mask(n))
      throw MalformedBoundary("boundary set uses a marking outside the space");
    if (has(side, n - 1))
      side = full_mask(n) & ~side;
    int k = popcount(side);
    if (k < 2)
      throw MalformedBoundary("boundary set too small: a side of the node needs at least 2 markings");
    if (k > n - 2)
      throw MalformedBoundary("boundary set too large: the other side needs at least 2 markings");
    mask_ = side;
  }

  static BoundarySet of(int n, std::initializer_list<int> labels) {
    Mask m = 0;
    for (int l : labels) {
      if (l < 0 || l >= n)
        throw MalformedBoundary("label out of range");
      m |= Mask{1} << l;
    }
    return BoundarySet(n, m);
  }

  int points() const { return n_; }
  Mask mask() const { return mask_; }
  Mask complement() const { return full_mask(n_) & ~mask_; }

  std::vector<int> labels() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (has(mask_, i))
        out.push_back(i);
    return out;
  }

  std::string name() const {
    std::string s = "delta{";
    bool first = true;
    for (int l : labels()) {
      if (!first)
        s += ',';
      first = false;
      s += label_name(n_, l);
    }
    return s + '}';
  }

  friend bool operator==(const BoundarySet &, const BoundarySet &) = default;

private:
  int n_;
  Mask mask_ = 0;
};

/// All canonical boundary sets, ordered by size then by sorted label list.
inline std::vector<Mask> boundary_masks(int n) {
  check_space(n);
  std::vector<Mask> out;
  const Mask top = Mask{1} << (n - 1);
  for (Mask m = 0; m < top; ++m) {
    int k = popcount(m);
    if (k >= 2 && k <= n - 2)
      out.push_back(m);
  }
  auto key = [n](Mask m) {
    std::vector<int> l;
    for (int i = 0; i < n; ++i)
      if (has(m, i))
        l.push_back(i);
    return std::make_pair(l.size(), l);
  };
  std::sort(out.begin(), out.end(), [&](Mask a, Mask b) { return key(a) < key(b); });
  return out;
}

/// Generator layout for tautological expressions on the n-pointed space:
/// psi(0..n-1) first, then every boundary divisor. All have degree 1.
class TautSpace {
public:
  explicit TautSpace(int n) : n_(n) {
    check_space(n);
    std::vector<Generator> gens;
    for (int i = 0; i < n; ++i)
      gens.push_back({"psi(" + label_name(n, i) + ")", 1});
    for (Mask m : boundary_masks(n)) {
      delta_index_.emplace(m, gens.size());
      delta_masks_.push_back(m);
      gens.push_back({BoundarySet(n, m).name(), 1});
    }
    gens_ = GeneratorSet::make(std::move(gens));
  }

  int points() const { return n_; }
  int dimension() const { return n_ - 3; }
  const GeneratorSetPtr &generators() const { return gens_; }

  GradedPoly zero() const { return GradedPoly(gens_, dimension()); }
  GradedPoly one() const { return GradedPoly::constant(gens_, dimension(), Rational(1)); }

  GradedPoly psi(int label) const {
    if (label < 0 || label >= n_)
      throw std::out_of_range("marking " + std::to_string(label) + " not in space");
    return GradedPoly::generator(gens_, dimension(), static_cast<std::size_t>(label));
  }

  GradedPoly delta(const BoundarySet &t) const {
    if (t.points() != n_)
      throw MalformedBoundary("boundary set belongs to a different space");
    return GradedPoly::generator(gens_, dimension(), delta_index_.at(t.mask()));
  }

  GradedPoly delta(std::initializer_list<int> labels) const { return delta(BoundarySet::of(n_, labels)); }

  bool is_psi_slot(std::size_t slot) const { return slot < static_cast<std::size_t>(n_); }
  Mask delta_mask_of_slot(std::size_t slot) const { return delta_masks_.at(slot - n_); }

  /// Applies a relabeling of markings (perm[i] = image of marking i) to an expression.
  GradedPoly relabel(const GradedPoly &e, const std::vector<int> &perm) const {
    GradedPoly r = zero();
    for (const auto &[key, c] : e.terms()) {
      Exponents out(gens_->size(), 0);
      for (std::size_t s = 0; s < key.exps.size(); ++s) {
        if (!key.exps[s])
          continue;
        std::size_t target;
        if (is_psi_slot(s)) {
          target = static_cast<std::size_t>(perm[s]);
        } else {
          Mask m = delta_mask_of_slot(s), img = 0;
          for (int i = 0; i < n_; ++i)
            if (has(m, i))
              img |= Mask{1} << perm[i];
          target = delta_index_.at(BoundarySet(n_, img).mask());
        }
        out[target] = static_cast<std::uint16_t>(out[target] + key.exps[s]);
      }
      r.add_term(std::move(out), c);
    }
    return r;
  }

private:
  int n_;
  GeneratorSetPtr gens_;
  std::map<Mask, std::size_t> delta_index_;
  std::vector<Mask> delta_masks_;
};

namespace detail {

// Compact monomial for the recursion: sorted (atom, exponent) pairs. Atoms
// encode psi_i as i and delta_T as 64 + mask (canonical on its space).
using Atom = std::uint64_t;
inline constexpr Atom kDeltaBase = 64;
using Monomial = std::vector<std::pair<Atom, int>>;

inline Atom psi_atom(int label) { return static_cast<Atom>(label); }
inline Atom delta_atom(Mask m) { return kDeltaBase + m; }
inline bool is_delta(Atom a) { return a >= kDeltaBase; }

inline Mask canonical(int n, Mask side) {
  return has(side, n - 1) ? (full_mask(n) & ~side) : side;
}

inline void push(Monomial &m, Atom a, int e) {
  if (e <= 0)
    return;
  for (auto &[atom, exp] : m)
    if (atom == a) {
      exp += e;
      return;
    }
  m.emplace_back(a, e);
}

inline void sort_monomial(Monomial &m) { std::sort(m.begin(), m.end()); }

} // namespace detail

/// Memoizing evaluator for integrals over the n-pointed genus-zero space.
///
/// Recursion: remove one boundary factor delta_T by restricting to
/// delta_T = M(T + node) x M(T^c + node'). psi classes restrict to the factor
/// carrying their marking; compatible boundary classes restrict to boundary
/// classes of one factor; crossing ones vanish; delta_T itself restricts to
/// -psi(node) - psi(node'). Pure psi monomials use the multinomial formula.
///
/// The cache is guarded, so one instance can serve several threads.
class Integrator {
public:
  /// Integral of a TautExpr over the space it lives on. Terms not of top
  /// degree contribute zero.
  Rational integrate(const TautSpace &space, const GradedPoly &e) const {
    if (!(*e.generators() == *space.generators()))
      throw GeneratorMismatch("expression does not live on the " + std::to_string(space.points()) +
                              "-pointed space");
    Rational total(0);
    for (const auto &[key, c] : e.terms()) {
      if (key.degree != space.dimension())
        continue;
      detail::Monomial m;
      for (std::size_t s = 0; s < key.exps.size(); ++s) {
        if (!key.exps[s])
          continue;
        detail::Atom a = space.is_psi_slot(s) ? detail::psi_atom(static_cast<int>(s))
                                              : detail::delta_atom(space.delta_mask_of_slot(s));
        m.emplace_back(a, key.exps[s]);
      }
      detail::sort_monomial(m);
      total += c * integrate_monomial(space.points(), m);
    }
    return total;
  }

  /// Integral of a compact monomial on the space with markings 0..n-1.
  Rational integrate_monomial(int n, const detail::Monomial &mono) const {
    int deg = 0;
    for (const auto &[a, e] : mono)
      deg += e;
    if (deg != n - 3)
      return Rational(0);
    if (n == 3)
      return Rational(1);

    auto key = std::make_pair(n, mono);
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end())
        return it->second;
    }
    Rational value = compute(n, mono);
    std::lock_guard lock(mutex_);
    cache_.emplace(std::move(key), value);
    return value;
  }

  std::size_t cache_size() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
  }

private:
  Rational compute(int n, const detail::Monomial &mono) const {
    using namespace detail;
    auto split = std::find_if(mono.begin(), mono.end(), [](const auto &t) { return is_delta(t.first); });
    if (split == mono.end()) {
      Rational r = factorial(n - 3);
      for (const auto &[a, e] : mono)
        r /= factorial(e);
      return r;
    }

    const Mask all = full_mask(n);
    const Mask t = static_cast<Mask>(split->first - kDeltaBase);
    const Mask tc = all & ~t;
    const int self_power = split->second - 1;

    // Factor A carries T plus a node marking placed last; factor B carries
    // T^c plus its node marking, also last. Both are relabeled order-preservingly.
    const int na = popcount(t) + 1, nb = popcount(tc) + 1;
    std::vector<int> to_a(n, -1), to_b(n, -1);
    for (int i = 0, ia = 0, ib = 0; i < n; ++i) {
      if (has(t, i))
        to_a[i] = ia++;
      else
        to_b[i] = ib++;
    }
    auto map_mask = [n](Mask m, const std::vector<int> &to) {
      Mask r = 0;
      for (int i = 0; i < n; ++i)
        if (has(m, i))
          r |= Mask{1} << to[i];
      return r;
    };

    Monomial left, right;
    for (const auto &[a, e] : mono) {
      if (a == split->first)
        continue;
      if (!is_delta(a)) {
        int label = static_cast<int>(a);
        if (has(t, label))
          push(left, psi_atom(to_a[label]), e);
        else
          push(right, psi_atom(to_b[label]), e);
        continue;
      }
      const Mask s = static_cast<Mask>(a - kDeltaBase);
      if ((s & t) == s) // nested in T (proper, since s != t)
        push(left, delta_atom(canonical(na, map_mask(s, to_a))), e);
      else if ((s & t) == 0) // nested in T^c
        push(right, delta_atom(canonical(nb, map_mask(s, to_b))), e);
      else if ((s & t) == t) // contains T: seen from B it is the split S^c | rest
        push(right, delta_atom(canonical(nb, map_mask(all & ~s, to_b))), e);
      else
        return Rational(0); // crossing divisors are disjoint
    }

    const int dim_a = na - 3, dim_b = nb - 3;
    int deg_left = 0, deg_right = 0;
    for (const auto &[a, e] : left)
      deg_left += e;
    for (const auto &[a, e] : right)
      deg_right += e;
    // (-psi_node_a - psi_node_b)^self_power: only one split of degrees fits.
    const int j = dim_a - deg_left;
    if (j < 0 || j > self_power || deg_right + (self_power - j) != dim_b)
      return Rational(0);

    Rational coeff = binomial(self_power, j);
    if (self_power % 2)
      coeff = -coeff;
    push(left, psi_atom(na - 1), j);
    push(right, psi_atom(nb - 1), self_power - j);
    sort_monomial(left);
    sort_monomial(right);
    Rational a_val = integrate_monomial(na, left);
    if (a_val.is_zero())
      return a_val;
    return coeff * a_val * integrate_monomial(nb, right);
  }

  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, detail::Monomial>, Rational> cache_;
};

/// Keel's expression of psi_i as a sum of boundary divisors:
/// psi_i = sum over T with i in T and j, k not in T of delta_T.
inline GradedPoly keel_psi_expansion(const TautSpace &space, int i, int j, int k) {
  const int n = space.points();
  for (int l : {i, j, k})
    if (l < 0 || l >= n)
      throw std::out_of_range("marking out of range");
  if (i == j || j == k || i == k)
    throw std::invalid_argument("keel expansion needs three distinct markings");
  GradedPoly r = space.zero();
  const Mask all = full_mask(n);
  for (Mask side = 0; side <= all; ++side) {
    if (!has(side, i) || has(side, j) || has(side, k))
      continue;
    int sz = popcount(side);
    if (sz < 2 || sz > n - 2)
      continue;
    r += space.delta(BoundarySet(n, side));
  }
  return r;
}

// --- Hassett reduction -------------------------------------------------------

/// Weight of the form constant + eps_coefficient * epsilon, for 0 < epsilon << 1.
struct EpsWeight {
  Rational constant;
  Rational eps;

  friend EpsWeight operator+(const EpsWeight &a, const EpsWeight &b) {
    return {a.constant + b.constant, a.eps + b.eps};
  }
  /// Lexicographic comparison is exact for infinitesimal epsilon.
  friend bool operator<=(const EpsWeight &a, const EpsWeight &b) {
    if (a.constant != b.constant)
      return a.constant < b.constant;
    return a.eps <= b.eps;
  }
};

/// Boundary divisors of the stable space that the reduction map contracts and
/// that contain `label`: sides T with label in T and total weight at most 1.
/// Returned in canonical form.
inline std::vector<BoundarySet> hassett_contracted_sets(const std::vector<EpsWeight> &weights, int label) {
  const int n = static_cast<int>(weights.size());
  check_space(n);
  std::vector<BoundarySet> out;
  const EpsWeight one{Rational(1), Rational(0)};
  for (Mask side = 0; side <= full_mask(n); ++side) {
    if (!has(side, label))
      continue;
    int sz = popcount(side);
    if (sz < 2 || sz > n - 2)
      continue;
    EpsWeight total{Rational(0), Rational(0)};
    for (int i = 0; i < n; ++i)
      if (has(side, i))
        total = total + weights[i];
    if (total <= one)
      out.emplace_back(n, side);
  }
  return out;
}

/// The cuspidal-cubic family's weights on markings (0, 1..5, inf):
/// (1 - eps, eps, ..., eps, 1 - 3 eps).
inline std::vector<EpsWeight> b3_weights() {
  std::vector<EpsWeight> w;
  w.push_back({Rational(1), Rational(-1)});
  for (int i = 1; i <= 5; ++i)
    w.push_back({Rational(0), Rational(1)});
  w.push_back({Rational(1), Rational(-3)});
  return w;
}

inline constexpr const char *kHassettPsi0 = "psihat_0";
inline constexpr const char *kHassettPsiInf = "psihat_inf";
inline constexpr const char *kHassettDelta0 = "Delta_0";

/// Pullback of the psi class at `label` along the reduction map:
/// psi_label minus the contracted boundary divisors containing the label.
inline GradedPoly hassett_psi_pullback(const TautSpace &space, const std::vector<EpsWeight> &weights,
                                       int label) {
  GradedPoly r = space.psi(label);
  for (const auto &t : hassett_contracted_sets(weights, label))
    r -= space.delta(t);
  return r;
}

/// Pullback of the locus where marking 0 meets one of markings 1..5.
inline GradedPoly hassett_delta0_pullback(const TautSpace &space) {
  GradedPoly r = space.zero();
  for (int i = 1; i <= 5; ++i)
    r += space.delta({0, i});
  return r;
}

/// Ring-homomorphic pullback of an expression in psihat_0, psihat_inf and
/// Delta_0 to the 7-pointed stable space.
inline GradedPoly hassett_pullback(const TautSpace &space, const GradedPoly &e) {
  if (space.points() != 7)
    throw std::invalid_argument("the Hassett pullback targets the 7-pointed space");
  const auto weights = b3_weights();
  std::vector<GradedPoly> images;
  const auto &gens = *e.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string &name = gens[i].name;
    if (gens[i].degree != 1)
      throw GeneratorMismatch("Hassett generator '" + name + "' must have degree 1");
    if (name == kHassettPsi0)
      images.push_back(hassett_psi_pullback(space, weights, 0));
    else if (name == kHassettPsiInf)
      images.push_back(hassett_psi_pullback(space, weights, 6));
    else if (name == kHassettDelta0)
      images.push_back(hassett_delta0_pullback(space));
    else
      throw GeneratorMismatch("unknown Hassett generator '" + name + "'");
  }
  return e.substitute(images, space.generators(), space.dimension());
}

} // namespace orbitcell::m0n
