#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chow_ring.hpp"
#include "graded_poly.hpp"
#include "rational.hpp"

namespace orbitcell {

class RankMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A line bundle given by its first Chern class, counted with multiplicity.
struct LineAtom {
  GradedPoly c1;
  long multiplicity = 1;
};

/// A bundle known only through its rank and total Chern class.
struct BundleAtom {
  std::string name;
  int rank = 0;
  GradedPoly total_chern;
  long multiplicity = 1;
};

/// Element of the Grothendieck group: an integer combination of atoms.
class KClass {
public:
  KClass() = default;

  static KClass line(GradedPoly c1, long multiplicity = 1) {
    KClass k;
    k.lines_.push_back({std::move(c1), multiplicity});
    return k;
  }

  static KClass trivial(const RingSpec &ring, long rank) { return line(ring.zero(), rank); }

  static KClass bundle(std::string name, int rank, GradedPoly total_chern, long multiplicity = 1) {
    if (rank < 0)
      throw std::invalid_argument("bundle rank must be nonnegative");
    if (!total_chern.constant_term().is_one())
      throw std::invalid_argument("total Chern class must have constant term 1");
    KClass k;
    k.bundles_.push_back({std::move(name), rank, std::move(total_chern), multiplicity});
    return k;
  }

  const std::vector<LineAtom> &lines() const { return lines_; }
  const std::vector<BundleAtom> &bundles() const { return bundles_; }
  bool empty() const { return lines_.empty() && bundles_.empty(); }

  long virtual_rank() const {
    long r = 0;
    for (const auto &l : lines_)
      r += l.multiplicity;
    for (const auto &b : bundles_)
      r += b.rank * b.multiplicity;
    return r;
  }

  KClass &operator+=(const KClass &o) {
    for (const auto &l : o.lines_)
      add_line(l);
    for (const auto &b : o.bundles_)
      add_bundle(b);
    return *this;
  }

  KClass &operator*=(long s) {
    for (auto &l : lines_)
      l.multiplicity *= s;
    for (auto &b : bundles_)
      b.multiplicity *= s;
    prune();
    return *this;
  }

  friend KClass operator+(KClass a, const KClass &b) { return a += b; }
  friend KClass operator*(long s, KClass a) { return a *= s; }
  friend KClass operator-(KClass a) { return a *= -1; }
  friend KClass operator-(KClass a, const KClass &b) { return a += -b; }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](long m, const std::string &atom) {
      if (first)
        os << (m < 0 ? "-" : "");
      else
        os << (m < 0 ? " - " : " + ");
      first = false;
      long a = m < 0 ? -m : m;
      if (a != 1)
        os << a;
      os << '[' << atom << ']';
    };
    for (const auto &l : lines_)
      emit(l.multiplicity, l.c1.is_zero() ? std::string("O") : "O(" + l.c1.to_string() + ")");
    for (const auto &b : bundles_)
      emit(b.multiplicity, b.name);
    if (first)
      os << '0';
    return os.str();
  }

private:
  void add_line(const LineAtom &l) {
    for (auto &mine : lines_)
      if (mine.c1 == l.c1) {
        mine.multiplicity += l.multiplicity;
        prune();
        return;
      }
    lines_.push_back(l);
    prune();
  }

  void add_bundle(const BundleAtom &b) {
    for (auto &mine : bundles_)
      if (mine.name == b.name && mine.rank == b.rank && mine.total_chern == b.total_chern) {
        mine.multiplicity += b.multiplicity;
        prune();
        return;
      }
    bundles_.push_back(b);
    prune();
  }

  void prune() {
    std::erase_if(lines_, [](const LineAtom &l) { return l.multiplicity == 0; });
    std::erase_if(bundles_, [](const BundleAtom &b) { return b.multiplicity == 0; });
  }

  std::vector<LineAtom> lines_;
  std::vector<BundleAtom> bundles_;
};

namespace detail {

inline GradedPoly signed_power(const GradedPoly &c, long m) {
  GradedPoly base = m < 0 ? c.inverse_unit() : c;
  return base.pow(static_cast<unsigned>(m < 0 ? -m : m));
}

} // namespace detail

/// Whitney product of the atoms' total Chern classes, normalized in the ring.
inline GradedPoly total_chern(const KClass &k, const RingSpec &ring) {
  GradedPoly c = ring.one();
  for (const auto &l : k.lines()) {
    if (!ring.owns(l.c1))
      throw GeneratorMismatch("line atom does not live in ring " + ring.name());
    if (l.c1.degree() > 1 || !l.c1.homogeneous(0).is_zero())
      throw std::invalid_argument("line atom class must be homogeneous of degree 1");
    c = ring.normalize(c * detail::signed_power(ring.one() + l.c1, l.multiplicity));
  }
  for (const auto &b : k.bundles()) {
    if (!ring.owns(b.total_chern))
      throw GeneratorMismatch("bundle atom " + b.name + " does not live in ring " + ring.name());
    c = ring.normalize(c * detail::signed_power(b.total_chern, b.multiplicity));
  }
  return c;
}

/// Twist of a bundle atom by a line bundle with first Chern class `l`:
/// c_k(B (x) L) = sum_i binom(r - i, k - i) c_i(B) c_1(L)^(k - i).
inline BundleAtom tensor_line(const BundleAtom &b, const GradedPoly &l, const std::string &name = "") {
  if (b.rank < 1)
    throw std::invalid_argument("twisting needs a bundle of rank at least 1");
  if (b.total_chern.degree() > b.rank)
    throw std::invalid_argument("bundle atom " + b.name + " has Chern classes above its rank");
  b.total_chern.require_compatible(l);
  std::vector<GradedPoly> ci;
  for (int i = 0; i <= b.rank; ++i)
    ci.push_back(b.total_chern.homogeneous(i));
  std::vector<GradedPoly> lpow{GradedPoly::constant(l.generators(), l.truncation(), Rational(1))};
  for (int i = 1; i <= b.rank; ++i)
    lpow.push_back(lpow.back() * l);
  GradedPoly c(l.generators(), l.truncation());
  for (int k = 0; k <= b.rank; ++k)
    for (int i = 0; i <= k; ++i)
      c += binomial(b.rank - i, k - i) * (ci[i] * lpow[k - i]);
  std::string label = name.empty() ? b.name + " (x) O(" + l.to_string() + ")" : name;
  return BundleAtom{label, b.rank, std::move(c), b.multiplicity};
}

/// Tensor product of a K-class with a line bundle of first Chern class `l`.
inline KClass tensor_line(const KClass &k, const GradedPoly &l) {
  KClass r;
  for (const auto &a : k.lines())
    r += KClass::line(a.c1 + l, a.multiplicity);
  for (const auto &b : k.bundles()) {
    BundleAtom t = tensor_line(b, l);
    r += KClass::bundle(t.name, t.rank, t.total_chern, t.multiplicity);
  }
  return r;
}

/// Dual class: c_i -> (-1)^i c_i atom by atom.
inline KClass dual(const KClass &k) {
  KClass r;
  for (const auto &l : k.lines())
    r += KClass::line(-l.c1, l.multiplicity);
  for (const auto &b : k.bundles()) {
    std::string name = b.name.size() > 1 && b.name.ends_with("^v") ? b.name.substr(0, b.name.size() - 2)
                                                                     : b.name + "^v";
    r += KClass::bundle(name, b.rank, b.total_chern.graded_sign_flip(), b.multiplicity);
  }
  return r;
}

/// Integrals of the five degree-4 monomials in the Chern classes v1..v4, in
/// the order v1^4, v1^2 v2, v1 v3, v2^2, v4.
struct ChernVector {
  std::array<Rational, 5> values;

  static constexpr std::array<const char *, 5> kMonomialNames{"v1^4", "v1^2*v2", "v1*v3", "v2^2", "v4"};

  const Rational &operator[](std::size_t i) const { return values[i]; }
  Rational &operator[](std::size_t i) { return values[i]; }

  friend bool operator==(const ChernVector &, const ChernVector &) = default;

  Rational dot(const std::array<Rational, 5> &coeffs) const {
    Rational r(0);
    for (std::size_t i = 0; i < 5; ++i)
      r += values[i] * coeffs[i];
    return r;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < 5; ++i)
      s += (i ? ", " : "") + values[i].to_string();
    return s + ")";
  }
};

/// The Chern classes v1..v4 of a rank-4 class, as homogeneous components.
inline std::array<GradedPoly, 5> chern_classes(const KClass &k, const RingSpec &ring) {
  if (k.virtual_rank() != 4)
    throw RankMismatch("expected a class of virtual rank 4, got " + std::to_string(k.virtual_rank()));
  GradedPoly c = total_chern(k, ring);
  return {c.homogeneous(0), c.homogeneous(1), c.homogeneous(2), c.homogeneous(3), c.homogeneous(4)};
}

/// The five degree-4 monomials in v1..v4, in ChernVector order.
inline std::array<GradedPoly, 5> degree4_monomials(const std::array<GradedPoly, 5> &v, const RingSpec &ring) {
  return {ring.normalize(v[1].pow(4)), ring.normalize(v[1] * v[1] * v[2]), ring.normalize(v[1] * v[3]),
          ring.normalize(v[2] * v[2]), v[4]};
}

inline ChernVector chern_vector(const KClass &k, const RingSpec &ring) {
  auto mons = degree4_monomials(chern_classes(k, ring), ring);
  ChernVector out;
  for (std::size_t i = 0; i < 5; ++i)
    out[i] = ring.integrate(mons[i]);
  return out;
}

/// Weights of the pushforward of the anticanonical bundle for a cubic form of
/// weight `form_weight` under a one-parameter subgroup acting on the variables
/// with `variable_weights`: w_i - sum_j w_j + w.
inline std::array<long, 4> pushforward_weights(const std::array<long, 4> &variable_weights, long form_weight) {
  long sum = std::accumulate(variable_weights.begin(), variable_weights.end(), 0L);
  std::array<long, 4> out{};
  for (std::size_t i = 0; i < 4; ++i)
    out[i] = variable_weights[i] - sum + form_weight;
  return out;
}

/// Sum of characters chi(w'_i) on B G_m, with q = c_1(chi(1)).
inline KClass character_sum(const std::array<long, 4> &weights, const RingSpec &bgm) {
  KClass k;
  for (long w : weights)
    k += KClass::line(bgm.gen("q") * Rational(w));
  return k;
}

/// Chern vector, in units of q^4, of an isotrivial family over B G_m.
inline ChernVector weights_to_chern_vector(const std::array<long, 4> &variable_weights, long form_weight) {
  RingSpec bgm = make_family_ring("BGm");
  return chern_vector(character_sum(pushforward_weights(variable_weights, form_weight), bgm), bgm);
}

// --- Symmetric functions -----------------------------------------------------

class NotSymmetric : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Generators x1..xr, all of degree 1.
inline GeneratorSetPtr root_generators(int r, const std::string &prefix = "x") {
  std::vector<Generator> g;
  for (int i = 1; i <= r; ++i)
    g.push_back({prefix + std::to_string(i), 1});
  return GeneratorSet::make(std::move(g));
}

/// Generators e1..er with deg e_k = k.
inline GeneratorSetPtr elementary_generators(int r, const std::string &prefix = "e") {
  std::vector<Generator> g;
  for (int i = 1; i <= r; ++i)
    g.push_back({prefix + std::to_string(i), i});
  return GeneratorSet::make(std::move(g));
}

/// Elementary symmetric polynomials e_0..e_r of the given polynomials.
inline std::vector<GradedPoly> elementary_symmetric(const std::vector<GradedPoly> &xs) {
  if (xs.empty())
    throw std::invalid_argument("need at least one variable");
  const auto &g = xs.front().generators();
  int t = xs.front().truncation();
  std::vector<GradedPoly> e{GradedPoly::constant(g, t, Rational(1))};
  for (const auto &x : xs) {
    e.push_back(GradedPoly(g, t));
    for (std::size_t k = e.size() - 1; k >= 1; --k)
      e[k] += e[k - 1] * x;
  }
  return e;
}

/// Substitutes e_k -> e_k(x_1..x_r) into a polynomial over elementary generators.
inline GradedPoly expand_in_roots(const GradedPoly &p, const GeneratorSetPtr &roots) {
  const int r = static_cast<int>(roots->size());
  if (static_cast<int>(p.generators()->size()) != r)
    throw GeneratorMismatch("elementary and root generator counts differ");
  std::vector<GradedPoly> xs;
  for (int i = 0; i < r; ++i)
    xs.push_back(GradedPoly::generator(roots, p.truncation(), static_cast<std::size_t>(i)));
  auto e = elementary_symmetric(xs);
  return p.substitute(std::vector<GradedPoly>(e.begin() + 1, e.end()), roots, p.truncation());
}

inline bool is_symmetric(const GradedPoly &p) {
  const std::size_t r = p.generators()->size();
  for (std::size_t i = 0; i + 1 < r; ++i) {
    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[i], perm[i + 1]);
    if (!(p.permuted(perm) == p))
      return false;
  }
  return true;
}

/// Writes a symmetric polynomial in roots as a polynomial in the elementary
/// symmetric functions, by repeatedly cancelling the lex-leading term.
inline GradedPoly symmetric_reduce(const GradedPoly &p, const std::string &prefix = "e") {
  const auto &roots = p.generators();
  const std::size_t r = roots->size();
  for (std::size_t i = 0; i < r; ++i)
    if ((*roots)[i].degree != 1)
      throw GeneratorMismatch("root generators must have degree 1");
  if (!is_symmetric(p))
    throw NotSymmetric("polynomial is not symmetric in its " + std::to_string(r) + " roots");

  auto egens = elementary_generators(static_cast<int>(r), prefix);
  GradedPoly result(egens, p.truncation());
  GradedPoly rest = p;
  while (!rest.is_zero()) {
    auto lead = std::max_element(rest.terms().begin(), rest.terms().end(),
                                 [](const auto &a, const auto &b) { return a.first.exps < b.first.exps; });
    const Exponents a = lead->first.exps;
    const Rational c = lead->second;
    Exponents e(r, 0);
    for (std::size_t k = 0; k < r; ++k)
      e[k] = static_cast<std::uint16_t>(a[k] - (k + 1 < r ? a[k + 1] : 0));
    GradedPoly term = GradedPoly::monomial(egens, p.truncation(), e, c);
    result += term;
    rest -= expand_in_roots(term, roots);
  }
  return result;
}

} // namespace orbitcell
