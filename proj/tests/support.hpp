#pragma once

// Shared helpers for the unit tests and the acceptance runner: independent
// oracles and seeded random generators.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "orbitcell.hpp"

namespace testsupport {

using orbitcell::Exponents;
using orbitcell::GradedPoly;
using orbitcell::Rational;

inline constexpr std::uint64_t kSeed = 20240611;

/// Pure-psi integrals on the n-pointed genus-0 space from the string equation
/// alone: int psi^a = sum over j of int over one marking fewer with a_j lowered,
/// whenever some a_i = 0 (which is forced by sum a = n - 3 < n). Base: n = 3.
inline Rational string_equation_psi(std::vector<int> a) {
  const int n = static_cast<int>(a.size());
  int sum = 0;
  for (int x : a)
    sum += x;
  if (n < 3 || sum != n - 3)
    return Rational(0);
  if (n == 3)
    return Rational(1);
  std::size_t zero = 0;
  while (a[zero] != 0)
    ++zero;
  a.erase(a.begin() + static_cast<long>(zero));
  Rational total(0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0)
      continue;
    --a[j];
    total += string_equation_psi(a);
    ++a[j];
  }
  return total;
}

/// All exponent vectors of length n summing to d.
inline void compositions(int n, int d, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
  if (static_cast<int>(cur.size()) == n - 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= d; ++k) {
    cur.push_back(k);
    compositions(n, d - k, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> compositions(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (n > 0)
    compositions(n, d, cur, out);
  return out;
}

/// Random monomial of the given degree in the generators of a tautological space.
inline GradedPoly random_taut_monomial(const orbitcell::m0n::TautSpace &space, int degree, std::mt19937_64 &rng) {
  std::uniform_int_distribution<std::size_t> pick(0, space.generators()->size() - 1);
  GradedPoly m = space.one();
  for (int i = 0; i < degree; ++i)
    m = m * GradedPoly::generator(space.generators(), space.dimension(), pick(rng));
  return m;
}

inline Rational random_rational(std::mt19937_64 &rng, int bound = 9) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
  return Rational(num(rng), den(rng));
}

/// Random polynomial over the given generators with every term below the truncation.
inline GradedPoly random_poly(const orbitcell::GeneratorSetPtr &gens, int truncation, std::mt19937_64 &rng,
                              int terms = 6, bool unit = false) {
  GradedPoly p(gens, truncation);
  std::uniform_int_distribution<int> expo(0, truncation);
  for (int t = 0; t < terms; ++t) {
    Exponents e(gens->size(), 0);
    for (auto &x : e)
      x = static_cast<std::uint16_t>(expo(rng) / static_cast<int>(gens->size()));
    if (p.weighted_degree(e) <= truncation)
      p.add_term(e, random_rational(rng));
  }
  if (unit) {
    p -= GradedPoly::constant(gens, truncation, p.constant_term());
    p += GradedPoly::constant(gens, truncation, Rational(1));
  }
  return p;
}

/// Every boundary set containing marking i and not j, k, written on the side
/// without the last marking: the Keel expansion of psi_i, rebuilt from masks.
inline GradedPoly keel_oracle(const orbitcell::m0n::TautSpace &space, int i, int j, int k) {
  using namespace orbitcell::m0n;
  const int n = space.points();
  GradedPoly r = space.zero();
  for (Mask side = 0; side <= full_mask(n); ++side) {
    if (!has(side, i) || has(side, j) || has(side, k))
      continue;
    int sz = popcount(side);
    if (sz < 2 || sz > n - 2)
      continue;
    r += space.delta(BoundarySet(n, side));
  }
  return r;
}

} // namespace testsupport
