#pragma once

#include <array>
#include <string>
#include <vector>

#include "chern.hpp"
#include "chow_ring.hpp"
#include "families.hpp"
#include "solver.hpp"

namespace orbitcell {

/// The orbit class divided by its common factor: v1^2 v2 - v1 v3 + 9 v4.
inline const OrbitClassVector kNormalizedClass{Rational(0), Rational(1), Rational(-1), Rational(0), Rational(9)};
inline const Rational kClassFactor(1080);

struct EvaluationTarget {
  std::string name;
  RingSpec ring;
  KClass vclass;
  Rational expected_degree;
  std::string provenance;
};

inline std::vector<FamilyRelation> catalog_relations() {
  std::vector<FamilyRelation> out;
  for (const auto &f : family_catalog())
    out.push_back(relation(f));
  return out;
}

inline OrbitClassVector orbit_class() { return solve_exact(catalog_relations()).solution; }

/// Anticanonical pushforward for the universal hyperplane section of a cubic
/// threefold over the dual P^4. The relative anticanonical bundle is O(1, -1),
/// and pushing forward O(1) from the hyperplane gives the rank-5 trivial class
/// minus O(-h); twisting by O(-h) yields 5[O(-h)] - [O(-2h)].
inline KClass derive_p4dual_class() {
  RingSpec ring = make_family_ring("P4dual");
  GradedPoly h = ring.gen("h");
  KClass pushed = KClass::trivial(ring, 5) - KClass::line(-h);
  return tensor_line(pushed, -h);
}

inline std::vector<EvaluationTarget> evaluation_targets() {
  std::vector<EvaluationTarget> out;
  {
    RingSpec ring = make_family_ring("P19");
    KClass v = KClass::line(-ring.gen("h"), 4);
    out.push_back({"p19-orbit-degree", ring, v, Rational(96120),
                   "cited: degree of the orbit closure of a general cubic surface in P^19"});
  }
  out.push_back({"p4dual-threefold-sections", make_family_ring("P4dual"), derive_p4dual_class(), Rational(42120),
                 "cited: hyperplane sections of a general cubic threefold isomorphic to a given general cubic surface"});
  for (const auto &f : family_catalog())
    out.push_back({f.name, f.ring, family_vclass(f), f.rhs_degree, f.rhs_provenance});
  return out;
}

inline EvaluationTarget find_target(const std::string &name) {
  for (auto &t : evaluation_targets())
    if (t.name == name)
      return t;
  throw UnknownName("unknown evaluation target '" + name + "'");
}

inline Rational evaluate_degree(const EvaluationTarget &t, const OrbitClassVector &coeffs) {
  return chern_vector(t.vclass, t.ring).dot(coeffs);
}

/// Integral of v1^2 v2 - v1 v3 + 9 v4 against a relation vector.
inline Rational normalized_integral(const ChernVector &v) { return v.dot(kNormalizedClass); }

struct ChangeOfVariables {
  std::array<GradedPoly, 4> v;     // v1..v4 in terms of c1..c4
  GradedPoly normalized;           // image of v1^2 v2 - v1 v3 + 9 v4
  GradedPoly scaled;               // image of the full class, 1080 times the above
  GradedPoly normalized_in_roots;  // root-level substitution, for cross-checks
};

namespace detail {

// v_k = e_k(e1 - x_1, ..., e1 - x_4): the Chern roots of V^v (x) det V.
inline std::array<GradedPoly, 4> shifted_root_classes(const GeneratorSetPtr &roots) {
  std::vector<GradedPoly> xs;
  for (std::size_t i = 0; i < 4; ++i)
    xs.push_back(GradedPoly::generator(roots, 4, i));
  GradedPoly e1 = elementary_symmetric(xs)[1];
  std::vector<GradedPoly> shifted;
  for (const auto &x : xs)
    shifted.push_back(e1 - x);
  auto e = elementary_symmetric(shifted);
  return {e[1], e[2], e[3], e[4]};
}

inline GradedPoly class_in_roots(const std::array<GradedPoly, 4> &v, const OrbitClassVector &coeffs) {
  const std::array<GradedPoly, 5> mons{v[0].pow(4), v[0] * v[0] * v[1], v[0] * v[2], v[1] * v[1], v[3]};
  GradedPoly r(v[0].generators(), v[0].truncation());
  for (std::size_t i = 0; i < 5; ++i)
    r += coeffs[i] * mons[i];
  return r;
}

} // namespace detail

/// Degree-4 class sum a_m m(v1..v4) rewritten in the Chern classes c1..c4 of V.
inline GradedPoly class_in_c(const OrbitClassVector &coeffs) {
  auto roots = root_generators(4);
  return symmetric_reduce(detail::class_in_roots(detail::shifted_root_classes(roots), coeffs), "c");
}

inline ChangeOfVariables change_of_variables() {
  auto roots = root_generators(4);
  auto v = detail::shifted_root_classes(roots);
  GradedPoly in_roots = detail::class_in_roots(v, kNormalizedClass);
  GradedPoly normalized = symmetric_reduce(in_roots, "c");
  return {{symmetric_reduce(v[0], "c"), symmetric_reduce(v[1], "c"), symmetric_reduce(v[2], "c"),
           symmetric_reduce(v[3], "c")},
          normalized,
          kClassFactor * normalized,
          in_roots};
}

} // namespace orbitcell
