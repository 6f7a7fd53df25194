#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chern.hpp"
#include "chow_ring.hpp"
#include "rational.hpp"

namespace orbitcell {

/// The one-parameter subgroup does not stabilize the cubic surface.
class WeightInvarianceError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

using CubicMonomial = std::array<int, 4>;

/// Isotrivial family data: the G_m weights on x0..x3 and the monomials of the
/// stabilized cubic form.
struct WeightData {
  std::array<long, 4> variable_weights;
  std::vector<CubicMonomial> form_monomials;
  std::string form; // human-readable equation
};

struct FamilySpec {
  std::string name;     // CLI name, e.g. "b1-conic"
  std::string label;    // short label, e.g. "B1"
  RingSpec ring;
  std::variant<KClass, WeightData> source;
  Rational rhs_degree;
  std::string rhs_provenance;
  std::string vector_provenance;

  bool isotrivial() const { return std::holds_alternative<WeightData>(source); }
};

struct FamilyRelation {
  ChernVector vector;
  Rational rhs;
};

/// Common weight of the form's monomials; throws if they disagree.
inline long check_weight_invariance(const std::array<long, 4> &variable_weights,
                                    const std::vector<CubicMonomial> &form_monomials) {
  if (form_monomials.empty())
    throw std::invalid_argument("cubic form needs at least one monomial");
  std::optional<long> weight;
  for (const auto &m : form_monomials) {
    int total = 0;
    long w = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (m[i] < 0)
        throw std::invalid_argument("negative exponent in cubic monomial");
      total += m[i];
      w += m[i] * variable_weights[i];
    }
    if (total != 3)
      throw std::invalid_argument("form monomial is not cubic");
    if (weight && *weight != w)
      throw WeightInvarianceError("monomials of the form have weights " + std::to_string(*weight) + " and " +
                                  std::to_string(w) + "; the subgroup does not stabilize the surface");
    weight = w;
  }
  return *weight;
}

/// The K-class of the anticanonical pushforward of a family; for isotrivial
/// families, the sum of characters on B G_m.
inline KClass family_vclass(const FamilySpec &f) {
  if (const auto *k = std::get_if<KClass>(&f.source))
    return *k;
  const auto &w = std::get<WeightData>(f.source);
  long form_weight = check_weight_invariance(w.variable_weights, w.form_monomials);
  return character_sum(pushforward_weights(w.variable_weights, form_weight), f.ring);
}

inline FamilyRelation relation(const FamilySpec &f) {
  if (const auto *k = std::get_if<KClass>(&f.source)) {
    if (k->virtual_rank() != 4)
      throw RankMismatch("family " + f.name + " has virtual rank " + std::to_string(k->virtual_rank()));
    return {chern_vector(*k, f.ring), f.rhs_degree};
  }
  const auto &w = std::get<WeightData>(f.source);
  long form_weight = check_weight_invariance(w.variable_weights, w.form_monomials);
  return {weights_to_chern_vector(w.variable_weights, form_weight), f.rhs_degree};
}

namespace detail {

inline const Rational kMarkedCoverDegree = Rational(72) * factorial(6); // marked cubic surfaces -> moduli

inline FamilySpec b1_family() {
  RingSpec ring = make_family_ring("B1");
  // Extension of O(-1)^2 by O^2 over P^4.
  KClass v = KClass::trivial(ring, 2) + KClass::line(-ring.gen("h"), 2);
  return {"b1-conic", "B1", ring, v, Rational(4320),
          "cited: degree of the moduli map from the conic-points family (4320 = 72*6!/5!*10)",
          "computed: Whitney sum of O^2 and O(-1)^2 on P^4"};
}

inline FamilySpec b2_family() {
  RingSpec ring = make_family_ring("B2");
  GradedPoly l = ring.gen("psi_inf");
  KClass v = KClass::line(l * Rational(-3)) + KClass::line(l) + KClass::line(-l) + KClass::line(l * Rational(-2));
  return {"b2-m07", "B2", ring, v, Rational(2) * kMarkedCoverDegree,
          "cited: degree 2*72*6! of the moduli map from the 7-pointed stable space",
          "computed: L^-3 + L + L^-1 + L^-2 with c1(L) = psi_inf"};
}

inline FamilySpec b3_family() {
  RingSpec ring = make_family_ring("B3");
  GradedPoly l = ring.gen(m0n::kHassettPsiInf);
  GradedPoly d = ring.gen(m0n::kHassettDelta0);
  KClass v = KClass::line(-l) - KClass::line(l * Rational(4));
  for (int a = 2; a <= 5; ++a)
    v += KClass::line(l * Rational(a) - d);
  return {"b3-hassett", "B3", ring, v, Rational(20) * kMarkedCoverDegree,
          "cited: 20 cuspidal cubics through 5 points flexed at a 6th, times 72*6!",
          "computed: L^-1 - L^4 + sum of L^a(-Delta_0) for a = 2..5, pulled back to the 7-pointed stable space"};
}

inline FamilySpec b4_family() {
  RingSpec ring = make_family_ring("B4");
  GradedPoly e = ring.gen("E");
  BundleAtom u{"U", 2, ring.one() + ring.gen("u1") + ring.gen("u2"), 1};
  BundleAtom twisted = tensor_line(u, -e, "U(x)O(-E)");
  KClass v = KClass::line(e) + KClass::trivial(ring, 3) + KClass::line(-e, 2) -
             KClass::bundle(twisted.name, twisted.rank, twisted.total_chern);
  return {"b4-hilb2", "B4", ring, v, Rational(36) * factorial(6),
          "cited: degree 36*6! of the moduli map from the blown-up Hilbert square",
          "computed: O(E) + O^3 + O(-E)^2 - U(x)O(-E) with u_i*E = 0"};
}

inline FamilySpec iso_family(std::string name, std::string label, WeightData w) {
  return {std::move(name), std::move(label), make_family_ring("BGm"), std::move(w), Rational(0),
          "cited: the surface is not in the generic orbit closure, so the class pulls back to 0",
          "computed: characters of the anticanonical pushforward on B G_m"};
}

} // namespace detail

/// The eight test families in relation order.
inline std::vector<FamilySpec> family_catalog() {
  using detail::iso_family;
  std::vector<FamilySpec> out;
  out.push_back(detail::b1_family());
  out.push_back(detail::b2_family());
  out.push_back(detail::b3_family());
  out.push_back(detail::b4_family());
  out.push_back(iso_family("iso-3a2", "3A2", {{1, 1, 0, -2}, {{1, 1, 0, 1}, {0, 0, 3, 0}}, "x0*x1*x3 = x2^3"}));
  out.push_back(iso_family("iso-a3-2a1", "A3+2A1",
                           {{-3, 1, 5, -3}, {{1, 0, 1, 1}, {0, 2, 0, 1}, {1, 2, 0, 0}},
                            "x3*(x0*x2 - x1^2) = x0*x1^2"}));
  out.push_back(iso_family("iso-a4-a1", "A4+A1",
                           {{1, -1, -3, 3}, {{1, 0, 1, 1}, {0, 2, 0, 1}, {2, 1, 0, 0}},
                            "x3*(x0*x2 - x1^2) = x0^2*x1"}));
  out.push_back(iso_family("iso-d4", "D4",
                           {{5, 1, 1, -7}, {{2, 0, 0, 1}, {0, 3, 0, 0}, {0, 0, 3, 0}}, "x3*x0^2 = x1^3 + x2^3"}));
  return out;
}

inline FamilySpec find_family(const std::string &name) {
  for (auto &f : family_catalog())
    if (f.name == name)
      return f;
  throw UnknownName("unknown family '" + name + "'");
}

} // namespace orbitcell
