#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace orbitcell;

TEST_CASE("orbit class") {
  OrbitClassVector a = orbit_class();
  CHECK(a == OrbitClassVector{Rational(0), Rational(1080), Rational(-1080), Rational(0), Rational(9720)});
  CHECK(a[3].is_zero());
  for (const auto &x : a)
    CHECK((x / kClassFactor).is_integer());
}

TEST_CASE("application degrees") {
  OrbitClassVector a = orbit_class();
  Rational p19 = evaluate_degree(find_target("p19-orbit-degree"), a);
  Rational p4 = evaluate_degree(find_target("p4dual-threefold-sections"), a);
  CHECK(p19 == Rational(96120));
  CHECK(p4 == Rational(42120));
  CHECK(p19 / kClassFactor == Rational(89));
  CHECK(p4 / kClassFactor == Rational(39));
  CHECK_THROWS_AS(find_target("p20"), UnknownName);
}

TEST_CASE("target vectors") {
  auto p19 = find_target("p19-orbit-degree");
  CHECK(chern_vector(p19.vclass, p19.ring).to_string() == "(256, 96, 16, 36, 1)");
  auto p4 = find_target("p4dual-threefold-sections");
  CHECK(chern_vector(p4.vclass, p4.ring).to_string() == "(81, 36, 6, 16, 1)");
}

TEST_CASE("the reconstructed threefold-section class") {
  KClass k = derive_p4dual_class();
  RingSpec ring = make_family_ring("P4dual");
  GradedPoly h = ring.gen("h");
  CHECK(k.virtual_rank() == 4);
  CHECK(k.to_string() == "5[O(-h)] - [O(-2*h)]");
  auto v = chern_classes(k, ring);
  CHECK(v[1] == Rational(-3) * h);
  CHECK(v[2] == Rational(4) * h * h);
  CHECK(v[3] == Rational(-2) * h.pow(3));
  CHECK(v[4] == h.pow(4));
  // Independent route: (1 - h)^5 / (1 - 2h).
  GradedPoly series = ring.normalize((ring.one() - h).pow(5) * (ring.one() - Rational(2) * h).inverse_unit());
  CHECK(total_chern(k, ring) == series);
}

TEST_CASE("every catalog family evaluates to its cited degree") {
  OrbitClassVector a = orbit_class();
  for (const auto &f : family_catalog()) {
    EvaluationTarget t = find_target(f.name);
    CHECK(evaluate_degree(t, a) == f.rhs_degree);
    CHECK(kClassFactor * normalized_integral(chern_vector(t.vclass, t.ring)) == f.rhs_degree);
  }
}

TEST_CASE("change of variables") {
  ChangeOfVariables cov = change_of_variables();
  CHECK(cov.v[0].to_string() == "3*c1");
  CHECK(cov.v[1].to_string() == "3*c1^2 + c2");
  CHECK(cov.v[2].to_string() == "c1^3 + 2*c1*c2 - c3");
  CHECK(cov.v[3].to_string() == "c1^2*c2 - c1*c3 + c4");
  CHECK(cov.normalized.to_string() == "24*c1^4 + 12*c1^2*c2 - 6*c1*c3 + 9*c4");
  CHECK(cov.scaled == kClassFactor * cov.normalized);
  // Re-expanding in roots recovers the root-level substitution.
  CHECK(expand_in_roots(cov.normalized, cov.normalized_in_roots.generators()) == cov.normalized_in_roots);
  CHECK(class_in_c(orbit_class()) == cov.scaled);
}

TEST_CASE("v1 and v4 against direct expansion in four roots") {
  auto roots = root_generators(4);
  std::vector<GradedPoly> x;
  for (std::size_t i = 0; i < 4; ++i)
    x.push_back(GradedPoly::generator(roots, 4, i));
  GradedPoly s = x[0] + x[1] + x[2] + x[3];
  GradedPoly v1 = Rational(4) * s - s;
  GradedPoly v4 = (s - x[0]) * (s - x[1]) * (s - x[2]) * (s - x[3]);
  ChangeOfVariables cov = change_of_variables();
  CHECK(expand_in_roots(cov.v[0], roots) == v1);
  CHECK(expand_in_roots(cov.v[3], roots) == v4);
}
