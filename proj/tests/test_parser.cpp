#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace orbitcell;
using namespace orbitcell::m0n;

TEST_CASE("parsing atoms and products") {
  TautSpace s(7);
  CHECK(parse_taut_expr("psi(0)^2 * psi(inf)^2", s) == s.psi(0).pow(2) * s.psi(6).pow(2));
  CHECK(parse_taut_expr("delta{1,2} * psi(inf)^3", s) == s.delta({1, 2}) * s.psi(6).pow(3));
  CHECK(parse_taut_expr("delta{inf, 3}", s) == s.delta({0, 1, 2, 4, 5}));
  CHECK(parse_taut_expr("delta{inf,3}", s).to_string() == "delta{0,1,2,4,5}");
  CHECK(parse_taut_expr("3/2*psi(1) - 2", s) == Rational(3, 2) * s.psi(1) - Rational(2) * s.one());
  CHECK(parse_taut_expr("-psi(1)^2", s) == -(s.psi(1) * s.psi(1)));
  CHECK(parse_taut_expr("(psi(1) + psi(2))^2", s) == (s.psi(1) + s.psi(2)).pow(2));
  CHECK(parse_taut_expr("2 - 3 - 4", s) == Rational(-5) * s.one());
  CHECK(parse_taut_expr("psi(0)^0", s) == s.one());
}

TEST_CASE("parse errors carry positions") {
  TautSpace s(7);
  auto error_at = [&](const char *src) -> std::size_t {
    try {
      parse_taut_expr(src, s);
    } catch (const ParseError &e) {
      return e.position();
    }
    return std::string::npos;
  };
  CHECK(error_at("delta{0}") == 0);
  CHECK(error_at("psi(6)") == 4);
  CHECK(error_at("psi(0) +") == 8);
  CHECK(error_at("psi(0) psi(1)") == 7);
  CHECK(error_at("delta{0,0}") == 8);
  CHECK(error_at("kappa(1)") == 0);
  CHECK(error_at("psi(1") == 5);
  CHECK(error_at("1/0") == 0);
  try {
    parse_taut_expr("delta{0}", s);
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("too small") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_taut_expr("delta{0,1,2,3,4,5}", s), ParseError);
}

TEST_CASE("print then parse round trips") {
  std::mt19937_64 rng(testsupport::kSeed);
  for (int n : {5, 6, 7}) {
    TautSpace s(n);
    for (int trial = 0; trial < 40; ++trial) {
      GradedPoly e = s.zero();
      for (int t = 0; t < 3; ++t)
        e += testsupport::random_rational(rng) *
             testsupport::random_taut_monomial(s, 1 + static_cast<int>(rng() % (n - 3)), rng);
      GradedPoly back = parse_taut_expr(e.to_string(), s);
      CHECK(back == e);
      CHECK(back.to_string() == e.to_string());
    }
  }
}
