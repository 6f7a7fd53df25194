#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "families.hpp"
#include "rational.hpp"

namespace orbitcell {

/// Coefficients (a_{1^4}, a_{1^2 2}, a_{13}, a_{2^2}, a_4) of the orbit class in
/// the monomial basis v1^4, v1^2 v2, v1 v3, v2^2, v4.
using OrbitClassVector = std::array<Rational, 5>;

inline constexpr std::size_t kUnknowns = 5;

struct SolveResult {
  OrbitClassVector solution;
  int rank = 0;
  std::vector<Rational> residuals;
};

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnderdeterminedSystem : public SolverError {
public:
  UnderdeterminedSystem(int rank)
      : SolverError("underdetermined system: rank " + std::to_string(rank) + ", null space of dimension " +
                    std::to_string(static_cast<int>(kUnknowns) - rank)),
        rank_(rank) {}
  int rank() const { return rank_; }
  int nullity() const { return static_cast<int>(kUnknowns) - rank_; }

private:
  int rank_;
};

class InconsistentSystem : public SolverError {
public:
  InconsistentSystem(std::vector<std::size_t> rows, std::vector<Rational> residuals)
      : SolverError(describe(rows)), rows_(std::move(rows)), residuals_(std::move(residuals)) {}
  const std::vector<std::size_t> &rows() const { return rows_; }
  const std::vector<Rational> &residuals() const { return residuals_; }

private:
  static std::string describe(const std::vector<std::size_t> &rows) {
    std::string s = "inconsistent system: nonzero residual in row(s)";
    for (auto r : rows)
      s += ' ' + std::to_string(r);
    return s;
  }
  std::vector<std::size_t> rows_;
  std::vector<Rational> residuals_;
};

namespace detail {

// Integer row proportional to (vector | rhs): denominators cleared by their lcm.
inline std::vector<mpz_class> integer_row(const FamilyRelation &r) {
  mpz_class l = 1;
  for (std::size_t j = 0; j < kUnknowns; ++j)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.vector[j].denominator().get_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.rhs.denominator().get_mpz_t());
  std::vector<mpz_class> row(kUnknowns + 1);
  for (std::size_t j = 0; j < kUnknowns; ++j)
    row[j] = r.vector[j].numerator() * (l / r.vector[j].denominator());
  row[kUnknowns] = r.rhs.numerator() * (l / r.rhs.denominator());
  return row;
}

} // namespace detail

inline Rational residual(const FamilyRelation &r, const OrbitClassVector &x) { return r.vector.dot(x) - r.rhs; }

/// Exact solve of the overdetermined system sum_j vector_j * a_j = rhs by
/// fraction-free (Bareiss) elimination, pivoting on the first nonzero entry
/// of each column. Any nonzero residual is an error.
inline SolveResult solve_exact(const std::vector<FamilyRelation> &relations) {
  if (relations.empty())
    throw std::invalid_argument("solve_exact needs at least one relation");
  const std::size_t m = relations.size();
  std::vector<std::vector<mpz_class>> a;
  a.reserve(m);
  for (const auto &r : relations)
    a.push_back(detail::integer_row(r));

  mpz_class prev = 1;
  std::size_t row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < kUnknowns && row < m; ++col) {
    std::size_t p = row;
    while (p < m && a[p][col] == 0)
      ++p;
    if (p == m)
      continue;
    std::swap(a[row], a[p]);
    for (std::size_t i = row + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j <= kUnknowns; ++j) {
        mpz_class v = a[row][col] * a[i][j] - a[i][col] * a[row][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[row][col];
    pivot_cols.push_back(col);
    ++row;
  }
  const int rank = static_cast<int>(pivot_cols.size());

  // Without a unique solution there is nothing to take residuals against.
  if (rank < static_cast<int>(kUnknowns))
    throw UnderdeterminedSystem(rank);

  OrbitClassVector x;
  for (int k = rank - 1; k >= 0; --k) {
    const std::size_t col = pivot_cols[static_cast<std::size_t>(k)];
    Rational acc(a[static_cast<std::size_t>(k)][kUnknowns]);
    for (std::size_t j = col + 1; j < kUnknowns; ++j)
      acc -= Rational(a[static_cast<std::size_t>(k)][j]) * x[j];
    x[col] = acc / Rational(a[static_cast<std::size_t>(k)][col]);
  }

  SolveResult result{x, rank, {}};
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < m; ++i) {
    result.residuals.push_back(residual(relations[i], x));
    if (!result.residuals.back().is_zero())
      bad.push_back(i);
  }
  if (!bad.empty())
    throw InconsistentSystem(std::move(bad), std::move(result.residuals));
  return result;
}

} // namespace orbitcell
