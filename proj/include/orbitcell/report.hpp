#pragma once

#include <chrono>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "apps.hpp"
#include "families.hpp"
#include "solver.hpp"

#ifndef ORBITCELL_VERSION
#define ORBITCELL_VERSION "unknown"
#endif

namespace orbitcell {

inline constexpr const char *kComputed = "computed";

struct FamilyBlock {
  FamilySpec spec;
  FamilyRelation rel;
  Rational residual;
  Rational normalized; // integral of v1^2 v2 - v1 v3 + 9 v4
};

struct TargetBlock {
  std::string name;
  Rational degree;
  Rational expected;
  std::string provenance;
};

struct Report {
  std::vector<FamilyBlock> families;
  SolveResult solve;
  std::vector<TargetBlock> targets;
  ChangeOfVariables cov;
  std::optional<double> families_ms, total_ms;
};

inline FamilyBlock family_block(const FamilySpec &f) {
  FamilyRelation r = relation(f);
  return {f, r, Rational(0), normalized_integral(r.vector)};
}

/// Runs the full pipeline. Family relations are computed concurrently; the
/// result is assembled in catalog order.
inline Report build_report(bool concurrent = true) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  std::vector<FamilyBlock> blocks;
  auto catalog = family_catalog();
  if (concurrent) {
    std::vector<std::future<FamilyBlock>> jobs;
    for (const auto &f : catalog)
      jobs.push_back(std::async(std::launch::async, family_block, f));
    for (auto &j : jobs)
      blocks.push_back(j.get());
  } else {
    for (const auto &f : catalog)
      blocks.push_back(family_block(f));
  }
  auto t1 = clock::now();

  std::vector<FamilyRelation> rels;
  for (const auto &b : blocks)
    rels.push_back(b.rel);
  SolveResult solve = solve_exact(rels);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    blocks[i].residual = solve.residuals[i];

  std::vector<TargetBlock> targets;
  for (const auto &name : {"p19-orbit-degree", "p4dual-threefold-sections"}) {
    EvaluationTarget t = find_target(name);
    targets.push_back({t.name, evaluate_degree(t, solve.solution), t.expected_degree, t.provenance});
  }
  ChangeOfVariables cov = change_of_variables();
  auto t2 = clock::now();
  return Report{std::move(blocks), std::move(solve), std::move(targets), std::move(cov),
                std::chrono::duration<double, std::milli>(t1 - t0).count(),
                std::chrono::duration<double, std::milli>(t2 - t0).count()};
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson num(const Rational &r, const std::string &provenance) {
  return ojson{{"value", r.to_fraction_string()}, {"provenance", provenance}};
}

inline ojson chern_json(const ChernVector &v, const std::string &provenance) {
  ojson o = ojson::object();
  for (std::size_t i = 0; i < 5; ++i)
    o[ChernVector::kMonomialNames[i]] = num(v[i], provenance);
  return o;
}

inline const std::array<const char *, 5> kCoefficientNames{"a_1^4", "a_1^2 2", "a_13", "a_2^2", "a_4"};

} // namespace detail

/// JSON form of a report. Timing is included only on request so the default
/// output is byte-stable.
inline nlohmann::ordered_json report_json(const Report &rep, bool timing = false) {
  using detail::num;
  using detail::ojson;
  ojson fams = ojson::array();
  for (const auto &b : rep.families) {
    ojson f{{"name", b.spec.name}, {"label", b.spec.label}, {"base", b.spec.ring.name()}};
    if (const auto *w = std::get_if<WeightData>(&b.spec.source)) {
      f["form"] = w->form;
      ojson ws = ojson::array();
      for (long x : w->variable_weights)
        ws.push_back(num(Rational(x), "cited: one-parameter subgroup weights"));
      f["variable_weights"] = ws;
    } else {
      f["vclass"] = std::get<KClass>(b.spec.source).to_string();
    }
    f["chern_vector"] = detail::chern_json(b.rel.vector, b.spec.vector_provenance);
    f["rhs"] = num(b.rel.rhs, b.spec.rhs_provenance);
    f["residual"] = num(b.residual, kComputed);
    f["normalized_integral"] = num(b.normalized, "computed: integral of v1^2*v2 - v1*v3 + 9*v4");
    fams.push_back(f);
  }

  ojson coeffs = ojson::object();
  for (std::size_t i = 0; i < 5; ++i)
    coeffs[detail::kCoefficientNames[i]] = num(rep.solve.solution[i], "computed: exact elimination");
  ojson residuals = ojson::array();
  for (const auto &r : rep.solve.residuals)
    residuals.push_back(num(r, kComputed));
  ojson solution{{"coefficients", coeffs},
                 {"rank", num(Rational(rep.solve.rank), kComputed)},
                 {"residuals", residuals},
                 {"normalized", "1080*(v1^2*v2 - v1*v3 + 9*v4)"}};

  ojson targets = ojson::array();
  for (const auto &t : rep.targets) {
    targets.push_back({{"name", t.name},
                       {"degree", num(t.degree, kComputed)},
                       {"expected", num(t.expected, t.provenance)},
                       {"matches", t.degree == t.expected},
                       {"quotient_by_1080", num(t.degree / kClassFactor, "computed: divisibility witness")},
                       {"divisible_by_1080", (t.degree / kClassFactor).is_integer()}});
  }
  const auto &cov = rep.cov;
  ojson cv{{"v1", cov.v[0].to_string()},
           {"v2", cov.v[1].to_string()},
           {"v3", cov.v[2].to_string()},
           {"v4", cov.v[3].to_string()},
           {"normalized_class", cov.normalized.to_string()},
           {"full_class", cov.scaled.to_string()},
           {"note", "v_i = c_i(V^v (x) det V); the normalized form omits the factor 1080, the full form keeps it; "
                    "which one is the intended class depends on the normalization of the moduli map"}};
  ojson apps{{"targets", targets}, {"change_of_variables", cv}};

  ojson meta{{"engine", "orbitcell"}, {"version", ORBITCELL_VERSION}, {"rational_format", "p/q"}};
  if (timing && rep.families_ms && rep.total_ms)
    meta["timing"] = {{"families_ms", *rep.families_ms}, {"total_ms", *rep.total_ms}};
  else
    meta["timing"] = nullptr;

  return ojson{{"families", fams}, {"solution", solution}, {"applications", apps}, {"meta", meta}};
}

inline void print_report_text(std::ostream &out, const Report &rep, bool timing = false) {
  out << "families\n";
  for (const auto &b : rep.families) {
    out << "  " << b.spec.name << " (" << b.spec.label << ", base " << b.spec.ring.name() << ")\n"
        << "    vector   " << b.rel.vector.to_string() << "  [" << b.spec.vector_provenance << "]\n"
        << "    rhs      " << b.rel.rhs << "  [" << b.spec.rhs_provenance << "]\n"
        << "    residual " << b.residual << "\n"
        << "    int(v1^2*v2 - v1*v3 + 9*v4) = " << b.normalized << "\n";
  }
  out << "solution (a_1^4, a_1^2 2, a_13, a_2^2, a_4) = (";
  for (std::size_t i = 0; i < 5; ++i)
    out << (i ? ", " : "") << rep.solve.solution[i];
  out << ")  rank " << rep.solve.rank << "\n";
  out << "applications\n";
  for (const auto &t : rep.targets)
    out << "  " << t.name << ": " << t.degree << " = 1080 * " << t.degree / kClassFactor
        << (t.degree == t.expected ? "  (matches " : "  (MISMATCH, expected ") << t.expected << ")\n";
  out << "change of variables, v_i = c_i(V^v (x) det V)\n"
      << "  normalized: v1^2*v2 - v1*v3 + 9*v4 = " << rep.cov.normalized << "\n"
      << "  full class: 1080*(v1^2*v2 - v1*v3 + 9*v4) = " << rep.cov.scaled << "\n";
  if (timing && rep.total_ms)
    out << "time " << *rep.total_ms << " ms (families " << *rep.families_ms << " ms)\n";
}

} // namespace orbitcell
