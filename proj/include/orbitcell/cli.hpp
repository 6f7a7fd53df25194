#pragma once

#include <algorithm>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apps.hpp"
#include "families.hpp"
#include "m0n.hpp"
#include "report.hpp"
#include "solver.hpp"
#include "taut_parser.hpp"

namespace orbitcell {

enum ExitCode : int { kExitOk = 0, kExitComputation = 1, kExitUsage = 2 };

namespace detail {

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline void print_family(std::ostream &out, const FamilySpec &f, bool json) {
  FamilyRelation r = relation(f);
  if (json) {
    nlohmann::ordered_json o{{"name", f.name},
                             {"label", f.label},
                             {"base", f.ring.name()},
                             {"chern_vector", chern_json(r.vector, f.vector_provenance)},
                             {"rhs", num(r.rhs, f.rhs_provenance)}};
    out << o.dump(2) << '\n';
    return;
  }
  out << f.name << " (" << f.label << ", base " << f.ring.name() << ")\n";
  if (const auto *w = std::get_if<WeightData>(&f.source)) {
    out << "form    " << w->form << "\nweights (";
    for (std::size_t i = 0; i < 4; ++i)
      out << (i ? ", " : "") << w->variable_weights[i];
    out << ")\n";
  } else {
    out << "class   " << std::get<KClass>(f.source).to_string() << '\n';
  }
  out << "vector  " << r.vector.to_string() << "  [" << f.vector_provenance << "]\n"
      << "rhs     " << r.rhs << "  [" << f.rhs_provenance << "]\n";
}

inline void print_solve(std::ostream &out) {
  auto families = family_catalog();
  std::vector<FamilyRelation> rels;
  for (const auto &f : families)
    rels.push_back(relation(f));
  SolveResult s = solve_exact(rels);
  out << "solution (a_1^4, a_1^2 2, a_13, a_2^2, a_4) = (";
  for (std::size_t i = 0; i < 5; ++i)
    out << (i ? ", " : "") << s.solution[i];
  out << ")\nrank " << s.rank << "\nresiduals\n";
  for (std::size_t i = 0; i < families.size(); ++i)
    out << "  " << families[i].name << ' ' << s.residuals[i] << '\n';
}

inline int evaluate(std::ostream &out, std::ostream &err, const std::string &name, const std::string &expect) {
  EvaluationTarget t = find_target(name);
  Rational d = evaluate_degree(t, orbit_class());
  out << t.name << ' ' << d << '\n';
  if (expect.empty())
    return kExitOk;
  Rational want;
  try {
    want = Rational::parse(expect);
  } catch (const std::exception &) {
    throw UsageError("--expect needs an integer or p/q, got '" + expect + "'");
  }
  if (d != want) {
    err << "expected " << want << ", computed " << d << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

inline void integrate_expr(std::ostream &out, int n, const std::string &src) {
  if (n < m0n::kMinPoints || n > m0n::kMaxPoints)
    throw UsageError("--n must lie in [" + std::to_string(m0n::kMinPoints) + ", " + std::to_string(m0n::kMaxPoints) +
                     "]");
  m0n::TautSpace space(n);
  GradedPoly e = parse_taut_expr(src, space);
  m0n::Integrator integ;
  out << integ.integrate(space, e) << '\n';
}

inline void print_change_of_variables(std::ostream &out) {
  ChangeOfVariables cov = change_of_variables();
  out << "v_i = c_i(V^v (x) det V)\n";
  for (std::size_t i = 0; i < 4; ++i)
    out << "  v" << i + 1 << " = " << cov.v[i] << '\n';
  out << "v1^2*v2 - v1*v3 + 9*v4 = " << cov.normalized << '\n'
      << "1080*(v1^2*v2 - v1*v3 + 9*v4) = " << cov.scaled << '\n'
      << "note: both forms are reported; the factor 1080 depends on the normalization of the moduli map\n";
}

} // namespace detail

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 on a computation error or a
/// failed expectation, 2 on a usage or parse error.
inline int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact intersection-theory engine for orbit classes of cubic surfaces", "orbitcell"};
  app.set_version_flag("--version", std::string(ORBITCELL_VERSION));
  app.require_subcommand(1);

  bool json = false, timing = false, sequential = false;
  auto *report = app.add_subcommand("report", "Run the full pipeline: families, solve, applications");
  report->add_flag("--json", json, "Emit JSON");
  report->add_flag("--timing", timing, "Include wall-clock timing (output is then not byte-stable)");
  report->add_flag("--sequential", sequential, "Compute the families one at a time");

  auto *solve = app.add_subcommand("solve", "Solve the 8x5 system for the orbit-class coefficients");

  std::string family_name;
  bool family_json = false;
  auto *family = app.add_subcommand("family", "Show one test family's relation");
  family->add_option("name", family_name, "Family name")->required();
  family->add_flag("--json", family_json, "Emit JSON");

  std::string target, expect;
  auto *eval = app.add_subcommand("evaluate", "Degree of the orbit class on a target");
  eval->add_option("target", target, "Target name")->required();
  eval->add_option("--expect", expect, "Exit 1 unless the degree equals this value");

  int n = 7;
  std::string expr;
  auto *m0n_cmd = app.add_subcommand("m0n", "Integrate a tautological expression on the n-pointed genus-0 space");
  m0n_cmd->add_option("--n", n, "Number of markings (labels 0..n-2 and inf)");
  m0n_cmd->add_option("--integrate", expr, "Expression, e.g. \"psi(inf)^4\"")->required();

  auto *cov = app.add_subcommand("change-of-variables", "Rewrite the class in the Chern classes c1..c4 of V");

  auto *list = app.add_subcommand("list", "List family and target names");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*report) {
      Report rep = build_report(!sequential);
      if (json)
        out << report_json(rep, timing).dump(2) << '\n';
      else
        print_report_text(out, rep, timing);
    } else if (*solve) {
      detail::print_solve(out);
    } else if (*family) {
      detail::print_family(out, find_family(family_name), family_json);
    } else if (*eval) {
      return detail::evaluate(out, err, target, expect);
    } else if (*m0n_cmd) {
      detail::integrate_expr(out, n, expr);
    } else if (*cov) {
      detail::print_change_of_variables(out);
    } else if (*list) {
      for (const auto &t : evaluation_targets())
        out << t.name << '\n';
    }
  } catch (const ParseError &e) {
    err << e.what() << '\n';
    if (!expr.empty()) {
      err << "  " << expr << "\n  " << std::string(std::min(e.position(), expr.size()), ' ') << "^\n";
    }
    return kExitUsage;
  } catch (const UnknownName &e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const detail::UsageError &e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

inline int run_command(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run_command(args, out, err);
}

} // namespace orbitcell
