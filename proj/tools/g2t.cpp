// g2t: torsion reports, coflow runs and catalog export from the command line.
//
//   g2t check --algebra su2su2_r --phi phi
//   g2t flow --algebra su2_r4 --psi psi --span coflow --t-end 1 --dt 1e-3 --out flow.csv
//   g2t catalog list
//   g2t catalog export 'aw(2,1)' --out aw21.json

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "g2t/catalog.hpp"
#include "g2t/coflow.hpp"
#include "g2t/curvature.hpp"
#include "g2t/errors.hpp"
#include "g2t/exterior.hpp"
#include "g2t/g2.hpp"
#include "g2t/io.hpp"
#include "g2t/metric.hpp"

using namespace g2t;

namespace {

enum Exit { kOk = 0, kOther = 1, kParse = 2, kNotDefinite = 3, kResidual = 4, kSpan = 5 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownName:
    case ErrorKind::NotLieAlgebra:
    case ErrorKind::InvalidParameters:
      return kParse;
    case ErrorKind::NotDefinite:
    case ErrorKind::NotStable:
      return kNotDefinite;
    case ErrorKind::SpanNotClosed:
      return kSpan;
    default:
      return kOther;
  }
}

bool is_catalog_name(const std::string& s) {
  if (std::filesystem::exists(s)) return false;
  try {
    builtin(s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

AlgebraDocument load_algebra(const std::string& arg) {
  if (is_catalog_name(arg)) return document_of(builtin(arg));
  if (!std::filesystem::exists(arg)) throw Error(ErrorKind::UnknownName, "no catalog entry or file named '" + arg + "'");
  return load_algebra_file(arg);
}

KForm load_named_form(const AlgebraDocument& doc, const std::string& arg, int degree) {
  KForm f = [&] {
    if (auto it = doc.forms.find(arg); it != doc.forms.end()) return it->second;
    if (!std::filesystem::exists(arg)) throw Error(ErrorKind::UnknownName, "no form or file named '" + arg + "'");
    return load_form_file(doc.alg.dim(), arg);
  }();
  if (f.degree() != degree) throw Error(ErrorKind::ParseError, "'" + arg + "' is not a " + std::to_string(degree) + "-form");
  return f;
}

// Tolerance for the yes/no flags, relative to the size of dphi and dpsi.
double relative_tolerance(std::optional<double> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("G2T_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
    throw Error(ErrorKind::ParseError, std::string("G2T_TOL is not a positive number: ") + env);
  }
  return 1e-9;
}

std::string show(KForm f, double scale = 1.0) {
  f.prune(1e-11 * std::max(1.0, scale));
  return format_form(f, 10);
}

const char* yes(bool b) { return b ? "true" : "false"; }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", std::abs(x) < 1e-13 ? 0.0 : x);
  return buf;
}

int cmd_check(const std::string& algebra, const std::string& phi_arg, std::optional<double> tol_flag) {
  const AlgebraDocument doc = load_algebra(algebra);
  const KForm phi = load_named_form(doc, phi_arg, 3);
  const double rel = relative_tolerance(tol_flag);

  const G2Structure s = G2Structure::make(doc.alg, phi);
  const G2Torsion t = torsion(s);
  const double tol = rel * (norm(s.metric, t.dphi) + norm(s.metric, t.dpsi) + 1.0);
  const G2Classification c = classify(s, t, tol);

  std::cout << "algebra: " << (doc.alg.name.empty() ? algebra : doc.alg.name) << " (dim " << doc.alg.dim() << ")\n";
  std::cout << "phi = " << show(phi) << "\n";
  std::cout << "definite: true (orientation " << (s.metric.orientation > 0 ? "+1" : "-1") << ")\n";
  std::cout << "metric:\n";
  for (int i = 0; i < s.metric.dim(); ++i) {
    std::cout << " ";
    for (int j = 0; j < s.metric.dim(); ++j) std::cout << ' ' << num(s.metric.g(i, j));
    std::cout << "\n";
  }
  std::cout << "tau0 = " << num(t.tau0) << "\n";
  std::cout << "tau1 = " << show(t.tau1) << "\n";
  std::cout << "tau2 = " << show(t.tau2) << "\n";
  std::cout << "tau3 = " << show(t.tau3) << "\n";
  std::cout << "theta = " << show(t.theta) << "\n";
  std::cout << "T = " << show(t.T) << "\n";
  std::cout << "G2T: " << yes(c.g2t) << "\n";
  std::cout << "strong: " << yes(c.strong) << "\n";
  std::cout << "coclosed: " << yes(c.coclosed) << "\n";
  std::cout << "parallel: " << yes(c.parallel) << "\n";
  std::cout << "twisted: " << yes(c.twisted) << "\n";

  if (c.g2t) {
    const ScalarCurvatureReport sc = scalar_curvature(s, t, tol);
    if (!doc.alg.has_isotropy()) {
      const Curvature R = curvature(doc.alg, levi_civita(doc.alg, s.metric), s.metric);
      std::cout << "scalar curvature (Levi-Civita): " << num(R.scalar) << "\n";
    }
    std::cout << "scalar curvature (torsion formula): " << num(sc.bryant) << "\n";
    if (sc.strong_formula) std::cout << "scalar curvature (strong formula): " << num(*sc.strong_formula) << "\n";
  } else {
    std::cout << "scalar curvature: n/a (not G2T)\n";
  }

  struct Row {
    const char* name;
    double value;
    bool applies;
  };
  const Row rows[] = {
      {"tau2_fit", t.residuals.tau2_fit, true},
      {"tau3_type", t.residuals.tau3_type, true},
      {"theta_alt", t.residuals.theta_alt, c.g2t},
      {"T_alt", t.residuals.T_alt, c.g2t},
      {"lee", t.residuals.lee, c.g2t},
  };
  bool ok = true;
  char line[128];
  std::cout << "residuals (tolerance " << num(tol) << "):\n";
  for (const Row& r : rows) {
    const char* status = !r.applies ? "skip" : (r.value <= tol ? "ok" : "FAIL");
    if (r.applies && r.value > tol) ok = false;
    std::snprintf(line, sizeof line, "  %-10s %-14.6g %s\n", r.name, r.value, status);
    std::cout << line;
  }
  return ok ? kOk : kResidual;
}

struct FlowArgs {
  std::string algebra, psi, span, out;
  double t_end = 1.0, dt = 1e-3;
  std::vector<int> assoc{1, 2, 3}, coassoc{4, 5, 6, 7};
};

int cmd_flow(const FlowArgs& a) {
  const AlgebraDocument doc = load_algebra(a.algebra);
  const auto it = doc.spans.find(a.span);
  if (it == doc.spans.end()) throw Error(ErrorKind::UnknownName, "no span named '" + a.span + "'");
  FlowProblem p;
  p.alg = doc.alg;
  p.span = it->second;
  p.psi0 = span_coordinates(p.span, load_named_form(doc, a.psi, 4), p.tol_closure);
  p.t_end = a.t_end;
  p.dt = a.dt;
  p.assoc = a.assoc;
  p.coassoc = a.coassoc;
  const auto states = integrate(p);
  write_flow_csv(a.out, states, p.span.size());
  const FlowState& last = states.back();
  std::cout << "t = " << num(last.t) << ":";
  for (Eigen::Index k = 0; k < last.coeffs.size(); ++k) std::cout << " c" << k + 1 << " = " << num(last.coeffs(k));
  std::cout << "\nwrote " << states.size() << " rows to " << a.out << "\n";
  return kOk;
}

int cmd_catalog_list() {
  for (const auto& name : catalog_names()) {
    const std::string inst = name == "aw(p,q)" ? "aw(1,1)" : name;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-10s ", name.c_str());
    std::cout << buf << builtin(inst).notes << "\n";
  }
  return kOk;
}

int cmd_catalog_export(const std::string& name, const std::string& out) {
  write_file_atomic(out, to_canonical_json(document_of(builtin(name))));
  std::cout << "wrote " << out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"G2-structures with torsion on Lie algebras and homogeneous spaces"};
  app.require_subcommand(1);

  std::string algebra, phi;
  std::optional<double> tol;
  auto* check = app.add_subcommand("check", "torsion and classification report for a 3-form");
  check->add_option("--algebra", algebra, "catalog name or algebra JSON file")->required();
  check->add_option("--phi", phi, "form name in the algebra document or form JSON file")->required();
  check->add_option("--tol", tol, "relative classification tolerance (default 1e-9, env G2T_TOL)");

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "Laplacian coflow on an invariant span");
  flow->add_option("--algebra", fa.algebra, "catalog name or algebra JSON file")->required();
  flow->add_option("--psi", fa.psi, "initial 4-form: name or form JSON file")->required();
  flow->add_option("--span", fa.span, "span name in the algebra document")->required();
  flow->add_option("--t-end", fa.t_end, "final time (negative runs backward)");
  flow->add_option("--dt", fa.dt, "RK4 step")->check(CLI::PositiveNumber);
  flow->add_option("--out", fa.out, "CSV output")->required();
  flow->add_option("--assoc", fa.assoc, "indices of the associative plane");
  flow->add_option("--coassoc", fa.coassoc, "indices of the coassociative plane");

  auto* cat = app.add_subcommand("catalog", "built-in algebras");
  cat->require_subcommand(1);
  cat->add_subcommand("list", "list the entries");
  std::string export_name, export_out;
  auto* exp = cat->add_subcommand("export", "write an entry as canonical JSON");
  exp->add_option("name", export_name, "entry name, e.g. aw(2,1)")->required();
  exp->add_option("--out", export_out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*check) return cmd_check(algebra, phi, tol);
    if (*flow) return cmd_flow(fa);
    if (cat->got_subcommand("list")) return cmd_catalog_list();
    return cmd_catalog_export(export_name, export_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}
