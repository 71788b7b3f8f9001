// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "g2t/catalog.hpp"
#include "g2t/coflow.hpp"
#include "g2t/curvature.hpp"
#include "g2t/errors.hpp"
#include "g2t/exterior.hpp"
#include "g2t/g2.hpp"
#include "g2t/metric.hpp"
#include "g2t/su3.hpp"
#include "oracle.hpp"

using namespace g2t;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

KForm f7(const char* s) { return parse_form(7, s); }
KForm f6(const char* s) { return parse_form(6, s); }

double mat_err(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

// 1. RK4 against the closed forms on [0, 2].
Outcome coflow_closed_forms() {
  Outcome o;
  double worst = 0, slowest = 0;
  for (int which : {1, 2}) {
    FlowProblem p = coflow_example(which, 2.0, 1e-3);
    const auto start = std::chrono::steady_clock::now();
    const auto states = integrate(p);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    for (const FlowState& s : states) {
      const double a2 = which == 1 ? std::exp(s.t) : 2.0 * std::exp(s.t) - 1.0;
      worst = std::max(worst, std::abs(s.coeffs[1] - a2));
      worst = std::max(worst, std::abs(s.coeffs[0] - 1.0));
      if (which == 1)
        for (Eigen::Index k = 2; k < s.coeffs.size(); ++k) worst = std::max(worst, std::abs(s.coeffs[k] - a2));
    }
  }
  o.pass = worst < 1e-6 && slowest < 5.0;
  o.detail = "max |a - exact| = " + fmt("%.2e", worst) + ", slowest trajectory " + fmt("%.2f", slowest) + " s";
  return o;
}

// 2. Monitors along both trajectories.
Outcome flow_monitors() {
  Outcome o;
  double theta_err = 0, tau2 = 0, dT = 0, tau0_err = 0, printed_T_err = 0, derived_T_err = 0;
  for (int which : {1, 2}) {
    FlowProblem p = coflow_example(which, 2.0, 1e-3);
    for (const FlowState& s : integrate(p)) {
      const FlowMonitors& m = s.monitors;
      theta_err = std::max(theta_err, oracle::max_diff(m.theta, f7("e7")));
      tau2 = std::max(tau2, m.tau2_norm);
      dT = std::max(dT, m.dT_norm);
      if (which == 2) {
        const double a = 2.0 * std::exp(s.t) - 1.0;
        tau0_err = std::max(tau0_err, std::abs(m.tau0 - 6.0 / 7.0 / std::sqrt(a)));
        printed_T_err = std::max(printed_T_err, oracle::max_diff(m.T, std::sqrt(a) * f7("e123") + f7("e456")));
        derived_T_err = std::max(derived_T_err, oracle::max_diff(m.T, a * f7("e123") + f7("e456")));
      }
    }
  }
  o.pass = theta_err < 1e-7 && tau2 < 1e-8 && dT < 1e-8 && tau0_err < 1e-7 && printed_T_err < 1e-7;
  o.detail = "|theta - e7| " + fmt("%.1e", theta_err) + ", tau2 " + fmt("%.1e", tau2) + ", dT " + fmt("%.1e", dT) +
             ", tau0 " + fmt("%.1e", tau0_err) + ", T vs sqrt(2e^t-1) e123 + e456 " + fmt("%.2e", printed_T_err) +
             " (vs (2e^t-1) e123 + e456: " + fmt("%.1e", derived_T_err) + ")";
  return o;
}

// 3. Torsion of the two explicit examples.
Outcome section6_torsion() {
  Outcome o;
  double err = 0;
  bool flags = true;
  {
    const G2Structure s = G2Structure::make(builtin("su2_r4").alg, standard_phi());
    const G2Torsion t = torsion(s);
    err = std::max({err, oracle::max_diff(t.T, f7("e456")), oracle::max_diff(t.theta, f7("e7"))});
    flags = flags && classify(s, t).twisted;
  }
  {
    const CatalogEntry ss = builtin("su2su2_r");
    const G2Structure s = G2Structure::make(ss.alg, ss.forms.at("phi"));
    const G2Torsion t = torsion(s);
    err = std::max(err, oracle::max_diff(t.T, f7("e123 + e456")));
    flags = flags && classify(s, t).strong;
    const SU3Structure h = hitchin(ss.alg.restricted(6), f6("e14 + e25 - e36"), f6("e123 + e156 - e246 - e345"));
    const SU3Torsion w = su3_torsion(h);
    const KForm w3 = 0.25 * f6("3 e123 - 3 e456 - e126 - e135 - e156 + e234 + e246 + e345");
    err = std::max({err, std::abs(w.w1p - 0.5), std::abs(w.w1m - 0.5), oracle::max_diff(w.w3, w3)});
  }
  o.pass = err < 1e-10 && flags;
  o.detail = "max deviation " + fmt("%.1e", err) + (flags ? ", twisted/strong flags set" : ", flags wrong");
  return o;
}

// 4. Scalar curvature: closed formula vs Levi-Civita curvature.
Outcome scalar_curvature_check() {
  Outcome o;
  double err = 0, residual = 0, tau3_err = 0;
  const std::pair<const char*, double> cases[] = {{"su2_r4", 1.5}, {"su2su2_r", 3.0}};
  for (const auto& [name, expected] : cases) {
    const CatalogEntry c = builtin(name);
    const G2Structure s = G2Structure::make(c.alg, c.forms.at("phi"));
    const G2Torsion t = torsion(s);
    const ScalarCurvatureReport r = scalar_curvature(s, t);
    const double lc = curvature(s.alg, levi_civita(s.alg, s.metric), s.metric).scalar;
    if (!r.strong_formula) return {false, std::string(name) + ": no strong formula"};
    err = std::max({err, std::abs(*r.strong_formula - lc), std::abs(lc - expected)});
    residual = std::max(residual, std::abs(r.residual));
    if (expected == 1.5) {
      const double n = norm(s.metric, t.tau3);
      tau3_err = std::abs(n * n - 0.75);
    }
  }
  o.pass = err < 1e-9 && residual < 1e-9 && tau3_err < 1e-9;
  o.detail = "formula vs curvature " + fmt("%.1e", err) + ", |tau3|^2 identity residual " + fmt("%.1e", residual) +
             ", |tau3|^2 - 3/4 " + fmt("%.1e", tau3_err);
  return o;
}

// 5. The connection with skew torsion T is flat.
Outcome flat_connection() {
  double worst = 0;
  for (const char* name : {"su2_r4", "su2su2_r"}) {
    const CatalogEntry c = builtin(name);
    const G2Structure s = G2Structure::make(c.alg, c.forms.at("phi"));
    const KForm T = torsion(s).T;
    worst = std::max(worst, curvature(s.alg, connection_with_torsion(s.alg, s.metric, T), s.metric).max_abs());
  }
  return {worst < 1e-9, "max curvature entry " + fmt("%.1e", worst)};
}

// 6. Aloff-Wallach G2T family against the printed closed forms.
Outcome aloff_wallach() {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::pair<int, int> pq[] = {{1, 0}, {2, 1}, {1, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 3}, {5, 2}, {5, 3}, {7, 4}};
  double err = 0, min_dT = 1e300;
  for (int i = 0; i < 20; ++i) {
    const auto [p, q] = pq[i % 10];
    double a1 = 0, a5 = 0;
    while (std::abs(a1) < 0.2) a1 = u(rng);
    while (std::abs(a5) < 0.2) a5 = u(rng);
    const double a4 = u(rng);
    const AWFamilyMember m = aw_family({p, q, a1, a4, a5});
    const G2Structure s = G2Structure::make(m.alg, m.phi);
    const G2Torsion t = torsion(s);
    // Eqs. for tau0, tau1 and T written out independently of aw_family.
    const double n2 = a4 * a4 + a5 * a5;
    const double tau0 = 24.0 / 7.0 * a4 / std::pow(n2, 2.0 / 3.0);
    const KForm tau1 = KForm::monomial(7, {1}, -a1 * a5 / n2);
    const double c = 3 * a1 * a1 / ((p * p + p * q + q * q) * std::pow(n2, 2.0 / 3.0));
    const KForm T = c * ((p + q) * f7("e123") + q * f7("e145") - p * f7("e167")) +
                    std::cbrt(n2) * f7("e246 + e257 - e347 + e356");
    err = std::max({err, std::abs(t.tau0 - tau0), oracle::max_diff(t.tau1, tau1), oracle::max_diff(t.T, T)});
    min_dT = std::min(min_dT, norm(s.metric, d(s.alg, t.T)) / norm(s.metric, t.T));
  }
  return {err < 1e-8 && min_dT > 1e-3,
          "20 members, max deviation " + fmt("%.1e", err) + ", min |dT|/|T| " + fmt("%.3f", min_dT)};
}

// 7. Invariant-form lemmas.
Outcome invariant_forms() {
  double dmax = 0;
  for (const char* name : {"v52", "q111", "m110"}) {
    const AlgebraSpec alg = builtin(name).alg;
    for (const KForm& f : invariant_subspace(alg, 2)) dmax = std::max(dmax, d(alg, f).max_norm());
  }
  bool dims = invariant_subspace(builtin("aw(1,0)").alg, 3).size() == 7;
  for (auto [p, q] : {std::pair{2, 1}, {3, 1}, {3, 2}, {5, 2}})
    dims = dims && invariant_subspace(builtin("aw(" + std::to_string(p) + "," + std::to_string(q) + ")").alg, 3).size() == 5;
  return {dmax < 1e-12 && dims, "max |d omega| " + fmt("%.1e", dmax) + (dims ? ", 3-form dimensions 5 and 7" : ", wrong dimensions")};
}

// 8. Hitchin lambda quartic and the double half-flat obstruction.
Outcome double_half_flat() {
  std::mt19937 rng(83);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double lambda_err = 0;
  for (int i = 0; i < 100; ++i) {
    const double b0 = u(rng), b2 = u(rng), b3 = u(rng), c0 = u(rng), c1 = u(rng);
    const double quartic = 4 * (b0 * b0 * c1 * c1 + (b2 * b2 + b3 * b3) * (c0 * c0 - c1 * c1));
    lambda_err = std::max(lambda_err, std::abs(hitchin_lambda(dhf_psi_plus(b0, b2, b3, c0, c1)) - quartic));
  }
  double smallest = 1e300;
  int valid = 0;
  while (valid < 100) {
    const double b0 = u(rng), b2 = u(rng), c0 = u(rng), c1 = u(rng);
    if (b2 == 0.0 || b0 * b0 * c1 * c1 + b2 * b2 * (c0 * c0 - c1 * c1) >= 0 || c1 * (c0 + c1) <= 0) continue;
    smallest = std::min(smallest, dhf_nonexistence_residual({b0, b2, c0, c1, valid % 2 ? 1 : -1}));
    ++valid;
  }
  return {lambda_err < 1e-9 && smallest > 1e-6,
          "lambda deviation " + fmt("%.1e", lambda_err) + ", min obstruction " + fmt("%.3e", smallest)};
}

// 9. Metric dualities on random definite 3-forms.
Outcome metric_dualities() {
  std::mt19937 rng(97);
  double dual = 0, cov = 0, starstar = 0, adj = 0;
  int accepted = 0;
  while (accepted < 100) {
    const KForm phi =
        pullback(oracle::random_basis_change(rng, 7, 0.4), standard_phi()) + 0.3 * oracle::random_form(rng, 7, 3);
    Metric m;
    try {
      m = metric_from_3form(phi);
    } catch (const Error&) {
      continue;
    }
    ++accepted;
    const Eigen::MatrixXd g_inv = m.g.inverse();
    const Metric m4 = metric_from_4form(hodge_star(m, phi), m.orientation);
    dual = std::max(dual, mat_err(m4.g_inv, g_inv) / g_inv.cwiseAbs().maxCoeff());
    const Eigen::MatrixXd A = oracle::random_basis_change(rng, 7, 0.3);
    const Eigen::MatrixXd expected = A.transpose() * m.g * A;
    cov = std::max(cov, mat_err(metric_from_3form(pullback(A, phi)).g, expected) / expected.cwiseAbs().maxCoeff());
    if (accepted % 10 == 0) {
      for (int k = 0; k <= 7; ++k) {
        const KForm a = oracle::random_form(rng, 7, k);
        starstar = std::max(starstar, oracle::max_diff(hodge_star(m, hodge_star(m, a)), a));
      }
      for (const char* name : {"su2su2_r", "su2_r4"}) {
        const AlgebraSpec alg = builtin(name).alg;
        for (int k = 0; k < 7; ++k) {
          const KForm a = oracle::random_form(rng, 7, k), b = oracle::random_form(rng, 7, k + 1);
          const double lhs = inner(m, d(alg, a), b), rhs = inner(m, a, codifferential(alg, m, b));
          adj = std::max(adj, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
        }
      }
    }
  }
  return {dual < 1e-8 && cov < 1e-8 && starstar < 1e-9 && adj < 1e-9,
          "dual metric " + fmt("%.1e", dual) + ", covariance " + fmt("%.1e", cov) + ", ** " + fmt("%.1e", starstar) +
              ", adjointness " + fmt("%.1e", adj)};
}

// 10. Product dictionary for S^1 products on su(2) + su(2) + R.
Outcome product_dictionary_check() {
  const CatalogEntry ss = builtin("su2su2_r");
  const SU3Structure base = hitchin(ss.alg.restricted(6), f6("e14 + e25 - e36"), f6("e123 + e156 - e246 - e345"));
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  int made = 0, g2t = 0, mismatched = 0;
  double T_err = 0;
  while (made < 50) {
    const double a = angle(rng);
    SU3Structure s = rotate(base, std::cos(a), std::sin(a));
    if (made % 2) {
      const Eigen::MatrixXd A = oracle::random_basis_change(rng, 6, 0.3);
      if (A.determinant() <= 0) continue;
      try {
        s = hitchin(s.alg, pullback(A, s.omega), pullback(A, s.psi_plus));
      } catch (const Error&) {
        continue;
      }
    }
    ++made;
    const SU3Torsion t = su3_torsion(s);
    const G2Structure g = g2_product_s1(s, ss.alg);
    const G2Torsion tg = torsion(g);
    const ProductDictionary pd = product_dictionary(s, t, tg);
    const bool is_g2t = norm(g.metric, tg.tau2) < 1e-8;
    if (is_g2t != (pd.g2tprod_residual < 1e-8)) ++mismatched;
    if (is_g2t) {
      ++g2t;
      T_err = std::max(T_err, oracle::max_diff(pd.T_prod, tg.T));
    }
  }
  return {mismatched == 0 && g2t > 0 && T_err < 1e-9,
          "50 structures, " + std::to_string(g2t) + " G2T, " + std::to_string(mismatched) + " mismatches, T deviation " +
              fmt("%.1e", T_err)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"coflow closed forms", coflow_closed_forms},
      {"flow monitors", flow_monitors},
      {"explicit example torsion", section6_torsion},
      {"scalar curvature cross-check", scalar_curvature_check},
      {"flat skew-torsion connection", flat_connection},
      {"Aloff-Wallach family", aloff_wallach},
      {"invariant-form lemmas", invariant_forms},
      {"Hitchin lambda and double half-flat", double_half_flat},
      {"metric dualities", metric_dualities},
      {"product dictionary", product_dictionary_check},
  };
  int failed = 0, n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed ? 1 : 0;
}
