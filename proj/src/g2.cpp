#include "g2t/g2.hpp"

#include <cmath>

#include "g2t/exterior.hpp"

namespace g2t {

KForm standard_phi() { return parse_form(7, "e123 + e145 + e167 + e246 - e257 - e347 - e356"); }

G2Structure G2Structure::make(const AlgebraSpec& alg, const KForm& phi) {
  if (alg.dim() != 7 || phi.dim() != 7 || phi.degree() != 3)
    throw Error(ErrorKind::DimensionMismatch, "G2-structures need a 3-form on a 7-dimensional algebra");
  if (alg.has_isotropy() && invariance_defect(alg, phi) > 1e-9 * std::max(1.0, phi.max_norm()))
    throw Error(ErrorKind::NotInvariant, "phi is not invariant under the isotropy");
  G2Structure s{alg, phi, metric_from_3form(phi), {}};
  s.psi = hodge_star(s.metric, phi);
  return s;
}

namespace {

// Matrix of sigma -> *(sigma ^ phi) on 2-forms.
Eigen::MatrixXd l_operator(const G2Structure& s) {
  const auto& masks = basis_masks(7, 2);
  Eigen::MatrixXd L(21, 21);
  for (int i = 0; i < 21; ++i) {
    KForm e(7, 2);
    e.add(masks[i], 1.0);
    L.col(i) = hodge_star(s.metric, wedge(e, s.phi)).to_vector();
  }
  return L;
}

Eigen::MatrixXd p14_matrix(const G2Structure& s) {
  return (2.0 * Eigen::MatrixXd::Identity(21, 21) - l_operator(s)) / 3.0;
}

}  // namespace

Decomposition2 decompose2(const G2Structure& s, const KForm& sigma) {
  if (sigma.degree() != 2 || sigma.dim() != 7) throw Error(ErrorKind::DegreeMismatch, "expected a 2-form");
  const Eigen::VectorXd v = sigma.to_vector();
  const Eigen::VectorXd p14 = p14_matrix(s) * v;
  return {KForm::from_vector(7, 2, v - p14), KForm::from_vector(7, 2, p14)};
}

Decomposition3 decompose3(const G2Structure& s, const KForm& rho) {
  if (rho.degree() != 3 || rho.dim() != 7) throw Error(ErrorKind::DegreeMismatch, "expected a 3-form");
  const KForm p1 = (inner(s.metric, rho, s.phi) / 7.0) * s.phi;
  std::vector<KForm> basis;
  for (int i = 1; i <= 7; ++i) basis.push_back(hodge_star(s.metric, wedge(KForm::monomial(7, {i}), s.phi)));
  const Eigen::MatrixXd G = form_gram(s.metric, 3);
  Eigen::MatrixXd V(35, 7);
  for (int i = 0; i < 7; ++i) V.col(i) = basis[i].to_vector();
  const Eigen::MatrixXd M = V.transpose() * G * V;
  const Eigen::VectorXd rhs = V.transpose() * G * rho.to_vector();
  const Eigen::VectorXd coef = M.ldlt().solve(rhs);
  const KForm p7 = KForm::from_vector(7, 3, V * coef);
  return {p1, p7, rho - p1 - p7};
}

G2Torsion torsion(const G2Structure& s) {
  const Metric& g = s.metric;
  G2Torsion t;
  t.dphi = d(s.alg, s.phi);
  t.dpsi = d(s.alg, s.psi);
  t.tau0 = hodge_star(g, wedge(t.dphi, s.phi))[0] / 7.0;

  // d*phi = 4 tau1 ^ *phi + *tau2 with tau2 = P14 y, solved in least squares.
  Eigen::MatrixXd A(21, 28);
  for (int i = 0; i < 7; ++i) A.col(i) = (4.0 * wedge(KForm::monomial(7, {i + 1}), s.psi)).to_vector();
  const Eigen::MatrixXd P14 = p14_matrix(s);
  const Eigen::MatrixXd H2 = hodge_matrix(g, 2);
  A.rightCols(21) = H2 * P14;
  const Eigen::VectorXd b = t.dpsi.to_vector();
  const Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(b);
  t.residuals.tau2_fit = (A * x - b).norm();
  t.tau1 = KForm::from_vector(7, 1, x.head(7));
  t.tau2 = KForm::from_vector(7, 2, P14 * x.tail(21));
  t.tau2.prune(1e-15);

  t.tau3 = hodge_star(g, t.dphi - t.tau0 * s.psi - 3.0 * wedge(t.tau1, s.phi));
  const auto dec = decompose3(s, t.tau3);
  t.residuals.tau3_type = norm(g, dec.p1) + norm(g, dec.p7);

  t.theta = 4.0 * t.tau1;
  const double scal = hodge_star(g, wedge(t.dphi, s.phi))[0];
  t.T = (scal / 6.0) * s.phi - hodge_star(g, t.dphi) + hodge_star(g, wedge(t.theta, s.phi));
  t.T_alt = (t.tau0 / 6.0) * s.phi + hodge_star(g, wedge(t.tau1, s.phi)) - t.tau3;
  t.residuals.T_alt = norm(g, t.T - t.T_alt);
  t.residuals.lee = norm(g, t.theta + hodge_star(g, wedge(t.T, s.phi)));
  t.residuals.theta_alt =
      norm(g, t.theta + (1.0 / 3.0) * hodge_star(g, wedge(hodge_star(g, t.dphi), s.phi)));
  return t;
}

double default_tolerance(const G2Torsion& t, const Metric& m) {
  return 1e-9 * (norm(m, t.dphi) + norm(m, t.dpsi) + 1.0);
}

G2Classification classify(const G2Structure& s, const G2Torsion& t, std::optional<double> tol) {
  const Metric& g = s.metric;
  G2Classification c;
  c.tol = tol ? *tol : default_tolerance(t, g);
  c.tau2_norm = norm(g, t.tau2);
  c.dphi_norm = norm(g, t.dphi);
  c.dpsi_norm = norm(g, t.dpsi);
  c.dT_norm = norm(g, d(s.alg, t.T));
  c.dphi_wedge_phi = norm(g, wedge(t.dphi, s.phi));
  c.dtheta_norm = norm(g, d(s.alg, t.theta));
  c.g2t = c.tau2_norm < c.tol;
  c.strong = c.g2t && c.dT_norm < c.tol;
  c.coclosed = c.dpsi_norm < c.tol;
  c.parallel = c.dphi_norm < c.tol && c.coclosed;
  c.twisted = c.strong && c.dphi_wedge_phi < c.tol && c.dtheta_norm < c.tol;
  return c;
}

ScalarCurvatureReport scalar_curvature(const G2Structure& s, const G2Torsion& t, std::optional<double> tol) {
  const auto c = classify(s, t, tol);
  if (!c.g2t) throw Error(ErrorKind::NotG2T, "scalar curvature formulas need tau2 = 0");
  const Metric& g = s.metric;
  ScalarCurvatureReport r;
  r.delta_tau1 = codifferential(s.alg, g, t.tau1)[0];
  const double t0 = t.tau0;
  const double n1 = inner(g, t.tau1, t.tau1);
  const double n3 = inner(g, t.tau3, t.tau3);
  if (c.strong) r.strong_formula = 10.0 * r.delta_tau1 + (49.0 / 24.0) * t0 * t0 + 24.0 * n1;
  r.bryant = 12.0 * r.delta_tau1 + (21.0 / 8.0) * t0 * t0 + 30.0 * n1 - 0.5 * n3;
  r.residual = n3 - (7.0 / 6.0) * t0 * t0 - 12.0 * n1 - 4.0 * r.delta_tau1;
  return r;
}

}  // namespace g2t
