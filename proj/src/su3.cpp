#include "g2t/su3.hpp"

#include <cmath>
#include <cstdio>

#include "g2t/exterior.hpp"

namespace g2t {

namespace {

double rel_tol(const KForm& a) { return 1e-9 * std::max(1.0, a.max_norm()); }

// Columns spanning the kernel of C (rows = constraints).
Eigen::MatrixXd kernel(const Eigen::MatrixXd& C) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++rank;
  return svd.matrixV().rightCols(C.cols() - rank);
}

// Matrix of a -> a ^ b from degree-k forms.
Eigen::MatrixXd wedge_matrix(int n, int k, const KForm& b) {
  const auto& masks = basis_masks(n, k);
  Eigen::MatrixXd M(binomial(n, k + b.degree()), static_cast<Eigen::Index>(masks.size()));
  for (std::size_t i = 0; i < masks.size(); ++i) {
    KForm e(n, k);
    e.add(masks[i], 1.0);
    M.col(static_cast<Eigen::Index>(i)) = wedge(e, b).to_vector();
  }
  return M;
}

Eigen::MatrixXd endomorphism_matrix(const Eigen::MatrixXd& J, int /*n*/, int k) { return compound(J, k).transpose(); }

}  // namespace

Eigen::MatrixXd hitchin_k(const KForm& psi_plus, int volume_sign) {
  if (psi_plus.dim() != 6 || psi_plus.degree() != 3) throw Error(ErrorKind::DegreeMismatch, "expected a 3-form in dimension 6");
  const Mask top = full_mask(6);
  Eigen::MatrixXd K(6, 6);
  for (int j = 0; j < 6; ++j) {
    const KForm chi = wedge(contract(Eigen::VectorXd::Unit(6, j), psi_plus), psi_plus);
    for (int i = 0; i < 6; ++i) K(i, j) = volume_sign * wedge(chi, KForm::monomial(6, {i + 1}))[top];
  }
  return K;
}

double hitchin_lambda(const KForm& psi_plus) {
  const Eigen::MatrixXd K = hitchin_k(psi_plus);
  return (K * K).trace() / 6.0;
}

KForm apply_endomorphism(const Eigen::MatrixXd& J, const KForm& a) { return pullback(J, a); }

SU3Structure hitchin(const AlgebraSpec& alg, const KForm& omega, const KForm& psi_plus) {
  if (alg.dim() != 6 || omega.dim() != 6 || psi_plus.dim() != 6)
    throw Error(ErrorKind::DimensionMismatch, "SU(3)-structures live in dimension 6");
  if (omega.degree() != 2 || psi_plus.degree() != 3) throw Error(ErrorKind::DegreeMismatch, "need a 2-form and a 3-form");
  if (alg.has_isotropy() && (invariance_defect(alg, omega) > rel_tol(omega) || invariance_defect(alg, psi_plus) > rel_tol(psi_plus)))
    throw Error(ErrorKind::NotInvariant, "omega and psi+ must be isotropy invariant");
  const Mask top = full_mask(6);
  const KForm w2 = wedge(omega, omega);
  const KForm w3 = wedge(w2, omega);
  const double vol = w3[top];
  const double scale_w = std::pow(std::max(omega.max_norm(), 1e-300), 3);
  if (!(std::abs(vol) > 1e-12 * scale_w)) throw Error(ErrorKind::NotStable, "omega is degenerate");
  const int eps = vol > 0 ? 1 : -1;

  SU3Structure s;
  s.alg = alg;
  s.omega = omega;
  s.psi_plus = psi_plus;
  const Eigen::MatrixXd K = hitchin_k(psi_plus, eps);
  s.lambda = (K * K).trace() / 6.0;
  const double scale_p = std::pow(std::max(psi_plus.max_norm(), 1e-300), 4);
  if (!(s.lambda < -1e-12 * scale_p)) throw Error(ErrorKind::NotStable, "psi+ is not negative stable");
  s.J = K / std::sqrt(-s.lambda);
  if ((s.J * s.J + Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() > 1e-8)
    throw Error(ErrorKind::NotStable, "K^2 is not a multiple of the identity");

  if (wedge(omega, psi_plus).max_norm() > 1e-9 * std::max(1.0, omega.max_norm() * psi_plus.max_norm()))
    throw Error(ErrorKind::NotCompatible, "omega ^ psi+ must vanish");

  const Eigen::MatrixXd W = two_form_matrix(omega);
  Eigen::MatrixXd g = W * s.J;
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::NotCompatible, "omega is not of type (1,1)");
  g = 0.5 * (g + g.transpose());
  if (!is_positive_definite(g)) throw Error(ErrorKind::NotPositive, "omega(., J.) is not positive definite");
  s.metric = make_metric(g, eps);

  s.psi_minus = apply_endomorphism(s.J, psi_plus);
  const KForm lhs = wedge(psi_plus, s.psi_minus);
  if (std::abs(lhs[top] - (2.0 / 3.0) * vol) > 1e-9 * std::max(1.0, std::abs(vol)))
    throw Error(ErrorKind::NotNormalized, "psi+ ^ psi- must equal (2/3) omega^3");
  return s;
}

Eigen::MatrixXd omega2_8_basis(const SU3Structure& s) {
  const KForm w2 = wedge(s.omega, s.omega);
  Eigen::MatrixXd C(16, 15);
  C.topRows(15) = endomorphism_matrix(s.J, 6, 2) - Eigen::MatrixXd::Identity(15, 15);
  C.bottomRows(1) = wedge_matrix(6, 2, w2);
  return kernel(C);
}

Eigen::MatrixXd omega3_12_basis(const SU3Structure& s) {
  Eigen::MatrixXd C(8, 20);
  C.topRows(6) = wedge_matrix(6, 3, s.omega);
  C.row(6) = wedge_matrix(6, 3, s.psi_plus);
  C.row(7) = wedge_matrix(6, 3, s.psi_minus);
  return kernel(C);
}

SU3Torsion su3_torsion(const SU3Structure& s) {
  const Metric& g = s.metric;
  const auto& alg = s.alg;
  const KForm dw = d(alg, s.omega);
  const KForm dpp = d(alg, s.psi_plus);
  const KForm dpm = d(alg, s.psi_minus);
  const KForm w2 = wedge(s.omega, s.omega);
  const Eigen::MatrixXd B8 = omega2_8_basis(s);
  const Eigen::MatrixXd B12 = omega3_12_basis(s);
  if (B8.cols() != 8 || B12.cols() != 12) throw Error(ErrorKind::NotStable, "unexpected SU(3) representation dimensions");
  const Eigen::MatrixXd H2 = hodge_matrix(g, 2);
  const Eigen::MatrixXd Jt1 = endomorphism_matrix(s.J, 6, 1);

  // Unknowns: w1p, w1m, w2p (8), w2m (8), w3 (12), w4 (6), w5 (6).
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(50, 42);
  Eigen::VectorXd b(50);
  b << dw.to_vector(), dpp.to_vector(), dpm.to_vector();
  // rows 0..19: d omega
  A.block(0, 0, 20, 1) = 1.5 * s.psi_minus.to_vector();
  A.block(0, 1, 20, 1) = -1.5 * s.psi_plus.to_vector();
  A.block(0, 18, 20, 12) = B12;
  A.block(0, 30, 20, 6) = wedge_matrix(6, 1, s.omega);
  // rows 20..34: d psi+
  A.block(20, 0, 15, 1) = w2.to_vector();
  A.block(20, 2, 15, 8) = H2 * B8;
  A.block(20, 36, 15, 6) = -wedge_matrix(6, 1, s.psi_plus);  // psi+ ^ w5 = -w5 ^ psi+
  // rows 35..49: d psi-
  A.block(35, 1, 15, 1) = w2.to_vector();
  A.block(35, 10, 15, 8) = H2 * B8;
  A.block(35, 36, 15, 6) = -wedge_matrix(6, 1, s.psi_plus) * Jt1;

  const Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(b);
  SU3Torsion t;
  t.residual = (A * x - b).norm();
  if (t.residual > 1e-9 * (1.0 + b.norm())) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "structure equations not solvable (residual %.3g)", t.residual);
    throw Error(ErrorKind::ResidualTooLarge, buf);
  }
  t.w1p = x[0];
  t.w1m = x[1];
  t.w2p = KForm::from_vector(6, 2, B8 * x.segment(2, 8)).prune(1e-15);
  t.w2m = KForm::from_vector(6, 2, B8 * x.segment(10, 8)).prune(1e-15);
  t.w3 = KForm::from_vector(6, 3, B12 * x.segment(18, 12)).prune(1e-15);
  t.w4 = KForm::from_vector(6, 1, x.segment(30, 6)).prune(1e-15);
  t.w5 = KForm::from_vector(6, 1, x.segment(36, 6)).prune(1e-15);
  t.theta_omega = 2.0 * t.w4;
  const KForm jd = apply_endomorphism(s.J, codifferential(alg, g, s.omega));
  t.theta_residual = norm(g, t.theta_omega + jd);
  return t;
}

double nijenhuis_residual(const AlgebraSpec& alg, const Eigen::MatrixXd& J) {
  const int n = alg.dim();
  const Eigen::MatrixXd& D1 = alg.d_matrix(1);
  double r = 0;
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd a = Eigen::VectorXd::Unit(n, k);
    const Eigen::VectorXd ja = J.transpose() * a;
    const Eigen::MatrixXd Ma = two_form_matrix(KForm::from_vector(n, 2, D1 * a));
    const Eigen::MatrixXd Mb = two_form_matrix(KForm::from_vector(n, 2, D1 * ja));
    const Eigen::MatrixXd E = Ma - J.transpose() * Ma * J + J.transpose() * Mb + Mb * J;
    r = std::max(r, E.cwiseAbs().maxCoeff());
  }
  return r;
}

SU3Conditions check_conditions(const SU3Structure& s, const SU3Torsion& t, std::optional<double> tol) {
  const Metric& g = s.metric;
  const auto& alg = s.alg;
  SU3Conditions c;
  const KForm dw = d(alg, s.omega);
  const KForm dpp = d(alg, s.psi_plus);
  const KForm dpm = d(alg, s.psi_minus);
  c.tol = tol ? *tol : 1e-9 * (norm(g, dw) + norm(g, dpp) + norm(g, dpm) + 1.0);
  const double tl = c.tol;
  auto small = [&](const KForm& f) { return norm(g, f) < tl; };
  auto zero = [&](double v) { return std::abs(v) < tl; };

  c.nijenhuis = nijenhuis_residual(alg, s.J);
  const KForm& th = t.theta_omega;
  c.twisted_cy = c.nijenhuis < tl && small(dpp - wedge(th, s.psi_plus)) && small(dpm - wedge(th, s.psi_minus)) &&
                 small(d(alg, apply_endomorphism(s.J, dw))) && small(d(alg, th));
  c.double_half_flat = zero(t.w1p) && small(t.w2p) && small(t.w2m) && small(t.w4) && small(t.w5);
  c.g2tns = small(t.w2m) && small(t.w4) && small(t.w5);
  c.g2tnsdt = small(d(alg, t.w2p)) &&
              small(d(alg, hodge_star(g, t.w3)) + 0.5 * d(alg, t.w1p * s.psi_plus + t.w1m * s.psi_minus));
  c.delta_w3_eq = small(codifferential(alg, g, t.w3) - (t.w1p * t.w1p + t.w1m * t.w1m) * s.omega);
  c.cordhf = small(hodge_laplacian(alg, g, s.omega) - 4.0 * t.w1m * t.w1m * s.omega);
  return c;
}

SU3Structure rotate(const SU3Structure& s, double a, double b) {
  const double r = std::hypot(a, b);
  if (std::abs(r - 1.0) > 1e-9) throw Error(ErrorKind::InvalidParameters, "rotation must satisfy a^2 + b^2 = 1");
  a /= r;
  b /= r;
  SU3Structure out = s;
  out.psi_plus = a * s.psi_plus + b * s.psi_minus;
  out.psi_minus = a * s.psi_minus - b * s.psi_plus;
  return out;
}

SU2Structure make_su2(const AlgebraSpec& alg, const KForm& omega, const KForm& psi_plus, const KForm& psi_minus) {
  if (alg.dim() != 4 || omega.dim() != 4 || psi_plus.dim() != 4 || psi_minus.dim() != 4)
    throw Error(ErrorKind::DimensionMismatch, "SU(2)-structures live in dimension 4");
  if (omega.degree() != 2 || psi_plus.degree() != 2 || psi_minus.degree() != 2)
    throw Error(ErrorKind::DegreeMismatch, "SU(2)-structures are triples of 2-forms");
  const Mask top = full_mask(4);
  const double v = wedge(omega, omega)[top];
  if (std::abs(v) < 1e-12) throw Error(ErrorKind::NotStable, "omega is degenerate");
  const Eigen::MatrixXd O1 = two_form_matrix(omega);
  const Eigen::MatrixXd O2 = two_form_matrix(psi_plus);
  const Eigen::MatrixXd O3 = two_form_matrix(psi_minus);
  Eigen::MatrixXd G = O3 * O1.inverse() * O2;
  G = 0.5 * (G + G.transpose());
  if (!is_positive_definite(G)) G = -G;
  if (!is_positive_definite(G)) throw Error(ErrorKind::NotSelfDual, "the triple does not define a metric");
  SU2Structure s{alg, omega, psi_plus, psi_minus, {}, make_metric(G, v > 0 ? 1 : -1)};
  s.J = -s.metric.g_inv * O1;
  const double tol = 1e-9 * std::max(1.0, std::abs(v));
  const KForm* forms[3] = {&omega, &psi_plus, &psi_minus};
  for (int i = 0; i < 3; ++i) {
    if (norm(s.metric, hodge_star(s.metric, *forms[i]) - *forms[i]) > 1e-9 * std::max(1.0, forms[i]->max_norm()))
      throw Error(ErrorKind::NotSelfDual, "triple is not self-dual");
    if (std::abs(wedge(*forms[i], *forms[i])[top] - v) > tol)
      throw Error(ErrorKind::NotNormalized, "triple has unequal norms");
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(wedge(*forms[i], *forms[j])[top]) > tol)
        throw Error(ErrorKind::NotCompatible, "triple is not orthogonal");
  }
  if (std::abs(s.metric.volume_scale - 0.5 * std::abs(v)) > tol)
    throw Error(ErrorKind::NotNormalized, "omega^2 must equal twice the volume form");
  if (alg.has_isotropy())
    for (const KForm* f : forms)
      if (invariance_defect(alg, *f) > rel_tol(*f)) throw Error(ErrorKind::NotInvariant, "triple must be invariant");
  return s;
}

SU2Conditions check_conditions(const SU2Structure& s, std::optional<double> tol) {
  const Metric& g = s.metric;
  const auto& alg = s.alg;
  SU2Conditions c;
  const KForm dw = d(alg, s.omega);
  const KForm dpp = d(alg, s.psi_plus);
  const KForm dpm = d(alg, s.psi_minus);
  c.tol = tol ? *tol : 1e-9 * (norm(g, dw) + norm(g, dpp) + norm(g, dpm) + 1.0);
  c.theta_omega = -apply_endomorphism(s.J, codifferential(alg, g, s.omega));
  c.nijenhuis = nijenhuis_residual(alg, s.J);
  auto small = [&](const KForm& f) { return norm(g, f) < c.tol; };
  const KForm& th = c.theta_omega;
  c.twisted_cy = c.nijenhuis < c.tol && small(dpp - wedge(th, s.psi_plus)) && small(dpm - wedge(th, s.psi_minus)) &&
                 small(d(alg, apply_endomorphism(s.J, dw))) && small(d(alg, th));
  return c;
}

G2Structure g2_product_s1(const SU3Structure& s, const AlgebraSpec& ambient) {
  if (ambient.dim() != 7) throw Error(ErrorKind::DimensionMismatch, "ambient algebra must be 7-dimensional");
  if (!ambient.de(7).is_zero()) throw Error(ErrorKind::NotCentral, "eta = e^7 must be closed");
  const Mask e7 = Mask{1} << 6;
  for (int i = 1; i <= 6; ++i) {
    for (const auto& [m, c] : ambient.de(i).terms())
      if (m & e7) throw Error(ErrorKind::NotCentral, "e_7 must be central");
    if ((ambient.de(i) - s.alg.de(i).embedded(7, 0)).max_norm() > 1e-12)
      throw Error(ErrorKind::DimensionMismatch, "ambient algebra does not extend the SU(3) slice");
  }
  const KForm eta = KForm::monomial(7, {7});
  const KForm phi = wedge(s.omega.embedded(7, 0), eta) + s.psi_plus.embedded(7, 0);
  return G2Structure::make(ambient, phi);
}

G2Structure g2_product_s1(const SU3Structure& s) { return g2_product_s1(s, s.alg.embedded(7, 0)); }

G2Structure g2_product_t3(const SU2Structure& s) {
  const AlgebraSpec ambient = s.alg.embedded(7, 3);
  const KForm ds1 = KForm::monomial(7, {1}), ds2 = KForm::monomial(7, {2}), ds3 = KForm::monomial(7, {3});
  const KForm phi = KForm::monomial(7, {1, 2, 3}) + wedge(ds1, s.omega.embedded(7, 3)) +
                    wedge(ds2, s.psi_plus.embedded(7, 3)) - wedge(ds3, s.psi_minus.embedded(7, 3));
  return G2Structure::make(ambient, phi);
}

ProductDictionary product_dictionary(const SU3Structure& s, const SU3Torsion& t, const G2Torsion& g2) {
  const Metric& g = s.metric;
  ProductDictionary p;
  const KForm eta = KForm::monomial(7, {7});
  auto up = [](const KForm& f) { return f.embedded(7, 0); };
  p.T_prod = up(0.5 * t.w1p * s.psi_plus + 0.5 * t.w1m * s.psi_minus + hodge_star(g, t.w3) -
                0.5 * hodge_star(g, wedge(t.theta_omega, s.omega))) -
             wedge(up(t.w2p), eta);
  const Eigen::VectorXd th = components(g2.theta);
  p.lambda = th[6];
  p.beta = one_form(th.head(6));
  p.g2tprod_residual = std::abs(t.w1m - 0.5 * p.lambda) + norm(g, t.w2m) + norm(g, t.w5 + 2.0 * t.w4) +
                       norm(g, 2.0 * t.w4 - p.beta);
  return p;
}

}  // namespace g2t
