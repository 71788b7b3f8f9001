#include "g2t/metric.hpp"

#include <cmath>

#include "g2t/exterior.hpp"

namespace g2t {

bool is_positive_definite(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols() || g.rows() == 0) return false;
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, g.cwiseAbs().maxCoeff())) return false;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
  if (ldlt.info() != Eigen::Success) return false;
  const double scale = g.norm();
  const auto D = ldlt.vectorD();
  for (Eigen::Index i = 0; i < D.size(); ++i)
    if (!(D[i] > 1e-10 * scale)) return false;
  return true;
}

Metric make_metric(const Eigen::MatrixXd& g, int orientation) {
  if (!is_positive_definite(g)) throw Error(ErrorKind::NotDefinite, "metric is not positive definite");
  Metric m;
  m.g = 0.5 * (g + g.transpose());
  m.g_inv = m.g.inverse();
  m.g_inv = 0.5 * (m.g_inv + m.g_inv.transpose());
  m.volume_scale = std::sqrt(m.g.determinant());
  m.orientation = orientation >= 0 ? 1 : -1;
  return m;
}

Eigen::MatrixXd g2_bilinear(const KForm& phi) {
  if (phi.dim() != 7 || phi.degree() != 3) throw Error(ErrorKind::DegreeMismatch, "expected a 3-form in dimension 7");
  std::vector<KForm> iv;
  for (int i = 0; i < 7; ++i) iv.push_back(contract(Eigen::VectorXd::Unit(7, i), phi));
  Eigen::MatrixXd b(7, 7);
  const Mask top = full_mask(7);
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      const double v = wedge(wedge(iv[i], iv[j]), phi)[top] / 6.0;
      b(i, j) = v;
      b(j, i) = v;
    }
  return b;
}

namespace {

// Relative to the largest eigenvalue, so badly conditioned but stable forms pass.
bool degenerate(const Eigen::MatrixXd& b) {
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(b, Eigen::EigenvaluesOnly).eigenvalues();
  const double big = ev.cwiseAbs().maxCoeff();
  return !(ev.cwiseAbs().minCoeff() > 1e-12 * big);
}

}  // namespace

Metric metric_from_3form(const KForm& phi) {
  Eigen::MatrixXd beta = g2_bilinear(phi);
  double det = beta.determinant();
  if (degenerate(beta)) throw Error(ErrorKind::NotStable, "b_phi is degenerate");
  int orientation = 1;
  if (det < 0) {
    beta = -beta;
    det = -det;
    orientation = -1;
  }
  if (!is_positive_definite(beta)) throw Error(ErrorKind::NotDefinite, "3-form is not definite");
  Metric m = make_metric(std::pow(det, -1.0 / 9.0) * beta, orientation);
  m.volume_scale = std::pow(det, 1.0 / 9.0);
  return m;
}

namespace {

// B(a, b) = (1/6) i_a rhat ^ i_b rhat ^ rhat with i_rhat e^{1..7} = psi.
Eigen::MatrixXd four_form_bilinear(const KForm& psi) {
  if (psi.dim() != 7 || psi.degree() != 4) throw Error(ErrorKind::DegreeMismatch, "expected a 4-form in dimension 7");
  const Mask top = full_mask(7);
  MultiVector rhat(7, 3);
  for (const auto& [m, c] : psi.terms()) rhat.add(top & ~m, wedge_sign(top & ~m, m) * c);
  std::vector<MultiVector> iv;
  for (int i = 0; i < 7; ++i) iv.push_back(contract(KForm::monomial(7, {i + 1}), rhat));
  Eigen::MatrixXd B(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      const double v = wedge(wedge(iv[i], iv[j]), rhat)[top] / 6.0;
      B(i, j) = v;
      B(j, i) = v;
    }
  return B;
}

}  // namespace

int four_form_sign(const KForm& psi) {
  const double det = four_form_bilinear(psi).determinant();
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

Metric metric_from_4form(const KForm& psi, int orientation) {
  const Eigen::MatrixXd B = four_form_bilinear(psi);
  const double det = B.determinant();
  if (degenerate(B)) throw Error(ErrorKind::NotStable, "4-form is degenerate");
  Eigen::MatrixXd gbar = std::pow(std::abs(det), -1.0 / 6.0) * B;
  if (!is_positive_definite(gbar)) gbar = -gbar;
  if (!is_positive_definite(gbar)) throw Error(ErrorKind::NotDefinite, "4-form is not definite");
  return make_metric(gbar.inverse(), orientation);
}

KForm volume_form(const Metric& m) {
  KForm v(m.dim(), m.dim());
  v.add(full_mask(m.dim()), m.orientation * m.volume_scale);
  return v;
}

Eigen::MatrixXd form_gram(const Metric& m, int k) { return compound(m.g_inv, k); }

double inner(const Metric& m, const KForm& a, const KForm& b) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::DegreeMismatch, "inner product of different degrees");
  if (a.dim() != m.dim() || b.dim() != m.dim()) throw Error(ErrorKind::DimensionMismatch, "metric dimension");
  return a.to_vector().dot(form_gram(m, a.degree()) * b.to_vector());
}

double norm(const Metric& m, const KForm& a) { return std::sqrt(std::max(0.0, inner(m, a, a))); }

Eigen::MatrixXd hodge_matrix(const Metric& m, int k) {
  const int n = m.dim();
  const Eigen::MatrixXd G = compound(m.g_inv, k);
  const auto& from = basis_masks(n, k);
  const Mask top = full_mask(n);
  const double s = m.orientation * m.volume_scale;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(binomial(n, n - k), static_cast<Eigen::Index>(from.size()));
  for (std::size_t K = 0; K < from.size(); ++K) {
    const Mask comp = top & ~from[K];
    const Eigen::Index row = basis_index(n, n - k, comp);
    const double eps = wedge_sign(from[K], comp);
    for (std::size_t I = 0; I < from.size(); ++I)
      H(row, static_cast<Eigen::Index>(I)) += s * eps * G(static_cast<Eigen::Index>(I), static_cast<Eigen::Index>(K));
  }
  return H;
}

KForm hodge_star(const Metric& m, const KForm& a) {
  if (a.dim() != m.dim()) throw Error(ErrorKind::DimensionMismatch, "metric dimension");
  return KForm::from_vector(a.dim(), a.dim() - a.degree(), hodge_matrix(m, a.degree()) * a.to_vector());
}

KForm codifferential(const AlgebraSpec& alg, const Metric& m, const KForm& a) {
  const int n = a.dim();
  const int k = a.degree();
  if (k == 0) throw Error(ErrorKind::DegreeMismatch, "codifferential of a function");
  const KForm s = hodge_star(m, a);
  const KForm ds = d(alg, s);
  const int sign = ((n * (k + 1) + 1) % 2 == 0) ? 1 : -1;
  return sign * hodge_star(m, ds);
}

KForm hodge_laplacian(const AlgebraSpec& alg, const Metric& m, const KForm& a) {
  const int n = a.dim();
  const int k = a.degree();
  KForm out(n, k);
  if (k < n) out += codifferential(alg, m, d(alg, a));
  if (k > 0) out += d(alg, codifferential(alg, m, a));
  return out;
}

Eigen::VectorXd sharp(const Metric& m, const KForm& one) { return m.g_inv * components(one); }

KForm flat(const Metric& m, const Eigen::VectorXd& v) { return one_form(m.g * v); }

}  // namespace g2t
