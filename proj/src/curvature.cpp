#include "g2t/curvature.hpp"

#include <cmath>

#include "g2t/exterior.hpp"

namespace g2t {

Connection levi_civita(const AlgebraSpec& alg, const Metric& m) {
  const auto& c = alg.structure_constants();
  const int n = alg.dim();
  if (m.dim() != n) throw Error(ErrorKind::DimensionMismatch, "metric dimension");
  // A(i, j, l) = g([e_i, e_j], e_l)
  std::vector<double> A(static_cast<std::size_t>(n * n * n), 0.0);
  auto at = [n](int i, int j, int l) { return static_cast<std::size_t>((i * n + j) * n + l); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        double s = 0;
        for (int k = 0; k < n; ++k) s += c[k](i, j) * m.g(k, l);
        A[at(i, j, l)] = s;
      }
  Connection out;
  out.gamma.assign(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd low(n);
      for (int l = 0; l < n; ++l) low[l] = 0.5 * (A[at(i, j, l)] - A[at(j, l, i)] + A[at(l, i, j)]);
      out.gamma[i].col(j) = m.g_inv * low;
    }
  return out;
}

Connection connection_with_torsion(const AlgebraSpec& alg, const Metric& m, const KForm& T) {
  if (T.degree() != 3 || T.dim() != alg.dim()) throw Error(ErrorKind::DegreeMismatch, "torsion must be a 3-form");
  Connection out = levi_civita(alg, m);
  const int n = alg.dim();
  for (int i = 0; i < n; ++i) {
    // T(e_i, e_j, e_l) as a matrix in (j, l)
    const Eigen::MatrixXd Ti = two_form_matrix(contract(Eigen::VectorXd::Unit(n, i), T));
    out.gamma[i] += 0.5 * m.g_inv * Ti.transpose();
  }
  return out;
}

double Curvature::max_abs() const {
  double r0 = 0;
  for (double v : r) r0 = std::max(r0, std::abs(v));
  return r0;
}

Curvature curvature(const AlgebraSpec& alg, const Connection& conn, const Metric& m) {
  const auto& c = alg.structure_constants();
  const int n = alg.dim();
  Curvature out;
  out.n = n;
  out.r.assign(static_cast<std::size_t>(n * n * n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // Matrix of R(e_i, e_j) acting on column vectors.
      Eigen::MatrixXd Rij = conn.gamma[i] * conn.gamma[j] - conn.gamma[j] * conn.gamma[i];
      for (int k = 0; k < n; ++k)
        if (c[k](i, j) != 0.0) Rij -= c[k](i, j) * conn.gamma[k];
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) out.r[static_cast<std::size_t>(((i * n + j) * n + l) * n + k)] = Rij(k, l);
    }
  out.ricci = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += out(i, j, l, i);
      out.ricci(j, l) = s;
    }
  out.scalar = (m.g_inv.cwiseProduct(out.ricci)).sum();
  return out;
}

Eigen::MatrixXd torsion_tensor(const AlgebraSpec& alg, const Connection& conn, int k) {
  const auto& c = alg.structure_constants();
  const int n = alg.dim();
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = conn.gamma[i](k, j) - conn.gamma[j](k, i) - c[k](i, j);
  return out;
}

}  // namespace g2t
