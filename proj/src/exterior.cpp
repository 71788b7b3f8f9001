#include "g2t/exterior.hpp"

#include <algorithm>
#include <array>

namespace g2t {

namespace {

constexpr double kInvarianceTol = 1e-9;

template <bool C1, bool C2>
BasicForm<C2> contract_impl(const BasicForm<C1>& x, const BasicForm<C2>& a) {
  if (x.dim() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "contraction across dimensions");
  if (x.degree() > a.degree()) throw Error(ErrorKind::DegreeMismatch, "contraction degree too large");
  BasicForm<C2> out(a.dim(), a.degree() - x.degree());
  for (const auto& [mi, ci] : x.terms())
    for (const auto& [mj, cj] : a.terms())
      if ((mi & mj) == mi) out.add(mj & ~mi, wedge_sign(mi, mj & ~mi) * ci * cj);
  return out;
}

}  // namespace

KForm d(const AlgebraSpec& alg, const KForm& a) {
  if (a.dim() != alg.dim()) throw Error(ErrorKind::DimensionMismatch, "form and algebra dimensions differ");
  if (a.degree() == alg.dim()) return KForm(a.dim(), a.degree());  // no (n+1)-forms; callers only test for zero
  if (alg.requires_invariance()) {
    const double defect = invariance_defect(alg, a);
    if (defect > kInvarianceTol * std::max(1.0, a.max_norm()))
      throw Error(ErrorKind::NotInvariant, "d is only defined on isotropy-invariant forms here");
  }
  return KForm::from_vector(a.dim(), a.degree() + 1, alg.d_matrix(a.degree()) * a.to_vector());
}

KForm contract(const Eigen::VectorXd& v, const KForm& a) {
  if (v.size() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "vector and form dimensions differ");
  MultiVector x(a.dim(), 1);
  for (int i = 0; i < a.dim(); ++i) x.add(Mask{1} << i, v[i]);
  return contract_impl(x, a);
}

KForm contract(const MultiVector& x, const KForm& a) { return contract_impl(x, a); }
MultiVector contract(const KForm& a, const MultiVector& x) { return contract_impl(a, x); }

Eigen::MatrixXd isotropy_action_matrix(const Eigen::MatrixXd& h, int n, int k) {
  if (h.rows() != n || h.cols() != n) throw Error(ErrorKind::DimensionMismatch, "isotropy matrix size");
  const auto& masks = basis_masks(n, k);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(masks.size()), static_cast<Eigen::Index>(masks.size()));
  for (std::size_t col = 0; col < masks.size(); ++col) {
    const Mask J = masks[col];
    for (int j : indices_of(J)) {
      const Mask bit = Mask{1} << (j - 1);
      const Mask left = J & (bit - 1);
      const Mask right = J & ~(bit | (bit - 1));
      // h.e^j = -sum_i h(j, i) e^i, placed where e^j stood.
      for (int i = 0; i < n; ++i) {
        const double c = -h(j - 1, i);
        if (c == 0.0) continue;
        const Mask ib = Mask{1} << i;
        if (ib & (left | right)) continue;
        const int s = wedge_sign(left, ib) * wedge_sign(left | ib, right);
        M(basis_index(n, k, left | ib | right), static_cast<Eigen::Index>(col)) += s * c;
      }
    }
  }
  return M;
}

KForm isotropy_action(const Eigen::MatrixXd& h, const KForm& a) {
  return KForm::from_vector(a.dim(), a.degree(), isotropy_action_matrix(h, a.dim(), a.degree()) * a.to_vector());
}

double invariance_defect(const AlgebraSpec& alg, const KForm& a) {
  double r = 0;
  for (const auto& h : alg.isotropy()) r = std::max(r, isotropy_action(h, a).max_norm());
  return r;
}

std::vector<KForm> invariant_subspace(const AlgebraSpec& alg, int k) {
  const int n = alg.dim();
  const int N = binomial(n, k);
  std::vector<KForm> out;
  if (!alg.has_isotropy()) throw Error(ErrorKind::InvalidParameters, "invariant_subspace needs isotropy data");
  Eigen::MatrixXd stacked(N * static_cast<Eigen::Index>(alg.isotropy().size()), N);
  for (std::size_t g = 0; g < alg.isotropy().size(); ++g)
    stacked.middleRows(static_cast<Eigen::Index>(g) * N, N) = isotropy_action_matrix(alg.isotropy()[g], n, k);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = 1e-9 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++rank;
  const int nullity = N - rank;
  if (nullity == 0) return out;
  Eigen::MatrixXd B = svd.matrixV().rightCols(nullity).transpose();  // rows span the kernel

  // Reduced row echelon form makes the basis independent of the SVD's
  // arbitrary rotation; Gram-Schmidt then restores orthonormality.
  int lead = 0;
  for (int r = 0; r < nullity && lead < N; ++r) {
    Eigen::Index piv;
    while (lead < N && B.col(lead).tail(nullity - r).cwiseAbs().maxCoeff(&piv) < 1e-10) ++lead;
    if (lead >= N) break;
    B.row(r).swap(B.row(r + piv));
    B.row(r) /= B(r, lead);
    for (int i = 0; i < nullity; ++i)
      if (i != r) B.row(i) -= B(i, lead) * B.row(r);
    ++lead;
  }
  for (int r = 0; r < nullity; ++r) {
    Eigen::VectorXd v = B.row(r).transpose();
    for (int q = 0; q < r; ++q) v -= B.row(q).dot(v) * B.row(q).transpose();
    v /= v.norm();
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (std::abs(v[i]) < 1e-13) v[i] = 0.0;
    B.row(r) = v.transpose();
    out.push_back(KForm::from_vector(n, k, v));
  }
  return out;
}

double d_squared_residual(const AlgebraSpec& alg) {
  const int n = alg.dim();
  double r = 0;
  if (!alg.has_isotropy()) {
    for (int i = 1; i <= n; ++i)
      if (n >= 3) r = std::max(r, d(alg, d(alg, KForm::monomial(n, {i}))).max_norm());
    return r;
  }
  for (int k = 1; k + 2 <= n; ++k)
    for (const auto& b : invariant_subspace(alg, k)) r = std::max(r, d(alg, d(alg, b)).max_norm());
  return r;
}

namespace {

// Fixed-size minors avoid heap traffic; compound() dominates the Hodge star.
template <int K>
void fill_compound(const Eigen::MatrixXd& M, const std::vector<std::array<int, kMaxDim>>& idx, Eigen::MatrixXd& C) {
  Eigen::Matrix<double, K, K> sub;
  const auto N = static_cast<Eigen::Index>(idx.size());
  for (Eigen::Index I = 0; I < N; ++I)
    for (Eigen::Index J = 0; J < N; ++J) {
      for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) sub(a, b) = M(idx[I][a], idx[J][b]);
      C(I, J) = sub.determinant();
    }
}

}  // namespace

Eigen::MatrixXd compound(const Eigen::MatrixXd& M, int k) {
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n) throw Error(ErrorKind::DimensionMismatch, "compound of a non-square matrix");
  const auto& masks = basis_masks(n, k);
  const auto N = static_cast<Eigen::Index>(masks.size());
  Eigen::MatrixXd C(N, N);
  if (k == 0) {
    C(0, 0) = 1.0;
    return C;
  }
  std::vector<std::array<int, kMaxDim>> idx(masks.size());
  for (std::size_t r = 0; r < masks.size(); ++r) {
    int a = 0;
    for (int i : indices_of(masks[r])) idx[r][a++] = i - 1;
  }
  switch (k) {
    case 1: fill_compound<1>(M, idx, C); break;
    case 2: fill_compound<2>(M, idx, C); break;
    case 3: fill_compound<3>(M, idx, C); break;
    case 4: fill_compound<4>(M, idx, C); break;
    case 5: fill_compound<5>(M, idx, C); break;
    case 6: fill_compound<6>(M, idx, C); break;
    case 7: fill_compound<7>(M, idx, C); break;
    default: fill_compound<8>(M, idx, C); break;
  }
  return C;
}

KForm pullback(const Eigen::MatrixXd& A, const KForm& a) {
  if (A.rows() != a.dim() || A.cols() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "pullback matrix size");
  return KForm::from_vector(a.dim(), a.degree(), compound(A, a.degree()).transpose() * a.to_vector());
}

KForm one_form(const Eigen::VectorXd& v) {
  KForm f(static_cast<int>(v.size()), 1);
  for (Eigen::Index i = 0; i < v.size(); ++i) f.add(Mask{1} << i, v[i]);
  return f;
}

Eigen::VectorXd components(const KForm& one) {
  if (one.degree() != 1) throw Error(ErrorKind::DegreeMismatch, "expected a 1-form");
  return one.to_vector();
}

Eigen::MatrixXd two_form_matrix(const KForm& a) {
  if (a.degree() != 2) throw Error(ErrorKind::DegreeMismatch, "expected a 2-form");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(a.dim(), a.dim());
  for (const auto& [m, c] : a.terms()) {
    const auto idx = indices_of(m);
    A(idx[0] - 1, idx[1] - 1) = c;
    A(idx[1] - 1, idx[0] - 1) = -c;
  }
  return A;
}

KForm two_form(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  KForm f(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) f.add((Mask{1} << i) | (Mask{1} << j), 0.5 * (A(i, j) - A(j, i)));
  return f;
}

}  // namespace g2t
