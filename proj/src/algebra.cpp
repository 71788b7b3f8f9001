#include "g2t/algebra.hpp"

namespace g2t {

namespace {

// d of a single monomial, extended as an antiderivation from the table de^i.
KForm d_monomial(const std::vector<KForm>& de, int n, Mask I) {
  const int k = popcount(I);
  KForm out(n, std::min(k + 1, n));
  if (k + 1 > n) return out;
  int p = 0;
  for (int i : indices_of(I)) {
    const Mask bit = Mask{1} << (i - 1);
    const Mask left = I & (bit - 1);
    const Mask right = I & ~(bit | (bit - 1));
    const double s = (p & 1) ? -1.0 : 1.0;
    for (const auto& [m2, c2] : de[i - 1].terms()) {
      if (m2 & (left | right)) continue;
      out.add(left | m2 | right, s * c2 * wedge_sign(left, m2) * wedge_sign(left | m2, right));
    }
    ++p;
  }
  return out;
}

}  // namespace

AlgebraSpec AlgebraSpec::from_brackets(int dim, const std::vector<Bracket>& brackets) {
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorKind::DimensionMismatch, "dimension must be in [1, 8]");
  AlgebraSpec a;
  a.dim_ = dim;
  a.by_brackets_ = true;
  a.c_.assign(dim, Eigen::MatrixXd::Zero(dim, dim));
  for (const auto& b : brackets) {
    if (b.i < 1 || b.i > dim || b.j < 1 || b.j > dim || b.k < 1 || b.k > dim)
      throw Error(ErrorKind::IndexOutOfRange, "bracket index out of range");
    if (b.i == b.j) {
      if (b.c != 0.0) throw Error(ErrorKind::InvalidParameters, "[e_i, e_i] must vanish");
      continue;
    }
    a.c_[b.k - 1](b.i - 1, b.j - 1) += b.c;
    a.c_[b.k - 1](b.j - 1, b.i - 1) -= b.c;
  }
  a.de_.assign(dim, KForm(dim, std::min(2, dim)));
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        if (a.c_[k](i, j) != 0.0) a.de_[k].add((Mask{1} << i) | (Mask{1} << j), -a.c_[k](i, j));
  a.finish();
  return a;
}

AlgebraSpec AlgebraSpec::from_coboundary(std::vector<KForm> de, std::vector<Eigen::MatrixXd> isotropy) {
  const int dim = static_cast<int>(de.size());
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorKind::DimensionMismatch, "dimension must be in [1, 8]");
  for (auto& f : de) {
    if (f.is_zero() && f.dim() == 0) f = KForm(dim, std::min(2, dim));
    if (f.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "coboundary entry in the wrong dimension");
    if (f.degree() != 2) throw Error(ErrorKind::DegreeMismatch, "coboundary entries must be 2-forms");
  }
  for (const auto& h : isotropy)
    if (h.rows() != dim || h.cols() != dim)
      throw Error(ErrorKind::DimensionMismatch, "isotropy matrices must be n x n");
  AlgebraSpec a;
  a.dim_ = dim;
  a.de_ = std::move(de);
  a.isotropy_ = std::move(isotropy);
  if (a.isotropy_.empty()) {
    a.c_.assign(dim, Eigen::MatrixXd::Zero(dim, dim));
    for (int k = 0; k < dim; ++k)
      for (const auto& [m, c] : a.de_[k].terms()) {
        const auto idx = indices_of(m);
        a.c_[k](idx[0] - 1, idx[1] - 1) = -c;
        a.c_[k](idx[1] - 1, idx[0] - 1) = c;
      }
  }
  a.finish();
  return a;
}

void AlgebraSpec::finish() {
  d_matrices_.clear();
  for (int k = 0; k < dim_; ++k) {
    const auto& from = basis_masks(dim_, k);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(binomial(dim_, k + 1), static_cast<Eigen::Index>(from.size()));
    for (std::size_t col = 0; col < from.size(); ++col) {
      const KForm f = d_monomial(de_, dim_, from[col]);
      for (const auto& [m, c] : f.terms()) D(basis_index(dim_, k + 1, m), static_cast<Eigen::Index>(col)) = c;
    }
    d_matrices_.push_back(std::move(D));
  }
  unimodular_ = dim_ == 0 || d_matrices_[dim_ - 1].cwiseAbs().maxCoeff() < 1e-12;
}

const KForm& AlgebraSpec::de(int i) const {
  if (i < 1 || i > dim_) throw Error(ErrorKind::IndexOutOfRange, "de index " + std::to_string(i));
  return de_[i - 1];
}

std::vector<Bracket> AlgebraSpec::brackets() const {
  const auto& c = structure_constants();
  std::vector<Bracket> out;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (c[k](i, j) != 0.0) out.push_back({i + 1, j + 1, k + 1, c[k](i, j)});
  return out;
}

const std::vector<Eigen::MatrixXd>& AlgebraSpec::structure_constants() const {
  if (has_isotropy())
    throw Error(ErrorKind::NotLieAlgebra, "a coboundary table with isotropy does not define brackets on m");
  return c_;
}

const Eigen::MatrixXd& AlgebraSpec::d_matrix(int k) const {
  if (k < 0 || k >= dim_) throw Error(ErrorKind::DegreeMismatch, "d_matrix degree out of range");
  return d_matrices_[k];
}

AlgebraSpec AlgebraSpec::embedded(int new_dim, int offset) const {
  if (offset < 0 || offset + dim_ > new_dim || new_dim > kMaxDim)
    throw Error(ErrorKind::DimensionMismatch, "embedding does not fit");
  std::vector<KForm> de(new_dim, KForm(new_dim, 2));
  for (int i = 0; i < dim_; ++i) de[offset + i] = de_[i].embedded(new_dim, offset);
  std::vector<Eigen::MatrixXd> iso;
  for (const auto& h : isotropy_) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(new_dim, new_dim);
    H.block(offset, offset, dim_, dim_) = h;
    iso.push_back(H);
  }
  AlgebraSpec out;
  if (by_brackets_) {
    std::vector<Bracket> br;
    for (const auto& b : brackets()) br.push_back({b.i + offset, b.j + offset, b.k + offset, b.c});
    out = from_brackets(new_dim, br);
  } else {
    out = from_coboundary(std::move(de), std::move(iso));
  }
  out.name = name;
  return out;
}

AlgebraSpec AlgebraSpec::restricted(int k) const {
  if (k < 1 || k > dim_) throw Error(ErrorKind::DimensionMismatch, "restriction size out of range");
  const Mask inside = full_mask(k);
  std::vector<KForm> de;
  for (int i = 0; i < k; ++i) {
    KForm f(k, 2);
    for (const auto& [m, c] : de_[i].terms()) {
      if (m & ~inside) throw Error(ErrorKind::InvalidParameters, "leading coordinates do not form a subalgebra");
      f.add(m, c);
    }
    de.push_back(std::move(f));
  }
  std::vector<Eigen::MatrixXd> iso;
  for (const auto& h : isotropy_) {
    if (k < dim_ && h.block(k, 0, dim_ - k, k).cwiseAbs().maxCoeff() > 1e-12)
      throw Error(ErrorKind::InvalidParameters, "isotropy does not preserve the leading coordinates");
    iso.push_back(h.topLeftCorner(k, k));
  }
  AlgebraSpec out = from_coboundary(std::move(de), std::move(iso));
  out.by_brackets_ = by_brackets_ && isotropy_.empty();
  out.name = name;
  return out;
}

}  // namespace g2t
