#pragma once

// Sparse exterior forms on an n-dimensional real vector space (n <= 8).
//
// A monomial e^{i1...ik} (i1 < ... < ik) is stored as a bitmask with bit
// (i-1) set for every index i.  Indices are 1-based everywhere in the public
// interface, matching the way structure equations are written by hand.

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "g2t/errors.hpp"

namespace g2t {

using Mask = std::uint32_t;

constexpr int kMaxDim = 8;
constexpr double kDropTol = 1e-14;

Mask mask_of(std::initializer_list<int> indices);
Mask mask_of(const std::vector<int>& indices);
std::vector<int> indices_of(Mask m);
inline int popcount(Mask m) { return std::popcount(m); }
inline Mask full_mask(int n) { return (Mask{1} << n) - 1; }

// Sign of e^a ^ e^b relative to e^{a|b}.  The masks must be disjoint.
inline int wedge_sign(Mask a, Mask b) {
  int swaps = 0;
  while (b) {
    const int j = std::countr_zero(b);
    b &= b - 1;
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

int binomial(int n, int k);
// Degree-k monomials in lexicographic order of their index tuples.
const std::vector<Mask>& basis_masks(int n, int k);
int basis_index(int n, int k, Mask m);

template <bool Contravariant>
class BasicForm {
 public:
  using Terms = std::map<Mask, double>;

  BasicForm() = default;
  BasicForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxDim) throw Error(ErrorKind::DimensionMismatch, "dimension must be in [0, 8]");
    if (degree < 0 || degree > dim) throw Error(ErrorKind::DegreeMismatch, "degree out of range");
  }

  static BasicForm monomial(int dim, std::initializer_list<int> indices, double c = 1.0) {
    BasicForm f(dim, static_cast<int>(indices.size()));
    f.add_indices(std::vector<int>(indices), c);
    return f;
  }

  static BasicForm from_vector(int dim, int degree, const Eigen::VectorXd& v) {
    BasicForm f(dim, degree);
    const auto& masks = basis_masks(dim, degree);
    if (static_cast<std::size_t>(v.size()) != masks.size())
      throw Error(ErrorKind::DimensionMismatch, "coefficient vector has wrong length");
    for (std::size_t i = 0; i < masks.size(); ++i) f.add(masks[i], v[static_cast<Eigen::Index>(i)]);
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double operator[](Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
  }
  double coeff(std::initializer_list<int> indices) const {
    std::vector<int> idx(indices);
    const int s = sort_sign(idx);
    return s * (*this)[mask_of(idx)];
  }

  // Accumulate c on a monomial given by its mask.
  void add(Mask m, double c) {
    if (popcount(m) != degree_ || (m & ~full_mask(dim_)))
      throw Error(ErrorKind::IndexOutOfRange, "monomial does not fit this form");
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kDropTol) terms_.erase(it);
  }

  // Accumulate c e^{i1...ik} for an arbitrary (unsorted) index tuple.
  void add_indices(std::vector<int> idx, double c) {
    for (int i : idx)
      if (i < 1 || i > dim_) throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i));
    const int s = sort_sign(idx);
    if (s == 0) return;
    add(mask_of(idx), s * c);
  }

  Eigen::VectorXd to_vector() const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(binomial(dim_, degree_));
    for (const auto& [m, c] : terms_) v[basis_index(dim_, degree_, m)] = c;
    return v;
  }

  double max_norm() const {
    double r = 0;
    for (const auto& t : terms_) r = std::max(r, std::abs(t.second));
    return r;
  }
  // Euclidean norm of the coefficient vector.
  double coeff_norm() const {
    double r = 0;
    for (const auto& t : terms_) r += t.second * t.second;
    return std::sqrt(r);
  }

  BasicForm& prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = std::abs(it->second) < tol ? terms_.erase(it) : std::next(it);
    return *this;
  }

  // Same form viewed in a larger space, indices shifted by offset.
  BasicForm embedded(int new_dim, int offset) const {
    if (offset < 0 || offset + dim_ > new_dim)
      throw Error(ErrorKind::DimensionMismatch, "embedding does not fit");
    BasicForm out(new_dim, degree_);
    for (const auto& [m, c] : terms_) out.add(m << offset, c);
    return out;
  }

  BasicForm& operator+=(const BasicForm& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  BasicForm& operator-=(const BasicForm& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  BasicForm& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= s;
    return prune(kDropTol);
  }

  friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
  friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
  friend BasicForm operator-(BasicForm a) { return a *= -1.0; }
  friend BasicForm operator*(double s, BasicForm a) { return a *= s; }
  friend BasicForm operator*(BasicForm a, double s) { return a *= s; }

 private:
  void check_same(const BasicForm& o) const {
    if (o.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "forms live in different dimensions");
    if (o.degree_ != degree_) throw Error(ErrorKind::DegreeMismatch, "forms have different degrees");
  }

  // Bubble sort returning the permutation sign, 0 on a repeated index.
  static int sort_sign(std::vector<int>& idx) {
    int s = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j + 1 < idx.size() - i; ++j) {
        if (idx[j] == idx[j + 1]) return 0;
        if (idx[j] > idx[j + 1]) {
          std::swap(idx[j], idx[j + 1]);
          s = -s;
        }
      }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] == idx[i + 1]) return 0;
    return s;
  }

  int dim_ = 0;
  int degree_ = 0;
  Terms terms_;
};

using KForm = BasicForm<false>;
using MultiVector = BasicForm<true>;

template <bool C>
BasicForm<C> wedge(const BasicForm<C>& a, const BasicForm<C>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "wedge of forms in different dimensions");
  if (a.degree() + b.degree() > a.dim()) throw Error(ErrorKind::DegreeMismatch, "wedge exceeds top degree");
  BasicForm<C> out(a.dim(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (!(ma & mb)) out.add(ma | mb, wedge_sign(ma, mb) * ca * cb);
  return out;
}

// Human-readable form such as "e123 + e456 - 0.5 e12".
std::string format_form(const KForm& f, int precision = 12);
// Parses the format above (also accepts '*' between coefficient and monomial).
KForm parse_form(int dim, std::string_view text);

}  // namespace g2t
