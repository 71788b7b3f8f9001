#pragma once

// Structure data of a Lie algebra, or of the isotropy representation of a
// reductive homogeneous space G/H.
//
// Two sources are accepted.  Brackets [e_i, e_j] = c e_k give the
// Chevalley-Eilenberg differential through de^k = -sum_{i<j} c^k_ij e^{ij}.
// Alternatively the coboundary table de^i is given directly, optionally with
// matrices spanning the isotropy action of h on m (column convention:
// h e_i = sum_j H(j, i) e_j).  In the second case d is only meaningful on
// forms invariant under that action.

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "g2t/kform.hpp"

namespace g2t {

struct Bracket {
  int i;
  int j;
  int k;
  double c;  // [e_i, e_j] = c e_k, 1-based indices
};

class AlgebraSpec {
 public:
  AlgebraSpec() = default;

  static AlgebraSpec from_brackets(int dim, const std::vector<Bracket>& brackets);
  static AlgebraSpec from_coboundary(std::vector<KForm> de, std::vector<Eigen::MatrixXd> isotropy = {});

  int dim() const { return dim_; }
  // de^i, 1-based.
  const KForm& de(int i) const;
  const std::vector<KForm>& coboundary() const { return de_; }
  const std::vector<Eigen::MatrixXd>& isotropy() const { return isotropy_; }
  bool defined_by_brackets() const { return by_brackets_; }
  bool has_isotropy() const { return !isotropy_.empty(); }
  // d is restricted to invariant inputs exactly when isotropy is present.
  bool requires_invariance() const { return has_isotropy(); }

  // Nonzero brackets [e_i, e_j] = c e_k with i < j.  Available whenever the
  // data defines a Lie algebra (no isotropy); throws NotLieAlgebra otherwise.
  std::vector<Bracket> brackets() const;
  // c[k](i, j) = e^k([e_i, e_j]), 0-based.
  const std::vector<Eigen::MatrixXd>& structure_constants() const;

  // d: Lambda^{n-1} -> Lambda^n vanishes.
  bool unimodular() const { return unimodular_; }

  // Matrix of d: Lambda^k -> Lambda^{k+1} in the basis_masks ordering.
  const Eigen::MatrixXd& d_matrix(int k) const;

  // The algebra placed at coordinates offset+1..offset+dim inside a larger
  // space whose remaining directions are closed and central.
  AlgebraSpec embedded(int new_dim, int offset) const;
  // Leading k coordinates, which must span a subalgebra closed under d.
  AlgebraSpec restricted(int k) const;

  std::string name;

 private:
  void finish();

  int dim_ = 0;
  bool by_brackets_ = false;
  bool unimodular_ = true;
  std::vector<KForm> de_;
  std::vector<Eigen::MatrixXd> isotropy_;
  std::vector<Eigen::MatrixXd> c_;
  std::vector<Eigen::MatrixXd> d_matrices_;
};

}  // namespace g2t
