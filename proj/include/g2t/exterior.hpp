#pragma once

#include <Eigen/Dense>

#include <vector>

#include "g2t/algebra.hpp"
#include "g2t/kform.hpp"

namespace g2t {

// Exterior derivative of a left-invariant (or H-invariant) form.
// Throws NotInvariant when the algebra carries isotropy and the input is not
// annihilated by it.
KForm d(const AlgebraSpec& alg, const KForm& a);

// Interior products.  For multivectors, e_I contracted into e^J gives
// e^{J\I} with the sign making e^J = sign * e^I ^ e^{J\I}.
KForm contract(const Eigen::VectorXd& v, const KForm& a);
KForm contract(const MultiVector& x, const KForm& a);
MultiVector contract(const KForm& a, const MultiVector& x);

// Infinitesimal action (h.a)(x_1..x_k) = -sum_i a(.., h x_i, ..).
KForm isotropy_action(const Eigen::MatrixXd& h, const KForm& a);
Eigen::MatrixXd isotropy_action_matrix(const Eigen::MatrixXd& h, int n, int k);
// Largest coefficient of h.a over all isotropy generators.
double invariance_defect(const AlgebraSpec& alg, const KForm& a);

// Orthonormal (coefficient inner product) basis of the invariant k-forms.
std::vector<KForm> invariant_subspace(const AlgebraSpec& alg, int k);

// max |d(d b)| over de^i, or over invariant forms of all degrees when the
// algebra carries isotropy.
double d_squared_residual(const AlgebraSpec& alg);

// k-th compound matrix: entry (I, J) is det M[I, J].
Eigen::MatrixXd compound(const Eigen::MatrixXd& M, int k);
// Pullback along the linear map A (A e_i = sum_j A(j, i) e_j).
KForm pullback(const Eigen::MatrixXd& A, const KForm& a);

// Covector <-> coefficient vector helpers.
KForm one_form(const Eigen::VectorXd& v);
Eigen::VectorXd components(const KForm& one);

// Antisymmetric matrix A(i, j) = a(e_i, e_j) of a 2-form, and back.
Eigen::MatrixXd two_form_matrix(const KForm& a);
KForm two_form(const Eigen::MatrixXd& A);

}  // namespace g2t
