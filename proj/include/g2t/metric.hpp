#pragma once

#include <Eigen/Dense>

#include "g2t/algebra.hpp"
#include "g2t/kform.hpp"

namespace g2t {

/// Positive-definite inner product on the tangent space together with an
/// orientation.  The Riemannian volume form is
///   dV = orientation * volume_scale * e^{1...n},  volume_scale = sqrt(det g).
struct Metric {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  double volume_scale = 1.0;
  int orientation = 1;

  int dim() const { return static_cast<int>(g.rows()); }
};

// Validates definiteness with an LDL^T pivot test (pivots > 1e-10 |g|).
Metric make_metric(const Eigen::MatrixXd& g, int orientation = 1);
bool is_positive_definite(const Eigen::MatrixXd& g);

// b_phi(v, w) = (1/6) i_v phi ^ i_w phi ^ phi, as a matrix against e^{1..7}.
Eigen::MatrixXd g2_bilinear(const KForm& phi);
// Metric and orientation induced by a definite 3-form in dimension 7.
Metric metric_from_3form(const KForm& phi);
// Metric induced by a definite 4-form; the orientation is not determined by
// psi and is taken from the caller.
Metric metric_from_4form(const KForm& psi, int orientation = 1);
// Sign of det B for a 4-form (the quantity tracked for orientation flips).
int four_form_sign(const KForm& psi);

KForm volume_form(const Metric& m);
// Matrix of the induced inner product on k-forms (basis_masks order).
Eigen::MatrixXd form_gram(const Metric& m, int k);
double inner(const Metric& m, const KForm& a, const KForm& b);
double norm(const Metric& m, const KForm& a);

// b ^ *a = <b, a> dV.
KForm hodge_star(const Metric& m, const KForm& a);
Eigen::MatrixXd hodge_matrix(const Metric& m, int k);

// delta = (-1)^{n(k+1)+1} * d * on k-forms.
KForm codifferential(const AlgebraSpec& alg, const Metric& m, const KForm& a);
KForm hodge_laplacian(const AlgebraSpec& alg, const Metric& m, const KForm& a);

// Index raising/lowering between 1-forms and vectors.
Eigen::VectorXd sharp(const Metric& m, const KForm& one);
KForm flat(const Metric& m, const Eigen::VectorXd& v);

}  // namespace g2t
