#pragma once

#include <Eigen/Dense>

#include <optional>

#include "g2t/algebra.hpp"
#include "g2t/g2.hpp"
#include "g2t/kform.hpp"
#include "g2t/metric.hpp"

namespace g2t {

// Hitchin's endomorphism K of a 3-form in dimension 6, computed against the
// coordinate volume volume_sign * e^{1..6}:
//   K(v)^i volume_sign e^{1..6} = i_v psi ^ psi ^ e^i.
Eigen::MatrixXd hitchin_k(const KForm& psi_plus, int volume_sign = 1);
// lambda(psi) = tr(K^2) / 6; independent of the volume sign.
double hitchin_lambda(const KForm& psi_plus);

// Pullback by an endomorphism, (J a)(x_1..x_k) = a(J x_1, .., J x_k).
KForm apply_endomorphism(const Eigen::MatrixXd& J, const KForm& a);

struct SU3Structure {
  AlgebraSpec alg;  // 6-dimensional
  KForm omega;
  KForm psi_plus;
  KForm psi_minus;  // J psi_plus
  Eigen::MatrixXd J;
  Metric metric;  // g = omega(., J .), oriented by omega^3
  double lambda = 0.0;
};

// Validates stability, compatibility, positivity and normalization.
SU3Structure hitchin(const AlgebraSpec& alg, const KForm& omega, const KForm& psi_plus);

struct SU3Torsion {
  double w1p = 0.0;
  double w1m = 0.0;
  KForm w2p, w2m;  // in Omega^2_8
  KForm w3;        // in Omega^3_12
  KForm w4, w5;
  KForm theta_omega;  // 2 w4
  double residual = 0.0;        // least-squares misfit of the structure equations
  double theta_residual = 0.0;  // |2 w4 + J delta omega|
};

// dw  = -(3/2) w1m psi+ + (3/2) w1p psi- + w3 + w4 ^ w
// dpsi+ = w1p w^2 + *w2p + psi+ ^ w5
// dpsi- = w1m w^2 + *w2m + psi+ ^ J w5
SU3Torsion su3_torsion(const SU3Structure& s);

// Bases (coefficient vectors as columns) of Omega^2_8 and Omega^3_12.
Eigen::MatrixXd omega2_8_basis(const SU3Structure& s);
Eigen::MatrixXd omega3_12_basis(const SU3Structure& s);

struct SU3Conditions {
  bool twisted_cy = false;
  bool double_half_flat = false;
  bool g2tns = false;
  bool g2tnsdt = false;
  bool delta_w3_eq = false;
  bool cordhf = false;
  double tol = 0.0;
  double nijenhuis = 0.0;
};

SU3Conditions check_conditions(const SU3Structure& s, const SU3Torsion& t, std::optional<double> tol = std::nullopt);

// psi+ -> a psi+ + b psi-, psi- -> a psi- - b psi+.  (a, b) is normalized
// when within 1e-9 of the unit circle and rejected otherwise.
SU3Structure rotate(const SU3Structure& s, double a, double b);

// Max over covectors of |dα(X,Y) - dα(JX,JY) + d(Jα)(JX,Y) + d(Jα)(X,JY)|,
// which vanishes exactly when J is integrable.
double nijenhuis_residual(const AlgebraSpec& alg, const Eigen::MatrixXd& J);

struct SU2Structure {
  AlgebraSpec alg;  // 4-dimensional
  KForm omega;
  KForm psi_plus;
  KForm psi_minus;
  Eigen::MatrixXd J;  // omega = g(J., .)
  Metric metric;      // oriented by omega^2 / 2
};

// The metric is recovered from the triple; self-duality is then verified.
SU2Structure make_su2(const AlgebraSpec& alg, const KForm& omega, const KForm& psi_plus, const KForm& psi_minus);

struct SU2Conditions {
  bool twisted_cy = false;
  double tol = 0.0;
  KForm theta_omega;  // -J delta omega
  double nijenhuis = 0.0;
};
SU2Conditions check_conditions(const SU2Structure& s, std::optional<double> tol = std::nullopt);

// phi = omega ^ eta + psi+ on the extension by a closed central direction e^7.
G2Structure g2_product_s1(const SU3Structure& s);
G2Structure g2_product_s1(const SU3Structure& s, const AlgebraSpec& ambient);
// phi = ds^{123} + ds^1 ^ omega + ds^2 ^ psi+ - ds^3 ^ psi- with the slice on e4..e7.
G2Structure g2_product_t3(const SU2Structure& s);

struct ProductDictionary {
  KForm T_prod;  // torsion predicted from the SU(3) torsion forms
  double lambda = 0.0;
  KForm beta;    // theta = beta + lambda eta
  double g2tprod_residual = 0.0;  // |w1m - lambda/2| + |w2m| + |w5 + 2 w4| + |2 w4 - beta|
};
ProductDictionary product_dictionary(const SU3Structure& s, const SU3Torsion& t, const G2Torsion& g2);

}  // namespace g2t
