#pragma once

// Built-in Lie algebras and reductive homogeneous spaces, with the structure
// families living on them.
//
// Homogeneous spaces are built from explicit matrix bases of m and h: the
// coboundary table is the m-projection of the brackets and the isotropy
// matrices are ad(h) restricted to m.

#include <Eigen/Dense>

#include <array>
#include <map>
#include <string>
#include <vector>

#include "g2t/algebra.hpp"
#include "g2t/kform.hpp"
#include "g2t/su3.hpp"

namespace g2t {

struct CatalogEntry {
  std::string name;
  AlgebraSpec alg;
  std::map<std::string, KForm> forms;
  // Ordered bases of invariant-form Ansatz spaces (used by the coflow).
  std::map<std::string, std::vector<KForm>> spans;
  std::string notes;
};

// The eleven entry names; "aw(p,q)" stands for the whole Aloff-Wallach series.
const std::vector<std::string>& catalog_names();

// Accepts every listed name, with aw(p,q) instantiated as e.g. "aw(2,1)".
// Throws UnknownName or InvalidParameters.
CatalogEntry builtin(const std::string& name);

// m-projection of the brackets of complex matrices.  m and h must span a
// reductive pair; extra_central adds closed central directions after m.
AlgebraSpec from_matrix_basis(const std::vector<Eigen::MatrixXcd>& m, const std::vector<Eigen::MatrixXcd>& h,
                              int extra_central = 0);

// Aloff-Wallach G2T family a1 e123 - a1 e145 + a1 e167 + a4 gamma1 + a5 gamma2.
struct AWParams {
  int p = 1;
  int q = 1;
  double a1 = 1.0;
  double a4 = 0.0;
  double a5 = 1.0;
};

// Closed-form torsion of the member, to be compared with module g2.
struct AWFamilyMember {
  AlgebraSpec alg;
  KForm phi;
  KForm predicted_T;
  double predicted_tau0 = 0.0;
  KForm predicted_theta;
};

AWFamilyMember aw_family(const AWParams& params);

// phi = mu (e123 - e1 ^ omega1) + e2 ^ beta2 + e3 ^ beta3 with
// beta_k = beta_k[0] omega0 + beta_k[1] omega2 + beta_k[2] omega3.
// omega0 is not invariant on s7_sp2, so its coefficients must vanish there.
struct ObstructionParams {
  double mu = 1.0;
  std::array<double, 3> beta2{0.0, 0.0, -1.0};
  std::array<double, 3> beta3{0.0, -1.0, 0.0};
};

KForm obstruction_phi(const std::string& space, const ObstructionParams& params);

struct ObstructionResiduals {
  double r_e23 = 0.0;     // *T ^ e23 = r_e23 e234567
  double r_omega1 = 0.0;  // *T ^ omega1 = r_omega1 e234567
  double tau0 = 0.0;
  double lambda = 0.0;  // theta = lambda e1
  double lambda4567 = 0.0;  // *phi ^ e23 = lambda4567 e234567
};

// Throws NotDefinite, ZeroLeeForm, or NotG2T when phi leaves the family.
ObstructionResiduals obstruction_residuals(const std::string& space, const ObstructionParams& params);

// Double half-flat family on the slice n = m' + R e6 of v42_t2.
struct DHFParams {
  double b0 = 0.0;
  double b2 = 1.0;
  double c0 = 0.0;
  double c1 = 1.0;
  int eps = 1;
};

struct DHFMember {
  SU3Structure s;
  double a3 = 0.0;
  double a4 = 0.0;
  double lambda = 0.0;
  double w1m = 0.0;  // closed-form w1^-
};

// Printed quartic 4 (b0^2 c1^2 + (b2^2 + b3^2)(c0^2 - c1^2)).
double dhf_lambda_formula(double b0, double b2, double b3, double c0, double c1);
// psi+ = (b0 omega0 + b2 omega2 + b3 omega3) ^ e5 + (c0 omega0 + c1 omega1) ^ e6.
KForm dhf_psi_plus(double b0, double b2, double b3, double c0, double c1);

DHFMember dhf_family(const DHFParams& params);

// d *6 d omega + 2 (w1^-)^2 omega^2 for the assembled member.
KForm dhf_nonexistence_form(const DHFMember& member);
// Coefficient norm of the form above divided by that of omega; invariant
// under rescaling the structure.
double dhf_nonexistence_residual(const DHFParams& params);

// Conjugation by exp(t e5) on the slice, with t chosen so that the omega2
// component of omega vanishes.  Returns the rotated (omega, psi+).
std::pair<KForm, KForm> dhf_gauge_normalize(const KForm& omega, const KForm& psi_plus);

}  // namespace g2t
