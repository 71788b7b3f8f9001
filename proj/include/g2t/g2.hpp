#pragma once

#include <optional>

#include "g2t/algebra.hpp"
#include "g2t/kform.hpp"
#include "g2t/metric.hpp"

namespace g2t {

// A definite 3-form together with the data it induces.
struct G2Structure {
  AlgebraSpec alg;
  KForm phi;
  Metric metric;
  KForm psi;  // *phi

  static G2Structure make(const AlgebraSpec& alg, const KForm& phi);
};

struct Decomposition2 {
  KForm p7;
  KForm p14;
};
struct Decomposition3 {
  KForm p1;
  KForm p7;
  KForm p27;
};

// Eigenspaces of sigma -> *(sigma ^ phi): 2 on Lambda^2_7, -1 on Lambda^2_14.
Decomposition2 decompose2(const G2Structure& s, const KForm& sigma);
Decomposition3 decompose3(const G2Structure& s, const KForm& rho);

struct G2Torsion {
  KForm dphi;
  KForm dpsi;
  double tau0 = 0.0;
  KForm tau1;
  KForm tau2;
  KForm tau3;
  KForm theta;  // Lee form 4 tau1
  KForm T;      // (1/6) *(dphi ^ phi) phi - *dphi + *(theta ^ phi)
  KForm T_alt;  // (1/6) tau0 phi + *(tau1 ^ phi) - tau3

  struct Residuals {
    double tau2_fit = 0;   // least-squares misfit of d*phi = 4 tau1 ^ *phi + *tau2
    double tau3_type = 0;  // Lambda^3_1 + Lambda^3_7 part of tau3
    double T_alt = 0;      // |T - T_alt|
    double lee = 0;        // |theta + *(T ^ phi)|
    double theta_alt = 0;  // |theta + (1/3) *(*dphi ^ phi)|
  } residuals;
};

G2Torsion torsion(const G2Structure& s);

struct G2Classification {
  bool g2t = false;
  bool strong = false;
  bool coclosed = false;
  bool parallel = false;
  bool twisted = false;
  double tol = 0.0;
  double tau2_norm = 0, dT_norm = 0, dphi_norm = 0, dpsi_norm = 0, dphi_wedge_phi = 0, dtheta_norm = 0;
};

double default_tolerance(const G2Torsion& t, const Metric& m);
G2Classification classify(const G2Structure& s, const G2Torsion& t, std::optional<double> tol = std::nullopt);

struct ScalarCurvatureReport {
  std::optional<double> strong_formula;  // only for strong structures
  double bryant = 0.0;
  double residual = 0.0;  // |tau3|^2 - (7/6) tau0^2 - 12 |tau1|^2 - 4 delta tau1
  double delta_tau1 = 0.0;
};

// Throws NotG2T when tau2 does not vanish.
ScalarCurvatureReport scalar_curvature(const G2Structure& s, const G2Torsion& t, std::optional<double> tol = std::nullopt);

// Standard associative form e^{123} + e^1(e^{45}+e^{67}) + e^2(e^{46}-e^{57}) - e^3(e^{47}+e^{56}).
KForm standard_phi();

}  // namespace g2t
