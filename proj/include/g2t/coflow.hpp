#pragma once

// Laplacian coflow d/dt psi = Delta_psi psi restricted to a finite span of
// invariant 4-forms.

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "g2t/algebra.hpp"
#include "g2t/kform.hpp"

namespace g2t {

struct FlowProblem {
  AlgebraSpec alg;
  std::vector<KForm> span;  // degree 4, linearly independent
  Eigen::VectorXd psi0;     // coefficients of psi(0) in the span
  double t_end = 1.0;       // may be negative for backward runs
  double dt = 1e-3;
  double tol_closure = 1e-8;
  // Orientation of phi(t) = *psi(t); 0 means "take it from psi(0)".
  int orientation = 0;
  // 1-based index sets of the associative / coassociative coordinate planes.
  std::vector<int> assoc{1, 2, 3};
  std::vector<int> coassoc{4, 5, 6, 7};
  // Local error monitor: one step against two half steps, checked every
  // `check_every` steps (0 disables it).
  int check_every = 100;
  double step_tol = 1e-6;
  // A FlowState is recorded every `sample_every` steps and at the end.
  int sample_every = 100;
};

struct FlowMonitors {
  double tau0 = 0.0;
  double lee_norm = 0.0;
  double torsion_norm = 0.0;
  double dT_norm = 0.0;
  double det_g = 0.0;
  double vol_assoc = 0.0;
  double vol_coassoc = 0.0;
  double tau2_norm = 0.0;
  KForm theta;
  KForm T;
};

struct FlowState {
  double t = 0.0;
  Eigen::VectorXd coeffs;
  FlowMonitors monitors;
};

KForm assemble(const FlowProblem& p, const Eigen::VectorXd& coeffs);

// Coordinates of psi in the span; throws SpanNotClosed if psi is not in it.
Eigen::VectorXd span_coordinates(const std::vector<KForm>& span, const KForm& psi, double tol = 1e-8);

// Orientation used for phi(t) = *psi(t) (p.orientation, +1 when unset).
// Orientation flips are detected through the sign of det B relative to psi(0).
int initial_orientation(const FlowProblem& p);

// Delta psi projected on the span.  Throws SpanNotClosed, OrientationFlip or
// NotDefinite.
Eigen::VectorXd rhs(const FlowProblem& p, const Eigen::VectorXd& coeffs);

FlowMonitors monitors(const FlowProblem& p, const Eigen::VectorXd& coeffs);

// Classical RK4 with |t_end| / dt rounded up to a whole number of equal
// steps.  Every check_every steps the step is compared with two half steps.
std::vector<FlowState> integrate(const FlowProblem& p);

// t,c1..cK,tau0,lee_norm,torsion_norm,dT_norm,det_g,vol_assoc,vol_coassoc
std::string flow_csv(const std::vector<FlowState>& states, std::size_t span_size);
void write_flow_csv(const std::string& path, const std::vector<FlowState>& states, std::size_t span_size);

// The two explicit solutions: 1 on su2_r4 (a_k = e^t, k >= 2) and 2 on
// su2su2_r (a_2 = 2 e^t - 1).
FlowProblem coflow_example(int which, double t_end = 1.0, double dt = 1e-3);

}  // namespace g2t
