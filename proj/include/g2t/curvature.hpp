#pragma once

#include <Eigen/Dense>

#include <vector>

#include "g2t/algebra.hpp"
#include "g2t/metric.hpp"

namespace g2t {

// Left-invariant connection: nabla_{e_i} e_j = sum_k gamma[i](k, j) e_k.
struct Connection {
  std::vector<Eigen::MatrixXd> gamma;
  int dim() const { return static_cast<int>(gamma.size()); }
};

// Koszul formula on left-invariant fields (requires brackets, i.e. no isotropy).
Connection levi_civita(const AlgebraSpec& alg, const Metric& m);
// nabla = nabla^g + (1/2) g^{-1} T for a 3-form T.
Connection connection_with_torsion(const AlgebraSpec& alg, const Metric& m, const KForm& T);

struct Curvature {
  int n = 0;
  // r[((i * n + j) * n + l) * n + k] = e^k(R(e_i, e_j) e_l)
  std::vector<double> r;
  Eigen::MatrixXd ricci;
  double scalar = 0.0;

  double operator()(int i, int j, int l, int k) const { return r[((i * n + j) * n + l) * n + k]; }
  double max_abs() const;
};

// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
Curvature curvature(const AlgebraSpec& alg, const Connection& c, const Metric& m);

// Torsion 3-form g(Tor(X,Y),Z) of a connection; checks skew-symmetry.
Eigen::MatrixXd torsion_tensor(const AlgebraSpec& alg, const Connection& c, int k);

}  // namespace g2t
