#pragma once

// Dense reference implementations used to check the sparse engine.  Forms
// are stored as full antisymmetric component arrays a[i1..ik] = a(e_i1..e_ik)
// and every operation is the textbook index formula, so nothing here shares
// code with the bitmask implementation.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "g2t/algebra.hpp"
#include "g2t/kform.hpp"

namespace oracle {

struct Tensor {
  int n = 0;
  int k = 0;
  std::vector<double> a;

  Tensor(int n_, int k_) : n(n_), k(k_), a(static_cast<std::size_t>(std::pow(n_, k_)), 0.0) {}

  std::size_t flat(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (int i : idx) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    return f;
  }
  double& at(const std::vector<int>& idx) { return a[flat(idx)]; }
  double at(const std::vector<int>& idx) const { return a[flat(idx)]; }
};

inline int perm_sign(std::vector<int> p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
      else if (p[i] == p[j]) return 0;
  return s;
}

// Calls f(idx) for every tuple in {0..n-1}^k.
template <class F>
void for_each_tuple(int n, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    f(idx);
    int p = k - 1;
    while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == n) idx[static_cast<std::size_t>(p--)] = 0;
    if (p < 0) return;
  }
}

// Calls f(idx) for every strictly increasing tuple of length k.
template <class F>
void for_each_combination(int n, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    int p = k - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == n - k + p) --p;
    if (p < 0) return;
    ++idx[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
}

inline Tensor tensor(const g2t::KForm& f) {
  Tensor t(f.dim(), f.degree());
  for_each_tuple(f.dim(), f.degree(), [&](const std::vector<int>& idx) {
    const int s = perm_sign(idx);
    if (s == 0) return;
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> one_based;
    for (int i : sorted) one_based.push_back(i + 1);
    t.at(idx) = s * f[g2t::mask_of(one_based)];
  });
  return t;
}

inline g2t::KForm form(const Tensor& t) {
  g2t::KForm f(t.n, t.k);
  for_each_combination(t.n, t.k, [&](const std::vector<int>& idx) {
    std::vector<int> one_based;
    for (int i : idx) one_based.push_back(i + 1);
    f.add(g2t::mask_of(one_based), t.at(idx));
  });
  return f;
}

inline double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

// (a ^ b)_{i1..ip+q} = 1/(p! q!) sum_sigma sgn(sigma) a_{sigma(1..p)} b_{sigma(p+1..p+q)}
inline g2t::KForm wedge(const g2t::KForm& fa, const g2t::KForm& fb) {
  const Tensor a = tensor(fa), b = tensor(fb);
  const int p = a.k, q = b.k, n = a.n;
  Tensor out(n, p + q);
  std::vector<int> perm(static_cast<std::size_t>(p + q));
  for_each_combination(n, p + q, [&](const std::vector<int>& idx) {
    std::iota(perm.begin(), perm.end(), 0);
    double s = 0;
    do {
      std::vector<int> ia, ib;
      for (int i = 0; i < p; ++i) ia.push_back(idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
      for (int i = p; i < p + q; ++i) ib.push_back(idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
      s += perm_sign(perm) * (p ? a.at(ia) : a.a[0]) * (q ? b.at(ib) : b.a[0]);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.at(idx) = s / (factorial(p) * factorial(q));
  });
  return form(out);
}

// (i_v a)_{i2..ik} = v^i a_{i i2..ik}
inline g2t::KForm contract(const Eigen::VectorXd& v, const g2t::KForm& fa) {
  const Tensor a = tensor(fa);
  Tensor out(a.n, a.k - 1);
  for_each_tuple(a.n, a.k - 1, [&](const std::vector<int>& idx) {
    double s = 0;
    for (int i = 0; i < a.n; ++i) {
      std::vector<int> full{i};
      full.insert(full.end(), idx.begin(), idx.end());
      s += v[i] * a.at(full);
    }
    if (a.k == 1) out.a[0] = s;
    else out.at(idx) = s;
  });
  return form(out);
}

// Chevalley-Eilenberg: da(X0..Xk) = sum_{i<j} (-1)^{i+j} a([Xi,Xj], X0..^i..^j..Xk).
struct Brackets {
  int n;
  std::vector<double> c;  // c[(i*n + j)*n + k] = e_k component of [e_i, e_j]
  explicit Brackets(int n_) : n(n_), c(static_cast<std::size_t>(n_ * n_ * n_), 0.0) {}
  void set(int i, int j, int k, double v) {  // 1-based, antisymmetric
    c[static_cast<std::size_t>(((i - 1) * n + (j - 1)) * n + (k - 1))] = v;
    c[static_cast<std::size_t>(((j - 1) * n + (i - 1)) * n + (k - 1))] = -v;
  }
  double operator()(int i, int j, int k) const { return c[static_cast<std::size_t>((i * n + j) * n + k)]; }
};

inline g2t::KForm d(const Brackets& br, const g2t::KForm& fa) {
  const Tensor a = tensor(fa);
  const int n = a.n, k = a.k;
  Tensor out(n, k + 1);
  for_each_tuple(n, k + 1, [&](const std::vector<int>& X) {
    double s = 0;
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        std::vector<int> rest;
        for (int l = 0; l <= k; ++l)
          if (l != i && l != j) rest.push_back(X[static_cast<std::size_t>(l)]);
        const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        for (int m = 0; m < n; ++m) {
          const double c = br(X[static_cast<std::size_t>(i)], X[static_cast<std::size_t>(j)], m);
          if (c == 0.0) continue;
          std::vector<int> args{m};
          args.insert(args.end(), rest.begin(), rest.end());
          s += sign * c * a.at(args);
        }
      }
    out.at(X) = s;
  });
  return form(out);
}

// (*a)_{j1..j(n-k)} = sqrt(det g)/k! a^{i1..ik} eps_{i1..ik j1..j(n-k)}, times the orientation.
// Both factors are antisymmetric in I, so the k! ordered tuples collapse to one
// increasing tuple; a^I is still raised over every ordered J.
inline g2t::KForm hodge(const Eigen::MatrixXd& g, int orientation, const g2t::KForm& fa) {
  const int n = fa.dim(), k = fa.degree();
  const Eigen::MatrixXd gi = g.inverse();
  const Tensor a = tensor(fa);
  std::vector<std::pair<std::vector<int>, double>> up;
  if (k == 0) {
    up.push_back({{}, a.a[0]});
  } else {
    for_each_combination(n, k, [&](const std::vector<int>& I) {
      double s = 0;
      for_each_tuple(n, k, [&](const std::vector<int>& J) {
        double w = a.at(J);
        if (w == 0.0) return;
        for (int l = 0; l < k; ++l) w *= gi(I[static_cast<std::size_t>(l)], J[static_cast<std::size_t>(l)]);
        s += w;
      });
      up.push_back({I, s});
    });
  }
  Tensor out(n, n - k);
  const double vol = orientation * std::sqrt(g.determinant());
  for_each_combination(n, n - k, [&](const std::vector<int>& Jt) {
    double s = 0;
    for (const auto& [I, v] : up) {
      std::vector<int> all = I;
      all.insert(all.end(), Jt.begin(), Jt.end());
      s += perm_sign(all) * v;
    }
    if (n - k == 0) out.a[0] = vol * s;
    else out.at(Jt) = vol * s;
  });
  return form(out);
}

// b_phi(v, w) = (1/6) (i_v phi ^ i_w phi ^ phi)_{1..7} and g = det(b)^{-1/9} b.
inline Eigen::MatrixXd b_phi(const g2t::KForm& phi) {
  Eigen::MatrixXd b(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      const g2t::KForm top = oracle::wedge(oracle::wedge(oracle::contract(Eigen::VectorXd::Unit(7, i), phi), oracle::contract(Eigen::VectorXd::Unit(7, j), phi)), phi);
      b(i, j) = top[g2t::full_mask(7)] / 6.0;
    }
  return b;
}

inline Eigen::MatrixXd g_phi(const g2t::KForm& phi) {
  const Eigen::MatrixXd b = b_phi(phi);
  const double det = b.determinant();
  Eigen::MatrixXd g = std::pow(std::abs(det), -1.0 / 9.0) * b;
  if (det < 0) g = -g;  // negative orientation: b is negative definite
  return g;
}

inline g2t::KForm random_form(std::mt19937& rng, int n, int k, double density = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
  g2t::KForm f(n, k);
  for (g2t::Mask m : g2t::basis_masks(n, k))
    if (coin(rng) < density) f.add(m, u(rng));
  return f;
}

inline Eigen::MatrixXd random_spd(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = (i == j ? 1.0 : 0.0) + u(rng);
  return A.transpose() * A;
}

inline Eigen::MatrixXd random_basis_change(std::mt19937& rng, int n, double spread = 0.5) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) += u(rng);
  return A;
}

// Brackets read off the coboundary table: de^k = -sum_{i<j} c^k_ij e^{ij}.
inline Brackets brackets_of(const g2t::AlgebraSpec& alg) {
  const int n = alg.dim();
  Brackets br(n);
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const double c = alg.de(k)[g2t::mask_of({i, j})];
        if (c != 0.0) br.set(i, j, k, -c);
      }
  return br;
}

// Components of a form on the vectors f_m = sum_l C(l, m) e_l.
inline g2t::KForm change_frame(const g2t::KForm& fa, const Eigen::MatrixXd& C) {
  const Tensor a = tensor(fa);
  const int n = a.n, k = a.k;
  if (k == 0) return fa;
  Tensor out(n, k);
  for_each_combination(n, k, [&](const std::vector<int>& I) {
    double s = 0;
    for_each_tuple(n, k, [&](const std::vector<int>& J) {
      double w = a.at(J);
      if (w == 0.0) return;
      for (int l = 0; l < k; ++l) w *= C(J[static_cast<std::size_t>(l)], I[static_cast<std::size_t>(l)]);
      s += w;
    });
    out.at(I) = s;
  });
  return form(out);
}

// The same Lie algebra written in the frame f_m = sum_l C(l, m) e_l.
inline g2t::AlgebraSpec change_frame(const g2t::AlgebraSpec& alg, const Eigen::MatrixXd& C) {
  const int n = alg.dim();
  const Eigen::MatrixXd Cinv = C.inverse();  // f^m = sum_l Cinv(m, l) e^l
  std::vector<g2t::KForm> de;
  for (int m = 0; m < n; ++m) {
    g2t::KForm df(n, 2);
    for (int l = 0; l < n; ++l) df = df + Cinv(m, l) * alg.de(l + 1);
    de.push_back(change_frame(df, C));
  }
  return g2t::AlgebraSpec::from_coboundary(de);
}

// Scalar curvature of a left-invariant metric in an orthonormal frame u:
// s = -1/4 sum |c_ab^c|^2 - 1/2 sum_a B(u_a, u_a) - sum_a tr(ad u_a)^2.
inline double scalar_curvature(const g2t::AlgebraSpec& alg, const Eigen::MatrixXd& g) {
  const int n = alg.dim();
  const Brackets br = brackets_of(alg);
  const Eigen::MatrixXd L = g.llt().matrixL();
  const Eigen::MatrixXd U = L.transpose().inverse(), Uinv = U.inverse();
  std::vector<Eigen::MatrixXd> ad(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));  // ad[a](c, b)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double w = U(i, a) * U(j, b);
          if (w == 0.0) continue;
          for (int k = 0; k < n; ++k) {
            const double c = br(i, j, k);
            if (c != 0.0) ad[static_cast<std::size_t>(a)].col(b) += w * c * Uinv.col(k);
          }
        }
  double s = 0;
  for (const auto& A : ad) s += -0.25 * A.squaredNorm() - 0.5 * (A * A).trace() - A.trace() * A.trace();
  return s;
}

// Independent torsion: every operation is the dense index formula.
struct Torsion {
  double tau0;
  g2t::KForm theta, T;
};

inline Torsion torsion(const g2t::AlgebraSpec& alg, const g2t::KForm& phi) {
  const Brackets br = brackets_of(alg);
  const Eigen::MatrixXd g = g_phi(phi);
  const int o = b_phi(phi).determinant() > 0 ? 1 : -1;
  auto star = [&](const g2t::KForm& a) { return hodge(g, o, a); };
  const g2t::KForm dphi = d(br, phi);
  Torsion out;
  const double s = star(wedge(dphi, phi))[0];
  out.tau0 = s / 7.0;
  out.theta = (-1.0 / 3.0) * star(wedge(star(dphi), phi));
  out.T = (s / 6.0) * phi - star(dphi) + star(wedge(out.theta, phi));
  return out;
}

inline double max_diff(const g2t::KForm& a, const g2t::KForm& b) { return (a.to_vector() - b.to_vector()).cwiseAbs().maxCoeff(); }

}  // namespace oracle
