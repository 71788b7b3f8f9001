#include "g2t/catalog.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <numeric>
#include <regex>

#include "g2t/errors.hpp"
#include "g2t/exterior.hpp"
#include "g2t/g2.hpp"
#include "g2t/metric.hpp"

namespace g2t {

namespace {

using Cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
constexpr Cx kI{0.0, 1.0};

CMat entry(int n, int r, int c, Cx v) {
  CMat M = CMat::Zero(n, n);
  M(r, c) = v;
  return M;
}

// Block-diagonal matrix of the given blocks.
CMat blocks(std::initializer_list<CMat> parts) {
  int n = 0;
  for (const auto& p : parts) n += static_cast<int>(p.rows());
  CMat M = CMat::Zero(n, n);
  int o = 0;
  for (const auto& p : parts) {
    M.block(o, o, p.rows(), p.cols()) = p;
    o += static_cast<int>(p.rows());
  }
  return M;
}

CMat zero(int n) { return CMat::Zero(n, n); }

// su(2) generators sigma_1 = diag(i, -i), sigma_2 = [[0,1],[-1,0]], sigma_3 = [[0,i],[i,0]].
CMat sigma(int k) {
  CMat s(2, 2);
  if (k == 1) s << kI, 0.0, 0.0, -kI;
  if (k == 2) s << 0.0, 1.0, -1.0, 0.0;
  if (k == 3) s << 0.0, kI, kI, 0.0;
  return s;
}

// Quaternion a + bi + cj + dk as a complex 2x2 matrix.
CMat quat(double a, double b, double c, double d) {
  CMat q(2, 2);
  q << Cx(a, b), Cx(c, d), Cx(-c, d), Cx(a, -b);
  return q;
}

CMat quat_block(const CMat& A, const CMat& B, const CMat& C, const CMat& D) {
  CMat M(4, 4);
  M << A, B, C, D;
  return M;
}

Eigen::VectorXd flatten(const CMat& M) {
  const Eigen::Index s = M.size();
  Eigen::VectorXd v(2 * s);
  for (Eigen::Index i = 0; i < s; ++i) {
    v[i] = M.data()[i].real();
    v[s + i] = M.data()[i].imag();
  }
  return v;
}

// Basis of su(3) used for the Aloff-Wallach spaces: m = e1..e7, h = e8.
std::vector<CMat> aw_basis(int p, int q) {
  const double P = p, Q = q;
  std::vector<CMat> e;
  CMat d1 = CMat::Zero(3, 3);
  d1.diagonal() << kI * (-P - 2 * Q) / 3.0, kI * (2 * P + Q) / 3.0, kI * (Q - P) / 3.0;
  e.push_back(d1);
  auto pair = [](int r, int c, Cx a, Cx b) -> CMat { return entry(3, r, c, a) + entry(3, c, r, b); };
  e.push_back(pair(0, 1, 1.0, -1.0));
  e.push_back(pair(0, 1, kI, kI));
  e.push_back(pair(0, 2, 1.0, -1.0));
  e.push_back(pair(0, 2, kI, kI));
  e.push_back(pair(1, 2, 1.0, -1.0));
  e.push_back(pair(1, 2, kI, kI));
  CMat d8 = CMat::Zero(3, 3);
  d8.diagonal() << kI * P, kI * Q, -kI * (P + Q);
  e.push_back(d8);
  return e;
}

CMat diag3(Cx a, Cx b, Cx c) {
  CMat M = CMat::Zero(3, 3);
  M.diagonal() << a, b, c;
  return M;
}

std::vector<KForm> parse_list(int n, std::initializer_list<const char*> items) {
  std::vector<KForm> out;
  for (const char* s : items) out.push_back(parse_form(n, s));
  return out;
}

AlgebraSpec from_table(int n, std::initializer_list<const char*> de) {
  std::vector<KForm> forms;
  for (const char* s : de) forms.push_back(std::string(s) == "0" ? KForm(n, 2) : parse_form(n, s));
  return AlgebraSpec::from_coboundary(std::move(forms));
}

bool parse_aw(const std::string& name, int& p, int& q) {
  static const std::regex re(R"(aw\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  std::smatch m;
  if (!std::regex_match(name, m, re)) return false;
  p = std::stoi(m[1]);
  q = std::stoi(m[2]);
  return true;
}

void check_aw_pq(int p, int q) {
  if (p < q || q < 0 || p == 0 || std::gcd(p, q) != 1)
    throw Error(ErrorKind::InvalidParameters, "aw(p,q) needs p >= q >= 0 and gcd(p,q) = 1");
}

AlgebraSpec aw_algebra(int p, int q) {
  check_aw_pq(p, q);
  auto e = aw_basis(p, q);
  std::vector<CMat> m(e.begin(), e.begin() + 7);
  AlgebraSpec alg = from_matrix_basis(m, {e[7]});
  alg.name = "aw(" + std::to_string(p) + "," + std::to_string(q) + ")";
  return alg;
}

KForm aw_gamma1() { return parse_form(7, "e246 + e257 - e347 + e356"); }
KForm aw_gamma2() { return parse_form(7, "e247 - e256 + e346 + e357"); }

// Shared basis of N^{1,1} and S^7: both give de1 = -2e23 - w1, de2 = 2e13 + w2, de3 = -2e12 - w3.
AlgebraSpec n11_algebra() {
  std::vector<CMat> m;
  m.push_back(diag3(kI, -kI, 0.0));
  m.push_back(entry(3, 0, 1, -1.0) + entry(3, 1, 0, 1.0));
  m.push_back(entry(3, 0, 1, -kI) + entry(3, 1, 0, -kI));
  m.push_back(entry(3, 0, 2, 1.0) + entry(3, 2, 0, -1.0));
  m.push_back(entry(3, 1, 2, -kI) + entry(3, 2, 1, -kI));
  m.push_back(entry(3, 1, 2, -1.0) + entry(3, 2, 1, 1.0));
  m.push_back(entry(3, 0, 2, kI) + entry(3, 2, 0, kI));
  return from_matrix_basis(m, {diag3(kI, kI, -2.0 * kI)});
}

AlgebraSpec s7_algebra() {
  const CMat z = zero(2);
  const double r = 1.0 / std::sqrt(2.0);
  const CMat qi = quat(0, 1, 0, 0), qj = quat(0, 0, 1, 0), qk = quat(0, 0, 0, 1), q1 = quat(1, 0, 0, 0);
  std::vector<CMat> m = {quat_block(z, z, z, qi),           quat_block(z, z, z, qj),
                         quat_block(z, z, z, qk),           quat_block(z, r * qi, r * qi, z),
                         quat_block(z, r * qj, r * qj, z),  quat_block(z, r * qk, r * qk, z),
                         quat_block(z, r * q1, -r * q1, z)};
  std::vector<CMat> h = {quat_block(qi, z, z, z), quat_block(qj, z, z, z), quat_block(qk, z, z, z)};
  return from_matrix_basis(m, h);
}

AlgebraSpec v52_algebra() {
  auto E = [](int i, int j) { return CMat(entry(5, i - 1, j - 1, 1.0) + entry(5, j - 1, i - 1, -1.0)); };
  std::vector<CMat> m = {E(1, 4), E(2, 4), E(3, 4), E(1, 5), E(2, 5), E(3, 5), E(4, 5)};
  return from_matrix_basis(m, {E(1, 2), E(1, 3), E(2, 3)});
}

AlgebraSpec q111_algebra() {
  const CMat z = zero(2);
  std::vector<CMat> m = {blocks({sigma(2), z, z}), blocks({sigma(3), z, z}), blocks({z, sigma(2), z}),
                         blocks({z, sigma(3), z}), blocks({z, z, sigma(2)}), blocks({z, z, sigma(3)}),
                         blocks({sigma(1), sigma(1), sigma(1)})};
  std::vector<CMat> h = {blocks({sigma(1), z, -sigma(1)}), blocks({z, sigma(1), -sigma(1)})};
  return from_matrix_basis(m, h);
}

AlgebraSpec m110_algebra() {
  const auto e = aw_basis(1, 1);
  const CMat z = zero(2);
  std::vector<CMat> m;
  for (int i = 1; i <= 4; ++i) m.push_back(blocks({e[i + 2], z}));
  m.push_back(blocks({zero(3), sigma(2)}));
  m.push_back(blocks({zero(3), sigma(3)}));
  m.push_back(blocks({diag3(kI, kI, -2.0 * kI), z}));
  std::vector<CMat> h = {blocks({e[0], z}), blocks({e[1], z}), blocks({e[2], z}), blocks({e[7], 3.0 * sigma(1)})};
  return from_matrix_basis(m, h);
}

// S^5 = SU(3)/SU(2) tangent space plus two central directions.  e4 is taken
// with the sign that makes omega1..omega3 below invariant.
AlgebraSpec s5_t2_algebra() {
  std::vector<CMat> m = {entry(3, 0, 2, 1.0) + entry(3, 2, 0, -1.0), entry(3, 0, 2, kI) + entry(3, 2, 0, kI),
                         entry(3, 1, 2, -1.0) + entry(3, 2, 1, 1.0), entry(3, 1, 2, kI) + entry(3, 2, 1, kI),
                         diag3(kI, kI, -2.0 * kI)};
  std::vector<CMat> h = {diag3(kI, -kI, 0.0), entry(3, 0, 1, 1.0) + entry(3, 1, 0, -1.0),
                         entry(3, 0, 1, kI) + entry(3, 1, 0, kI)};
  return from_matrix_basis(m, h, 2);
}

AlgebraSpec v42_t2_algebra() {
  const CMat z = zero(2);
  std::vector<CMat> m = {blocks({sigma(2), z}), blocks({sigma(3), z}), blocks({z, sigma(2)}), blocks({z, sigma(3)}),
                         blocks({sigma(1), -sigma(1)})};
  return from_matrix_basis(m, {blocks({sigma(1), sigma(1)})}, 2);
}

}  // namespace

AlgebraSpec from_matrix_basis(const std::vector<CMat>& m, const std::vector<CMat>& h, int extra_central) {
  const int n = static_cast<int>(m.size());
  const int r = static_cast<int>(h.size());
  if (n == 0 || n + extra_central > kMaxDim) throw Error(ErrorKind::DimensionMismatch, "unsupported dimension");
  const Eigen::Index N = m[0].rows();
  Eigen::MatrixXd B(2 * N * N, n + r);
  for (int i = 0; i < n; ++i) B.col(i) = flatten(m[i]);
  for (int a = 0; a < r; ++a) B.col(n + a) = flatten(h[a]);
  const auto qr = B.colPivHouseholderQr();
  if (qr.rank() != n + r) throw Error(ErrorKind::NotLieAlgebra, "basis of m + h is not linearly independent");
  const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
  auto decompose = [&](const CMat& X) {
    const Eigen::VectorXd v = flatten(X);
    Eigen::VectorXd c = qr.solve(v);
    if ((B * c - v).norm() > 1e-10 * scale * scale)
      throw Error(ErrorKind::NotLieAlgebra, "bracket leaves the span of m + h");
    for (Eigen::Index i = 0; i < c.size(); ++i)
      if (std::abs(c[i]) < 1e-13) c[i] = 0.0;
    return c;
  };

  const int dim = n + extra_central;
  std::vector<KForm> de(dim, KForm(dim, 2));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd c = decompose(m[i] * m[j] - m[j] * m[i]);
      for (int k = 0; k < n; ++k)
        if (c[k] != 0.0) de[k].add(mask_of({i + 1, j + 1}), -c[k]);
    }
  std::vector<Eigen::MatrixXd> iso;
  for (const auto& X : h) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd c = decompose(X * m[i] - m[i] * X);
      if (c.tail(r).cwiseAbs().maxCoeff() > 1e-10)
        throw Error(ErrorKind::NotLieAlgebra, "[h, m] is not contained in m; the pair is not reductive");
      H.block(0, i, n, 1) = c.head(n);
    }
    iso.push_back(H);
  }
  return AlgebraSpec::from_coboundary(std::move(de), std::move(iso));
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"torus7", "su2_r4", "su2su2_r", "aw(p,q)", "n11",   "s7_sp2",
                                                 "v52",    "q111",   "m110",     "s5_t2",   "v42_t2"};
  return names;
}

CatalogEntry builtin(const std::string& name) {
  CatalogEntry out;
  out.name = name;
  int p = 0, q = 0;
  if (name == "torus7") {
    out.alg = from_table(7, {"0", "0", "0", "0", "0", "0", "0"});
    out.forms["phi"] = standard_phi();
    out.forms["psi"] = hodge_star(metric_from_3form(standard_phi()), standard_phi());
    out.notes = "abelian R^7 with the flat G2-structure";
  } else if (name == "su2_r4") {
    out.alg = from_table(7, {"0", "0", "0", "e56", "-e46", "e45", "0"});
    out.forms["phi"] = standard_phi();
    out.forms["psi"] = hodge_star(metric_from_3form(standard_phi()), standard_phi());
    out.spans["coflow"] =
        parse_list(7, {"e4567", "e2345", "e2367", "-e1346", "e1357", "-e1247", "-e1256"});
    out.notes = "su(2) + R^4, the Lie algebra of SU(2) x U(1)^4; twisted G2 example";
  } else if (name == "su2su2_r") {
    out.alg = from_table(7, {"e23", "-e13", "e12", "e56", "-e46", "e45", "0"});
    out.forms["omega"] = parse_form(7, "e14 + e25 - e36");
    out.forms["psi_plus"] = parse_form(7, "e123 + e156 - e246 - e345");
    out.forms["phi"] = parse_form(7, "e147 + e257 - e367 + e123 + e156 - e246 - e345");
    out.forms["psi"] = hodge_star(metric_from_3form(out.forms["phi"]), out.forms["phi"]);
    // Initial datum of the coflow example; *phi0 for the standard phi0.
    out.forms["psi0"] = hodge_star(metric_from_3form(standard_phi()), standard_phi());
    out.spans["coflow"] = parse_list(7, {"e4567", "e2345 + e2367 - e1346 + e1357 - e1247 - e1256"});
    out.notes = "su(2) + su(2) + R, the Lie algebra of SU(2)^2 x U(1); strong G2T example";
  } else if (parse_aw(name, p, q)) {
    out.alg = aw_algebra(p, q);
    out.name = out.alg.name;
    out.forms["gamma1"] = aw_gamma1();
    out.forms["gamma2"] = aw_gamma2();
    out.forms["sigma"] = parse_form(7, "e23 + e45 + e67");
    if (p == 1 && q == 0) {
      out.forms["gamma3"] = parse_form(7, "e126 + e137");
      out.forms["gamma4"] = parse_form(7, "e127 - e136");
    }
    out.forms["phi"] = aw_family({p, q, 1.0, 0.0, 1.0}).phi;
    out.notes = "Aloff-Wallach space SU(3)/U(1)_{p,q}";
  } else if (name == "aw(p,q)") {
    throw Error(ErrorKind::InvalidParameters, "instantiate the Aloff-Wallach series, e.g. aw(1,1)");
  } else if (name == "n11" || name == "s7_sp2") {
    const bool n11 = name == "n11";
    out.alg = n11 ? n11_algebra() : s7_algebra();
    if (n11) out.forms["omega0"] = parse_form(7, "e47 - e56");
    out.forms["omega1"] = parse_form(7, "e47 + e56");
    out.forms["omega2"] = parse_form(7, "e46 - e57");
    out.forms["omega3"] = parse_form(7, "e45 + e67");
    out.forms["phi"] = obstruction_phi(name, {});
    out.notes = n11 ? "Aloff-Wallach space N^{1,1} = SU(3)/U(1)_{1,1}" : "S^7 = Sp(2)/Sp(1)";
  } else if (name == "v52") {
    out.alg = v52_algebra();
    out.forms["de7"] = parse_form(7, "e14 + e25 + e36");
    out.notes = "Stiefel manifold V^{5,2} = SO(5)/SO(3)";
  } else if (name == "q111") {
    out.alg = q111_algebra();
    out.forms["sigma1"] = parse_form(7, "e12");
    out.forms["sigma2"] = parse_form(7, "e34");
    out.forms["sigma3"] = parse_form(7, "e56");
    out.notes = "Q^{1,1,1} = SU(2)^3/U(1)^2";
  } else if (name == "m110") {
    out.alg = m110_algebra();
    out.forms["omega"] = parse_form(7, "e12 + e34");
    out.forms["sigma"] = parse_form(7, "e56");
    out.notes = "M^{1,1,0} = SU(3) x SU(2)/SU(2) x U(1), basis f1..f7";
  } else if (name == "s5_t2" || name == "v42_t2") {
    const bool v42 = name == "v42_t2";
    out.alg = v42 ? v42_t2_algebra() : s5_t2_algebra();
    if (v42) out.forms["omega0"] = parse_form(7, "e12 + e34");
    out.forms["omega1"] = parse_form(7, "e12 - e34");
    out.forms["omega2"] = parse_form(7, "e13 + e24");
    out.forms["omega3"] = parse_form(7, "e14 - e23");
    out.notes = v42 ? "V^{4,2} x T^2 = SU(2)^2 x U(1)^2/U(1)" : "S^5 x T^2 = SU(3) x U(1)^2/SU(2)";
  } else {
    throw Error(ErrorKind::UnknownName, "no catalog entry named '" + name + "'");
  }
  out.alg.name = out.name;
  return out;
}

AWFamilyMember aw_family(const AWParams& prm) {
  check_aw_pq(prm.p, prm.q);
  const double n2 = prm.a4 * prm.a4 + prm.a5 * prm.a5;
  if (prm.a1 == 0.0 || n2 == 0.0) throw Error(ErrorKind::InvalidParameters, "need a1 != 0 and a4^2 + a5^2 != 0");
  if (prm.a5 == 0.0) throw Error(ErrorKind::InvalidParameters, "G2T members need a5 != 0");
  AWFamilyMember out;
  out.alg = aw_algebra(prm.p, prm.q);
  const double a1 = prm.a1;
  out.phi = a1 * parse_form(7, "e123 - e145 + e167") + prm.a4 * aw_gamma1() + prm.a5 * aw_gamma2();
  const double P = prm.p, Q = prm.q;
  const double c = 3.0 * a1 * a1 / ((P * P + P * Q + Q * Q) * std::pow(n2, 2.0 / 3.0));
  KForm bracket(7, 3);
  bracket.add(mask_of({1, 2, 3}), P + Q);
  bracket.add(mask_of({1, 4, 5}), Q);
  bracket.add(mask_of({1, 6, 7}), -P);
  bracket.prune(kDropTol);
  out.predicted_T = c * bracket + std::cbrt(n2) * aw_gamma1();
  out.predicted_tau0 = (24.0 / 7.0) * prm.a4 / std::pow(n2, 2.0 / 3.0);
  out.predicted_theta = KForm::monomial(7, {1}, -4.0 * a1 * prm.a5 / n2);
  return out;
}

KForm obstruction_phi(const std::string& space, const ObstructionParams& prm) {
  const bool n11 = space == "n11";
  if (!n11 && space != "s7_sp2") throw Error(ErrorKind::UnknownName, "obstruction family lives on n11 or s7_sp2");
  if (!n11 && (prm.beta2[0] != 0.0 || prm.beta3[0] != 0.0))
    throw Error(ErrorKind::InvalidParameters, "omega0 is not invariant on s7_sp2");
  const KForm w0 = parse_form(7, "e47 - e56"), w1 = parse_form(7, "e47 + e56"), w2 = parse_form(7, "e46 - e57"),
              w3 = parse_form(7, "e45 + e67");
  auto beta = [&](const std::array<double, 3>& b) { return b[0] * w0 + b[1] * w2 + b[2] * w3; };
  const KForm e1 = KForm::monomial(7, {1}), e2 = KForm::monomial(7, {2}), e3 = KForm::monomial(7, {3});
  KForm phi = prm.mu * (KForm::monomial(7, {1, 2, 3}) - wedge(e1, w1)) + wedge(e2, beta(prm.beta2)) +
              wedge(e3, beta(prm.beta3));
  phi.prune(kDropTol);
  return phi;
}

ObstructionResiduals obstruction_residuals(const std::string& space, const ObstructionParams& prm) {
  const KForm phi = obstruction_phi(space, prm);
  const AlgebraSpec alg = space == "n11" ? n11_algebra() : s7_algebra();
  if (prm.mu == 0.0) throw Error(ErrorKind::NotDefinite, "mu = 0 gives a degenerate form");
  const G2Structure s = G2Structure::make(alg, phi);
  const G2Torsion t = torsion(s);
  const auto cls = classify(s, t);
  if (!cls.g2t) throw Error(ErrorKind::NotG2T, "family member is not of type G2T");
  ObstructionResiduals r;
  r.tau0 = t.tau0;
  r.lambda = t.theta[mask_of({1})];
  const double other = (t.theta - KForm::monomial(7, {1}, r.lambda)).max_norm();
  if (std::abs(r.lambda) < cls.tol) throw Error(ErrorKind::ZeroLeeForm, "Lee form vanishes (coclosed member)");
  if (other > 1e-8 * std::max(1.0, std::abs(r.lambda)))
    throw Error(ErrorKind::NotG2T, "Lee form is not proportional to e1");
  const KForm starT = hodge_star(s.metric, t.T);
  const Mask top = mask_of({2, 3, 4, 5, 6, 7});
  r.r_e23 = wedge(starT, KForm::monomial(7, {2, 3}))[top];
  r.r_omega1 = wedge(starT, parse_form(7, "e47 + e56"))[top];
  r.lambda4567 = wedge(s.psi, KForm::monomial(7, {2, 3}))[top];
  return r;
}

double dhf_lambda_formula(double b0, double b2, double b3, double c0, double c1) {
  return 4.0 * (b0 * b0 * c1 * c1 + (b2 * b2 + b3 * b3) * (c0 * c0 - c1 * c1));
}

KForm dhf_psi_plus(double b0, double b2, double b3, double c0, double c1) {
  const KForm w0 = parse_form(6, "e12 + e34"), w1 = parse_form(6, "e12 - e34"), w2 = parse_form(6, "e13 + e24"),
              w3 = parse_form(6, "e14 - e23");
  KForm psi = wedge(b0 * w0 + b2 * w2 + b3 * w3, KForm::monomial(6, {5})) +
              wedge(c0 * w0 + c1 * w1, KForm::monomial(6, {6}));
  psi.prune(kDropTol);
  return psi;
}

namespace {

const AlgebraSpec& dhf_slice() {
  static const AlgebraSpec slice = [] {
    AlgebraSpec a = v42_t2_algebra().restricted(6);
    a.name = "v42_t2 slice";
    return a;
  }();
  return slice;
}

}  // namespace

DHFMember dhf_family(const DHFParams& prm) {
  const double b0 = prm.b0, b2 = prm.b2, c0 = prm.c0, c1 = prm.c1;
  if (prm.eps != 1 && prm.eps != -1) throw Error(ErrorKind::InvalidParameters, "eps must be +1 or -1");
  if (b2 == 0.0) throw Error(ErrorKind::InvalidParameters, "b2 = 0 is excluded");
  const double lambda = dhf_lambda_formula(b0, b2, 0.0, c0, c1);
  if (!(lambda < 0.0)) throw Error(ErrorKind::InvalidParameters, "need b0^2 c1^2 + b2^2 (c0^2 - c1^2) < 0");
  if (!(c1 * (c0 + c1) > 0.0)) throw Error(ErrorKind::InvalidParameters, "need c1 (c0 + c1) > 0");
  const double eps = prm.eps;
  const double root = std::sqrt(-lambda);
  const double db = b0 * b0 - b2 * b2, dc = c0 * c0 - c1 * c1;
  DHFMember out;
  out.lambda = lambda;
  out.a4 = std::cbrt(-2.0 * eps * b2 * b2 * dc * dc / (c1 * c1 * db * db) * root);
  // a3 from the w1^- system; cubing gives eps c1 db sqrt(-lambda) / (4 b2 dc).
  out.a3 = -out.a4 * c1 * db / (2.0 * b2 * dc);
  out.w1m = 8.0 * eps * b2 * b2 * dc * dc / (out.a4 * out.a4 * c1 * db * root);
  const KForm omega = out.a3 * parse_form(6, "e14 - e23") + KForm::monomial(6, {5, 6}, out.a4);
  const auto [w, psi] = dhf_gauge_normalize(omega, dhf_psi_plus(b0, b2, 0.0, c0, c1));
  out.s = hitchin(dhf_slice(), w, psi);
  return out;
}

KForm dhf_nonexistence_form(const DHFMember& m) {
  const auto& s = m.s;
  const KForm dw = d(s.alg, s.omega);
  return d(s.alg, hodge_star(s.metric, dw)) + (2.0 * m.w1m * m.w1m) * wedge(s.omega, s.omega);
}

double dhf_nonexistence_residual(const DHFParams& params) {
  const DHFMember m = dhf_family(params);
  return dhf_nonexistence_form(m).coeff_norm() / m.s.omega.coeff_norm();
}

std::pair<KForm, KForm> dhf_gauge_normalize(const KForm& omega, const KForm& psi_plus) {
  const AlgebraSpec& alg = dhf_slice();
  if (omega.dim() != 6 || psi_plus.dim() != 6) throw Error(ErrorKind::DimensionMismatch, "slice forms are 6-dimensional");
  // ad(e5) on the slice: A(k, i) = e^k([e5, e_i]).
  // e^k([e5, e_i]) = -de^k(e5, e_i) on the m-projected brackets.
  Eigen::MatrixXd A(6, 6);
  for (int k = 0; k < 6; ++k) A.row(k) = -two_form_matrix(alg.de(k + 1)).row(4);
  const KForm w2 = parse_form(6, "e13 + e24"), w3 = parse_form(6, "e14 - e23");
  // d/dt of the pullback by exp(tA) is the derivation -isotropy_action(A, .),
  // which rotates omega2 into omega3 with angular speed kappa.
  const Eigen::VectorXd v2 = w2.to_vector(), v3 = w3.to_vector();
  const double kappa = (-1.0 * isotropy_action(A, w2)).to_vector().dot(v3) / v3.squaredNorm();
  const double x = omega.to_vector().dot(v2) / v2.squaredNorm();
  const double y = omega.to_vector().dot(v3) / v3.squaredNorm();
  if (std::abs(x) < 1e-15 || kappa == 0.0) return {omega, psi_plus};
  // x(t) = x cos(kappa t) - y sin(kappa t)
  const double t = std::atan2(x, y) / kappa;
  const Eigen::MatrixXd R = (t * A).exp();
  std::pair<KForm, KForm> out{pullback(R, omega), pullback(R, psi_plus)};
  out.first.prune(1e-13);
  out.second.prune(1e-13);
  return out;
}

}  // namespace g2t
