#include <doctest.h>

#include <random>

#include "g2t/catalog.hpp"
#include "g2t/errors.hpp"
#include "g2t/exterior.hpp"
#include "g2t/g2.hpp"
#include "oracle.hpp"

using namespace g2t;

namespace {

KForm e(std::initializer_list<int> idx) { return KForm::monomial(7, idx); }

// su(2) + su(2) + R as explicit brackets for the oracle: de1 = e23 means [e2, e3] = -e1.
oracle::Brackets su2su2_brackets() {
  oracle::Brackets br(7);
  for (int off : {0, 3}) {
    br.set(off + 2, off + 3, off + 1, -1.0);
    br.set(off + 1, off + 3, off + 2, 1.0);
    br.set(off + 1, off + 2, off + 3, -1.0);
  }
  return br;
}

}  // namespace

TEST_CASE("wedge basics") {
  CHECK(wedge(e({1}), e({2})).coeff({1, 2}) == 1.0);
  CHECK(wedge(e({2}), e({1})).coeff({1, 2}) == -1.0);
  const KForm w = e({4, 5}) + e({6, 7});
  const KForm sq = wedge(w, w);
  CHECK(oracle::max_diff(sq, oracle::wedge(w, w)) < 1e-14);
  CHECK(sq.coeff({4, 5, 6, 7}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(wedge(KForm::monomial(6, {1}), e({1})), Error);
}

TEST_CASE("wedge matches the permutation formula and is graded commutative") {
  std::mt19937 rng(11);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 7; ++q) {
      const KForm a = oracle::random_form(rng, 7, p, 0.4), b = oracle::random_form(rng, 7, q, 0.4);
      const KForm ab = wedge(a, b);
      CHECK(oracle::max_diff(ab, oracle::wedge(a, b)) < 1e-12);
      const double s = ((p * q) % 2 == 0) ? 1.0 : -1.0;
      CHECK(oracle::max_diff(ab, s * wedge(b, a)) < 1e-12);
    }
}

TEST_CASE("contraction") {
  const Eigen::VectorXd v1 = Eigen::VectorXd::Unit(7, 0), v3 = Eigen::VectorXd::Unit(7, 2);
  CHECK(oracle::max_diff(contract(v1, e({1, 2, 3})), e({2, 3})) == 0.0);
  CHECK(oracle::max_diff(contract(v3, e({1, 2, 3})), e({1, 2})) == 0.0);
  const KForm s = contract(v1, standard_phi());
  CHECK(oracle::max_diff(s, e({2, 3}) + e({4, 5}) + e({6, 7})) < 1e-15);
  CHECK_THROWS_AS(contract(v1, KForm(7, 0)), Error);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd v(7);
    for (int i = 0; i < 7; ++i) v[i] = u(rng);
    const int p = 1 + trial % 3, q = 1 + (trial / 3) % 3;
    const KForm a = oracle::random_form(rng, 7, p), b = oracle::random_form(rng, 7, q);
    CHECK(oracle::max_diff(contract(v, a), oracle::contract(v, a)) < 1e-12);
    const KForm lhs = contract(v, wedge(a, b));
    const KForm rhs = wedge(contract(v, a), b) + ((p % 2) ? -1.0 : 1.0) * wedge(a, contract(v, b));
    CHECK(oracle::max_diff(lhs, rhs) < 1e-12);
    if (p >= 2) CHECK(contract(v, contract(v, a)).max_norm() < 1e-12);
  }
}

TEST_CASE("d on the catalog algebras") {
  const AlgebraSpec su2r4 = builtin("su2_r4").alg;
  CHECK(oracle::max_diff(d(su2r4, e({4})), e({5, 6})) == 0.0);

  const CatalogEntry aw = builtin("aw(2,1)");
  CHECK(oracle::max_diff(d(aw.alg, aw.forms.at("sigma")), aw.forms.at("gamma2")) < 1e-13);

  const AlgebraSpec ss = builtin("su2su2_r").alg;
  CHECK(d(ss, e({1, 2, 3})).is_zero());

  // Non-invariant input on a homogeneous space is rejected.
  CHECK_THROWS_AS(d(aw.alg, e({2})), Error);
}

TEST_CASE("d agrees with the Chevalley-Eilenberg formula") {
  const AlgebraSpec ss = builtin("su2su2_r").alg;
  const oracle::Brackets br = su2su2_brackets();
  std::mt19937 rng(3);
  for (int k = 1; k <= 5; ++k) {
    const KForm a = oracle::random_form(rng, 7, k, 0.5);
    CHECK(oracle::max_diff(d(ss, a), oracle::d(br, a)) < 1e-12);
  }
  // Antiderivation rule.
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 1 + trial % 3;
    const KForm a = oracle::random_form(rng, 7, p), b = oracle::random_form(rng, 7, 2);
    const KForm lhs = d(ss, wedge(a, b));
    const KForm rhs = wedge(d(ss, a), b) + ((p % 2) ? -1.0 : 1.0) * wedge(a, d(ss, b));
    CHECK(oracle::max_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("brackets and coboundaries") {
  // [e1, e2] = e3, [e1, e3] = e2 gives de3 = -e12, de2 = -e13.
  const AlgebraSpec a = AlgebraSpec::from_brackets(3, {{1, 2, 3, 1.0}, {1, 3, 2, 1.0}});
  CHECK(oracle::max_diff(a.de(3), -KForm::monomial(3, {1, 2})) == 0.0);
  CHECK(oracle::max_diff(a.de(2), -KForm::monomial(3, {1, 3})) == 0.0);
  CHECK(d_squared_residual(a) == 0.0);
  CHECK(a.unimodular());
  CHECK_FALSE(AlgebraSpec::from_brackets(2, {{1, 2, 2, 1.0}}).unimodular());

  // Adding [e2, e3] = 0.1 e2 breaks Jacobi: Jac(e1, e2, e3) = 0.1 e3.
  const AlgebraSpec bad = AlgebraSpec::from_brackets(3, {{1, 2, 3, 1.0}, {1, 3, 2, 1.0}, {2, 3, 2, 0.1}});
  CHECK(d_squared_residual(bad) == doctest::Approx(0.1));

  CHECK(d_squared_residual(builtin("su2su2_r").alg) == 0.0);
  CHECK(builtin("su2su2_r").alg.unimodular());
}

TEST_CASE("d squared vanishes on invariant forms of every catalog entry") {
  for (const auto& name : catalog_names()) {
    const std::string inst = name == "aw(p,q)" ? "aw(3,2)" : name;
    CAPTURE(inst);
    CHECK(d_squared_residual(builtin(inst).alg) < 1e-12);
  }
  for (auto [p, q] : {std::pair{1, 0}, {1, 1}, {2, 1}, {5, 3}}) {
    CHECK(d_squared_residual(builtin("aw(" + std::to_string(p) + "," + std::to_string(q) + ")").alg) < 1e-12);
  }
}

TEST_CASE("invariant subspaces") {
  const AlgebraSpec v52 = builtin("v52").alg;
  const auto b = invariant_subspace(v52, 2);
  REQUIRE(b.size() == 1);
  const KForm expected = e({1, 4}) + e({2, 5}) + e({3, 6});
  // Orthonormal in the coefficient inner product, so b[0] = +-expected / sqrt(3).
  CHECK(std::abs(b[0].to_vector().dot(expected.to_vector())) == doctest::Approx(std::sqrt(3.0)));

  const AlgebraSpec m110 = builtin("m110").alg;
  const auto bm = invariant_subspace(m110, 2);
  REQUIRE(bm.size() == 2);
  Eigen::MatrixXd B(21, 2);
  B << bm[0].to_vector(), bm[1].to_vector();
  CHECK((B.transpose() * B - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
  for (const KForm& f : {e({1, 2}) + e({3, 4}), e({5, 6})}) {
    const Eigen::VectorXd v = f.to_vector();
    CHECK((B * (B.transpose() * v) - v).norm() < 1e-12);
  }

  CHECK(invariant_subspace(builtin("aw(2,1)").alg, 3).size() == 5);
  CHECK(invariant_subspace(builtin("aw(1,0)").alg, 3).size() == 7);
  CHECK_THROWS_AS(invariant_subspace(builtin("su2su2_r").alg, 2), Error);

  for (const char* name : {"aw(2,1)", "n11", "s7_sp2", "v52", "q111", "m110", "s5_t2", "v42_t2"}) {
    const AlgebraSpec alg = builtin(name).alg;
    for (int k = 1; k <= 4; ++k)
      for (const KForm& f : invariant_subspace(alg, k))
        for (const auto& h : alg.isotropy()) CHECK(isotropy_action(h, f).max_norm() < 1e-12);
  }
}

TEST_CASE("pullback and two-form matrices") {
  std::mt19937 rng(8);
  const Eigen::MatrixXd A = oracle::random_basis_change(rng, 7);
  const KForm a = oracle::random_form(rng, 7, 2), b = oracle::random_form(rng, 7, 3);
  CHECK(oracle::max_diff(pullback(A, wedge(a, b)), wedge(pullback(A, a), pullback(A, b))) < 1e-12);
  CHECK(oracle::max_diff(two_form(two_form_matrix(a)), a) < 1e-15);
}
