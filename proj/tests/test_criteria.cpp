#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sepprob/criteria.hpp"
#include "sepprob/estimator.hpp"
#include "sepprob/normal.hpp"
#include "sepprob/qrng.hpp"
#include "test_util.hpp"

using namespace sepprob;
using testutil::bell_state;
using testutil::normals;
using testutil::wrap;

namespace {

DensityMatrix<double> maximally_mixed() {
  auto m = Matrix<double>::identity(4);
  for (auto& v : m.data()) v = v * 0.25;
  return wrap(std::move(m), 2, 2);
}

template <class T>
Matrix<T> pure_projector(const std::vector<T>& psi) {
  Matrix<T> m(psi.size(), psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) m(i, j) = mul_conj(psi[i], psi[j]);
  return m;
}

template <class T>
Matrix<T> local_conjugate(const Matrix<T>& rho, const Matrix<T>& va, const Matrix<T>& vb) {
  const auto v = testutil::kron(va, vb);
  return v * rho * adjoint(v);
}

}  // namespace

TEST(Criteria, ProductStatePartialTransposeIsPsd) {
  std::mt19937_64 rng(1);
  Matrix<cplx> ra, rb;
  gram_into(testutil::random_matrix<cplx>(rng, 2, 2), ra);
  gram_into(testutil::random_matrix<cplx>(rng, 3, 3), rb);
  const auto prod = testutil::kron(ra, rb);
  const auto pt = partial_transpose(wrap(prod, 2, 3));
  Matrix<cplx> rbt(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) rbt(i, j) = rb(j, i);
  EXPECT_LT(max_abs_diff(pt, testutil::kron(ra, rbt)), 1e-14);
  EXPECT_GE(hermitian_eigenvalues(pt).front(), -1e-12);
}

TEST(Criteria, BellPartialTransposeSpectrum) {
  const auto pt = partial_transpose(bell_state());
  auto ref = testutil::eigen_eigenvalues(pt);
  std::sort(ref.begin(), ref.end());
  const std::vector<double> expected{-0.5, 0.5, 0.5, 0.5};
  const auto ours = hermitian_eigenvalues(pt);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(ref[i], expected[i], 1e-14);
    EXPECT_NEAR(ours[i], expected[i], 1e-14);
  }
}

TEST(Criteria, PartialTransposeIsInvolution) {
  std::mt19937_64 rng(2);
  const auto rho = testutil::random_density<cplx>(rng, {2, 4, Field::complex, Measure::hilbert_schmidt()});
  const auto twice = partial_transpose(wrap(partial_transpose(rho), 2, 4));
  EXPECT_EQ(twice, rho.entries);
}

TEST(Criteria, MaximallyMixed) {
  const auto v = classify(maximally_mixed(), true);
  EXPECT_TRUE(v.ppt);
  EXPECT_FALSE(v.det_pt_greater);
  EXPECT_NEAR(*v.realign_norm, 0.5, 1e-15);
  EXPECT_FALSE(*v.realign_entangled);
  EXPECT_FALSE(*v.bound_entangled);
}

TEST(Criteria, BellState) {
  const auto v = classify(bell_state(), true);
  EXPECT_FALSE(v.ppt);
  EXPECT_NEAR(v.min_pt_eigenvalue, -0.5, 1e-14);
  EXPECT_NEAR(*v.realign_norm, 2.0, 1e-14);
  const auto sv = testutil::eigen_singular_values(realign(bell_state()));
  EXPECT_NEAR(std::accumulate(sv.begin(), sv.end(), 0.0), 2.0, 1e-14);
  EXPECT_TRUE(*v.realign_entangled);
  EXPECT_FALSE(*v.bound_entangled);
}

TEST(Criteria, RealignShape) {
  std::mt19937_64 rng(3);
  const auto rho = testutil::random_density<cplx>(rng, {2, 3, Field::complex, Measure::hilbert_schmidt()});
  const auto r = realign(rho);
  EXPECT_EQ(r.rows(), 4u);
  EXPECT_EQ(r.cols(), 9u);
  EXPECT_EQ(r(1 * 2 + 0, 2 * 3 + 1), rho(1 * 3 + 2, 0 * 3 + 1));
}

TEST(Criteria, PureProductSaturatesRealignBound) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 100; ++rep) {
    auto a = normals(rng, 4), b = normals(rng, 6);
    std::vector<cplx> pa{{a[0], a[1]}, {a[2], a[3]}}, pb{{b[0], b[1]}, {b[2], b[3]}, {b[4], b[5]}};
    std::vector<cplx> psi;
    for (auto x : pa)
      for (auto y : pb) psi.push_back(x * y);
    double nrm = 0;
    for (auto& z : psi) nrm += abs2(z);
    for (auto& z : psi) z /= std::sqrt(nrm);
    const auto v = classify(wrap(pure_projector(psi), 2, 3), true);
    EXPECT_NEAR(*v.realign_norm, 1.0, 1e-13);
    EXPECT_FALSE(*v.realign_entangled) << *v.realign_norm - 1.0;
  }
}

TEST(Criteria, PptInvariantUnderLocalUnitaries) {
  std::mt19937_64 rng(5);
  int ppt = 0;
  for (int i = 0; i < 1000; ++i) {
    const Scenario s{2, i % 2 ? 3u : 2u, Field::complex, Measure::hilbert_schmidt()};
    const auto rho = testutil::random_density<cplx>(rng, s);
    const auto va = haar_factor<cplx>(s.n_a, normals(rng, 2 * s.n_a * s.n_a));
    const auto vb = haar_factor<cplx>(s.n_b, normals(rng, 2 * s.n_b * s.n_b));
    const auto rotated = wrap(local_conjugate(rho.entries, va, vb), s.n_a, s.n_b);
    const auto v1 = classify(rho, false), v2 = classify(rotated, false);
    EXPECT_EQ(v1.ppt, v2.ppt) << i;
    EXPECT_NEAR(v1.min_pt_eigenvalue, v2.min_pt_eigenvalue, 1e-12);
    ppt += v1.ppt;
  }
  EXPECT_GT(ppt, 0);
  EXPECT_LT(ppt, 1000);
}

TEST(Criteria, TransposeSideDoesNotMatter) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    const auto rho = testutil::random_density<cplx>(rng, {2, 3, Field::complex, Measure::bures()});
    const auto eb = hermitian_eigenvalues(partial_transpose(rho));
    const auto ea = hermitian_eigenvalues(partial_transpose_a(rho));
    for (std::size_t k = 0; k < eb.size(); ++k) ASSERT_NEAR(ea[k], eb[k], 1e-10);
    const double da = std::accumulate(ea.begin(), ea.end(), 1.0, std::multiplies<>());
    const double db = std::accumulate(eb.begin(), eb.end(), 1.0, std::multiplies<>());
    ASSERT_NEAR(da, db, 1e-10);
  }
}

TEST(Criteria, QuickClassifierAgreesWithReference) {
  std::mt19937_64 rng(7);
  for (auto s : {Scenario{2, 2, Field::complex, Measure::hilbert_schmidt()}, Scenario{2, 2, Field::complex, Measure::bures()},
                 Scenario{2, 4, Field::complex, Measure::hilbert_schmidt()}}) {
    QuickClassifier<cplx> quick;
    for (int i = 0; i < 3000; ++i) {
      const auto rho = testutil::random_density<cplx>(rng, s);
      const auto ref = classify(rho, true);
      const auto q = quick(rho, true);
      ASSERT_EQ(q.ppt, ref.ppt) << ref.min_pt_eigenvalue;
      if (q.ppt) {
        ASSERT_EQ(q.det_pt_greater, ref.det_pt_greater);
      }
      ASSERT_EQ(q.realign_entangled, *ref.realign_entangled) << *ref.realign_norm;
    }
  }
}

TEST(Criteria, NoBoundEntanglementInTwoQubits) {
  const Scenario s{2, 2, Field::complex, Measure::hilbert_schmidt()};
  const auto c = detail::process_block<cplx>(s, make_sequence(32), 1, 1'000'001, true);
  EXPECT_EQ(c.consumed(), 1'000'000u);
  EXPECT_EQ(c.n_skipped, 0u);
  EXPECT_EQ(c.n_bound_entangled, 0u);
  EXPECT_GT(c.n_realign_entangled, 0u);
}
