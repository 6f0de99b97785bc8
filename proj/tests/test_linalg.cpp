#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sepprob/linalg.hpp"
#include "test_util.hpp"

using namespace sepprob;
using testutil::random_matrix;

namespace {

template <class T>
void expect_close(const std::vector<double>& a, std::vector<double> b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

}  // namespace

TEST(Linalg, EigenvaluesMatchEigenComplex) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = random_matrix<cplx>(rng, 8, 9);
    Matrix<cplx> h;
    gram_into(a, h);
    const auto ours = hermitian_eigenvalues(h);
    auto ref = testutil::eigen_eigenvalues(h);
    std::sort(ref.begin(), ref.end());
    expect_close<cplx>(ours, ref, 1e-12 * ref.back());
  }
}

TEST(Linalg, EigenvaluesMatchEigenRealIndefinite) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 50; ++rep) {
    auto a = random_matrix<double>(rng, 9, 9);
    Matrix<double> s(9, 9);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j) s(i, j) = a(i, j) + a(j, i);
    const auto ours = hermitian_eigenvalues(s);
    auto ref = testutil::eigen_eigenvalues(s);
    std::sort(ref.begin(), ref.end());
    expect_close<double>(ours, ref, 1e-12 * 20);
  }
}

TEST(Linalg, EigenvaluesOfDiagonalAreExact) {
  Matrix<double> d(3, 3);
  d(0, 0) = 3;
  d(1, 1) = -1;
  d(2, 2) = 2;
  EXPECT_EQ(hermitian_eigenvalues(d), (std::vector<double>{-1, 2, 3}));
}

TEST(Linalg, SingularValuesMatchEigen) {
  std::mt19937_64 rng(13);
  for (auto [r, c] : {std::pair{4, 16}, std::pair{16, 4}, std::pair{9, 9}}) {
    const auto m = random_matrix<cplx>(rng, r, c);
    const auto ours = singular_values(m);
    const auto ref = testutil::eigen_singular_values(m);  // descending
    expect_close<cplx>(ours, ref, 1e-12 * ref.front());
  }
}

TEST(Linalg, HouseholderQrIsUnitaryAndTriangular) {
  std::mt19937_64 rng(14);
  auto a = random_matrix<cplx>(rng, 6, 6);
  const auto a0 = a;
  Matrix<cplx> q;
  std::vector<cplx> rd, v;
  householder_qr(a, q, rd, v);
  const auto qhq = adjoint(q) * q;
  EXPECT_LT(max_abs_diff(qhq, Matrix<cplx>::identity(6)), 1e-13);
  const auto r = adjoint(q) * a0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < i; ++j) EXPECT_LT(std::abs(r(i, j)), 1e-12);
    EXPECT_LT(std::abs(r(i, i) - rd[i]), 1e-12);
  }
}

TEST(Linalg, HouseholderQrRejectsZeroColumn) {
  Matrix<double> a(3, 3);
  Matrix<double> q;
  std::vector<double> rd, v;
  EXPECT_THROW(householder_qr(a, q, rd, v), std::domain_error);
}

TEST(Linalg, CholeskyLogDetMatchesSpectrum) {
  std::mt19937_64 rng(15);
  const auto a = random_matrix<cplx>(rng, 6, 7);
  Matrix<cplx> h, work;
  gram_into(a, h);
  double ld = 0;
  ASSERT_TRUE(cholesky_log_det(h, work, ld));
  const auto eig = testutil::eigen_eigenvalues(h);
  double ref = 0;
  for (double e : eig) ref += std::log(e);
  EXPECT_NEAR(ld, ref, 1e-11);
}

TEST(Linalg, CholeskyRejectsIndefinite) {
  Matrix<double> m(2, 2), work;
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(0, 1) = m(1, 0) = 2;
  double ld = 0;
  EXPECT_FALSE(cholesky_log_det(m, work, ld));
}

TEST(Linalg, GramIsHermitianWithRealDiagonal) {
  std::mt19937_64 rng(16);
  const auto a = random_matrix<cplx>(rng, 5, 3);
  Matrix<cplx> g;
  gram_into(a, g);
  EXPECT_EQ(testutil::hermiticity_defect(g), 0.0);
  EXPECT_NEAR(trace_real(g), frobenius_norm2(a), 1e-12);
}
