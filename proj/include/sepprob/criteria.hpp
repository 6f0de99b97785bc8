#pragma once

// Entanglement tests on a bipartite density matrix with composite index
// (a, b) -> a * n_b + b: positive partial transpose, the determinant
// comparison |rho^PT| vs |rho|, and the realignment (computable cross-norm)
// criterion.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "sepprob/linalg.hpp"
#include "sepprob/rmt.hpp"

namespace sepprob {

inline constexpr double kRealignSlack = 1e-12;

struct Verdict {
  bool ppt = false;
  double min_pt_eigenvalue = 0.0;
  bool det_pt_greater = false;
  std::optional<double> realign_norm;
  std::optional<bool> realign_entangled;
  std::optional<bool> bound_entangled;
};

/// Transpose on subsystem B: out[(a,b),(a',b')] = rho[(a,b'),(a',b)].
template <Scalar T>
void partial_transpose_into(const Matrix<T>& rho, unsigned n_a, unsigned n_b, Matrix<T>& out) {
  const std::size_t n = static_cast<std::size_t>(n_a) * n_b;
  if (rho.rows() != n || rho.cols() != n) throw std::invalid_argument("partial_transpose: n_a * n_b != N");
  out.resize(n, n);
  for (unsigned a = 0; a < n_a; ++a)
    for (unsigned b = 0; b < n_b; ++b)
      for (unsigned ap = 0; ap < n_a; ++ap)
        for (unsigned bp = 0; bp < n_b; ++bp) out(a * n_b + b, ap * n_b + bp) = rho(a * n_b + bp, ap * n_b + b);
}

template <Scalar T>
Matrix<T> partial_transpose(const DensityMatrix<T>& rho) {
  Matrix<T> out;
  partial_transpose_into(rho.entries, rho.n_a, rho.n_b, out);
  return out;
}

/// Transpose on subsystem A: out[(a,b),(a',b')] = rho[(a',b),(a,b')].
template <Scalar T>
Matrix<T> partial_transpose_a(const DensityMatrix<T>& rho) {
  const std::size_t n = rho.dim();
  Matrix<T> out(n, n);
  const unsigned na = rho.n_a, nb = rho.n_b;
  for (unsigned a = 0; a < na; ++a)
    for (unsigned b = 0; b < nb; ++b)
      for (unsigned ap = 0; ap < na; ++ap)
        for (unsigned bp = 0; bp < nb; ++bp) out(a * nb + b, ap * nb + bp) = rho(ap * nb + b, a * nb + bp);
  return out;
}

/// R[(a,a'),(b,b')] = rho[(a,b),(a',b')], shape n_a^2 x n_b^2.
template <Scalar T>
void realign_into(const Matrix<T>& rho, unsigned n_a, unsigned n_b, Matrix<T>& out) {
  out.resize(static_cast<std::size_t>(n_a) * n_a, static_cast<std::size_t>(n_b) * n_b);
  for (unsigned a = 0; a < n_a; ++a)
    for (unsigned ap = 0; ap < n_a; ++ap)
      for (unsigned b = 0; b < n_b; ++b)
        for (unsigned bp = 0; bp < n_b; ++bp) out(a * n_a + ap, b * n_b + bp) = rho(a * n_b + b, ap * n_b + bp);
}

template <Scalar T>
Matrix<T> realign(const DensityMatrix<T>& rho) {
  Matrix<T> out;
  realign_into(rho.entries, rho.n_a, rho.n_b, out);
  return out;
}

/// Sum of singular values. Throws ConvergenceError from the SVD.
template <Scalar T>
double trace_norm(const Matrix<T>& m) {
  const auto sv = singular_values(m);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

inline bool realign_flags_entangled(double norm) { return norm > 1.0 + kRealignSlack; }

/// Reference classifier on full spectra (Jacobi eigenvalues of rho and rho^PT).
/// Throws ConvergenceError when an eigen/SVD kernel fails.
template <Scalar T>
Verdict classify(const DensityMatrix<T>& rho, bool with_realign) {
  Verdict v;
  const auto pt_eigs = hermitian_eigenvalues(partial_transpose(rho));
  const auto eigs = hermitian_eigenvalues(rho.entries);
  v.min_pt_eigenvalue = pt_eigs.front();
  v.ppt = v.min_pt_eigenvalue >= 0.0;
  const double det_pt = std::accumulate(pt_eigs.begin(), pt_eigs.end(), 1.0, std::multiplies<>());
  const double det = std::accumulate(eigs.begin(), eigs.end(), 1.0, std::multiplies<>());
  v.det_pt_greater = det_pt > det;
  if (with_realign) {
    const double norm = trace_norm(realign(rho));
    v.realign_norm = norm;
    v.realign_entangled = realign_flags_entangled(norm);
    v.bound_entangled = v.ppt && *v.realign_entangled;
  }
  return v;
}

/// Outcome of the estimator's fast path. Same questions as Verdict, no spectra.
struct QuickVerdict {
  bool ppt = false;
  bool det_pt_greater = false;
  bool realign_entangled = false;
};

/// Allocation-free classifier for the estimation loop. PPT is decided by
/// attempting a Cholesky factorisation of rho^PT (positive pivots <=>
/// positive definite); determinants come from the Cholesky pivots. It agrees
/// with classify() except on the measure-zero boundary lambda_min = 0.
template <Scalar T>
class QuickClassifier {
 public:
  QuickVerdict operator()(const DensityMatrix<T>& rho, bool with_realign) {
    QuickVerdict v;
    partial_transpose_into(rho.entries, rho.n_a, rho.n_b, pt_);
    double log_det_pt = 0.0;
    v.ppt = cholesky_log_det(pt_, work_, log_det_pt);
    if (v.ppt) {
      double log_det = 0.0;
      const bool pd = cholesky_log_det(rho.entries, work_, log_det);
      v.det_pt_greater = !pd || log_det_pt > log_det;
    }
    if (with_realign) {
      realign_into(rho.entries, rho.n_a, rho.n_b, realigned_);
      v.realign_entangled = realign_flags_entangled(trace_norm(realigned_));
    }
    return v;
  }

 private:
  Matrix<T> pt_, work_, realigned_;
};

}  // namespace sepprob
