#pragma once

// Random density matrices from a block of standard normal variates.
//
//   induced(k):  rho = A A^dagger / Tr, A Ginibre N x (N+k) complex or N x (N+1+k) real
//   osz(x):      rho = B B^dagger / Tr, B = ((1-x) I + x U) A, U Haar on U(N) / O(N),
//                A Ginibre N x N complex or N x (N+1) real
//
// osz(0) is Hilbert-Schmidt and osz(1/2) is Bures. Variates are consumed in a
// fixed order: the Ginibre block first (row-major, complex entries as
// consecutive re/im pairs), then the block for the Haar factor.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepprob/linalg.hpp"

namespace sepprob {

enum class Field { real, complex };

inline const char* to_string(Field f) { return f == Field::real ? "real" : "complex"; }

struct Measure {
  enum class Kind { induced, osz };
  Kind kind = Kind::induced;
  int k = 0;       // induced only
  double x = 0.0;  // osz only

  static Measure induced(int k) { return {Kind::induced, k, 0.0}; }
  static Measure osz(double x) { return {Kind::osz, 0, x}; }
  static Measure hilbert_schmidt() { return induced(0); }
  static Measure bures() { return osz(0.5); }

  friend bool operator==(const Measure&, const Measure&) = default;
};

struct Scenario {
  unsigned n_a = 2;
  unsigned n_b = 2;
  Field field = Field::complex;
  Measure measure;

  unsigned dim() const { return n_a * n_b; }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// A probability-zero degenerate draw (zero trace, singular Ginibre block,
/// a uniform at exactly 0). The estimator tallies these and moves on.
class SkipSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned kMaxDim = 16;

inline void validate(const Scenario& s) {
  if (s.n_a < 2 || s.n_b < 2) throw std::invalid_argument("scenario: subsystem dimensions must be >= 2");
  if (s.dim() > kMaxDim) throw std::invalid_argument("scenario: N = n_a * n_b exceeds " + std::to_string(kMaxDim));
  if (s.measure.kind == Measure::Kind::induced && s.measure.k < 0)
    throw std::invalid_argument("scenario: induced measure needs k >= 0");
  if (s.measure.kind == Measure::Kind::osz && !(s.measure.x >= 0.0 && s.measure.x <= 1.0))
    throw std::invalid_argument("scenario: osz parameter x must lie in [0, 1]");
}

struct GinibreShape {
  std::size_t rows;
  std::size_t cols;
};

inline GinibreShape ginibre_shape(const Scenario& s) {
  const std::size_t n = s.dim();
  const std::size_t extra = s.field == Field::real ? 1 : 0;
  if (s.measure.kind == Measure::Kind::induced) return {n, n + extra + static_cast<std::size_t>(s.measure.k)};
  return {n, n + extra};
}

inline bool uses_haar_factor(const Scenario& s) { return s.measure.kind == Measure::Kind::osz; }

/// Normal variates consumed per sample.
inline std::size_t variate_count(const Scenario& s) {
  validate(s);
  const std::size_t per_entry = s.field == Field::complex ? 2 : 1;
  const auto g = ginibre_shape(s);
  std::size_t total = per_entry * g.rows * g.cols;
  if (uses_haar_factor(s)) total += per_entry * s.dim() * s.dim();
  return total;
}

template <Scalar T>
constexpr std::size_t variates_per_entry() {
  return is_complex_v<T> ? 2 : 1;
}

template <Scalar T>
void fill_ginibre(std::size_t rows, std::size_t cols, std::span<const double> normals, Matrix<T>& out) {
  if (normals.size() != variates_per_entry<T>() * rows * cols)
    throw std::invalid_argument("ginibre: normal count does not match the requested shape");
  out.resize(rows, cols);
  auto d = out.data();
  if constexpr (is_complex_v<T>) {
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = T(normals[2 * i], normals[2 * i + 1]);
  } else {
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = normals[i];
  }
}

template <Scalar T>
Matrix<T> ginibre(std::size_t rows, std::size_t cols, std::span<const double> normals) {
  Matrix<T> m;
  fill_ginibre(rows, cols, normals, m);
  return m;
}

template <Scalar T>
struct HaarScratch {
  Matrix<T> work;
  std::vector<T> r_diag;
  std::vector<T> v;
};

/// Haar-distributed unitary (complex) or orthogonal (real) n x n matrix:
/// Q from the QR of a Ginibre draw, with columns rephased so R has a positive diagonal.
template <Scalar T>
void fill_haar_factor(std::size_t n, std::span<const double> normals, Matrix<T>& out, HaarScratch<T>& scratch) {
  fill_ginibre(n, n, normals, scratch.work);
  try {
    householder_qr(scratch.work, out, scratch.r_diag, scratch.v);
  } catch (const std::domain_error&) {
    throw SkipSample("haar_factor: singular Ginibre draw");
  }
  for (std::size_t j = 0; j < n; ++j) {
    const T phase = scratch.r_diag[j] / std::abs(scratch.r_diag[j]);
    for (std::size_t i = 0; i < n; ++i) out(i, j) = mul(out(i, j), phase);
  }
}

template <Scalar T>
Matrix<T> haar_factor(std::size_t n, std::span<const double> normals) {
  Matrix<T> out;
  HaarScratch<T> scratch;
  fill_haar_factor(n, normals, out, scratch);
  return out;
}

template <Scalar T>
struct DensityMatrix {
  Matrix<T> entries;
  unsigned n_a = 0;
  unsigned n_b = 0;

  std::size_t dim() const { return entries.rows(); }
  T operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

namespace detail {

template <Scalar T>
void normalise_gram(const Matrix<T>& b, Matrix<T>& rho) {
  gram_into(b, rho);
  const double tr = trace_real(rho);
  if (!(tr > 0.0) || !std::isfinite(tr)) throw SkipSample("density: zero trace");
  const double inv = 1.0 / tr;
  for (auto& v : rho.data()) v *= inv;
}

}  // namespace detail

/// rho = A A^dagger / Tr(A A^dagger)
template <Scalar T>
void induced_density_into(const Matrix<T>& a, DensityMatrix<T>& out) {
  detail::normalise_gram(a, out.entries);
}

template <Scalar T>
DensityMatrix<T> induced_density(const Matrix<T>& a, unsigned n_a, unsigned n_b) {
  if (a.rows() != static_cast<std::size_t>(n_a) * n_b) throw std::invalid_argument("induced_density: row count != n_a * n_b");
  DensityMatrix<T> out;
  out.n_a = n_a;
  out.n_b = n_b;
  induced_density_into(a, out);
  return out;
}

/// rho_x = (y I + x U) A A^dagger (y I + x U^dagger) / Tr, y = 1 - x. `b` is scratch.
template <Scalar T>
void osz_density_into(const Matrix<T>& a, const Matrix<T>& u, double x, Matrix<T>& b, DensityMatrix<T>& out) {
  if (u.rows() != a.rows() || u.cols() != a.rows()) throw std::invalid_argument("osz_density: U must be N x N");
  multiply_into(u, a, b);
  const double y = 1.0 - x;
  auto bd = b.data();
  auto ad = a.data();
  for (std::size_t i = 0; i < bd.size(); ++i) bd[i] = y * ad[i] + x * bd[i];
  detail::normalise_gram(b, out.entries);
}

template <Scalar T>
DensityMatrix<T> osz_density(const Matrix<T>& a, const Matrix<T>& u, double x, unsigned n_a, unsigned n_b) {
  if (a.rows() != static_cast<std::size_t>(n_a) * n_b) throw std::invalid_argument("osz_density: row count != n_a * n_b");
  DensityMatrix<T> out;
  out.n_a = n_a;
  out.n_b = n_b;
  Matrix<T> b;
  osz_density_into(a, u, x, b, out);
  return out;
}

/// Per-worker sampler: turns one block of variate_count(s) normals into a density matrix
/// without allocating after warm-up.
template <Scalar T>
class DensitySampler {
 public:
  explicit DensitySampler(const Scenario& s) : scenario_(s), shape_(ginibre_shape(s)), count_(sepprob::variate_count(s)) {
    if ((s.field == Field::complex) != is_complex_v<T>) throw std::invalid_argument("DensitySampler: scalar type does not match field");
    rho_.n_a = s.n_a;
    rho_.n_b = s.n_b;
  }

  std::size_t variate_count() const { return count_; }
  const DensityMatrix<T>& density() const { return rho_; }

  /// Throws SkipSample on a degenerate draw.
  const DensityMatrix<T>& sample(std::span<const double> normals) {
    if (normals.size() != count_) throw std::invalid_argument("DensitySampler: wrong number of normals");
    const std::size_t g = variates_per_entry<T>() * shape_.rows * shape_.cols;
    fill_ginibre(shape_.rows, shape_.cols, normals.first(g), a_);
    if (uses_haar_factor(scenario_)) {
      fill_haar_factor(scenario_.dim(), normals.subspan(g), u_, haar_);
      osz_density_into(a_, u_, scenario_.measure.x, b_, rho_);
    } else {
      induced_density_into(a_, rho_);
    }
    return rho_;
  }

 private:
  Scenario scenario_;
  GinibreShape shape_;
  std::size_t count_;
  Matrix<T> a_, u_, b_;
  HaarScratch<T> haar_;
  DensityMatrix<T> rho_;
};

}  // namespace sepprob
