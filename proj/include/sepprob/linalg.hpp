#pragma once

// Small dense linear algebra for N <= ~16: a row-major matrix, cyclic Jacobi
// eigenvalues for Hermitian/symmetric input, one-sided Jacobi singular values,
// Householder QR and a Cholesky positive-definiteness probe. Everything is
// templated on the scalar (double or std::complex<double>) so real-field
// scenarios avoid complex arithmetic entirely.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace sepprob {

using cplx = std::complex<double>;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <class T>
concept Scalar = std::is_same_v<T, double> || std::is_same_v<T, cplx>;

inline double conj_of(double x) { return x; }
inline cplx conj_of(const cplx& z) { return std::conj(z); }
inline double real_of(double x) { return x; }
inline double real_of(const cplx& z) { return z.real(); }
inline double abs2(double x) { return x * x; }
inline double abs2(const cplx& z) { return z.real() * z.real() + z.imag() * z.imag(); }

// a * conj(b) without the NaN/inf recovery branches of operator*.
inline double mul_conj(double a, double b) { return a * b; }
inline cplx mul_conj(const cplx& a, const cplx& b) {
  return {a.real() * b.real() + a.imag() * b.imag(), a.imag() * b.real() - a.real() * b.imag()};
}
inline double mul(double a, double b) { return a * b; }
inline cplx mul(const cplx& a, const cplx& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// Thrown when an iterative kernel fails to converge within its sweep budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major dense matrix. Resizing never shrinks capacity, so per-worker
/// scratch matrices stop allocating after the first sample.
template <Scalar T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  void resize(std::size_t rows, std::size_t cols) {
    rows_ = rows;
    cols_ = cols;
    data_.resize(rows * cols);
  }
  void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Scalar T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = conj_of(a(i, j));
  return out;
}

/// out = a * b
template <Scalar T>
void multiply_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& out) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
  out.resize(a.rows(), b.cols());
  out.fill(T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += mul(aik, b(k, j));
    }
}

template <Scalar T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out;
  multiply_into(a, b, out);
  return out;
}

/// out = a * a^dagger. Only the lower triangle is computed; the upper is mirrored.
template <Scalar T>
void gram_into(const Matrix<T>& a, Matrix<T>& out) {
  const std::size_t n = a.rows();
  out.resize(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      T s(0);
      for (std::size_t k = 0; k < a.cols(); ++k) s += mul_conj(a(i, k), a(j, k));
      out(i, j) = s;
      out(j, i) = conj_of(s);
    }
  for (std::size_t i = 0; i < n; ++i) out(i, i) = T(real_of(out(i, i)));
}

template <Scalar T>
double trace_real(const Matrix<T>& a) {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += real_of(a(i, i));
  return t;
}

template <Scalar T>
double frobenius_norm2(const Matrix<T>& a) {
  double s = 0.0;
  for (const T& v : a.data()) s += abs2(v);
  return s;
}

/// max_ij |a_ij - b_ij|
template <Scalar T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

namespace detail {

// Unitary G acting on coordinates (p, q) that diagonalises the 2x2 Hermitian
// block [[app, apq], [conj(apq), aqq]]: G = diag(1, conj(phase)) * R(c, s).
template <Scalar T>
struct Rotation {
  double c = 1.0;
  double s = 0.0;
  T phase = T(1);
  double t = 0.0;
};

template <Scalar T>
Rotation<T> jacobi_rotation(double app, double aqq, const T& apq) {
  Rotation<T> r;
  const double mag = std::abs(apq);
  r.phase = apq / mag;
  const double theta = (aqq - app) / (2.0 * mag);
  double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
  if (theta < 0.0) t = -t;
  r.t = t;
  r.c = 1.0 / std::sqrt(1.0 + t * t);
  r.s = t * r.c;
  return r;
}

}  // namespace detail

/// Eigenvalues (ascending) of a Hermitian matrix by the cyclic Jacobi method.
/// The matrix is taken by value and destroyed. Throws ConvergenceError after
/// max_sweeps without reaching the off-diagonal threshold.
template <Scalar T>
std::vector<double> hermitian_eigenvalues(Matrix<T> a, int max_sweeps = 60) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = real_of(a(i, i));

  const double scale = std::sqrt(frobenius_norm2(a));
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += abs2(a(p, q));
    if (std::sqrt(off) <= 1e-2 * eps * scale || off == 0.0) {
      std::sort(diag.begin(), diag.end());
      return diag;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Past the first few sweeps, drop elements below the rounding of both diagonals.
        if (sweep > 3 && std::abs(diag[p]) + 100.0 * mag == std::abs(diag[p]) &&
            std::abs(diag[q]) + 100.0 * mag == std::abs(diag[q])) {
          a(p, q) = T(0);
          a(q, p) = T(0);
          continue;
        }
        const auto rot = detail::jacobi_rotation(diag[p], diag[q], apq);
        const T ph = conj_of(rot.phase);
        // A <- G^dagger A G on rows/cols p, q.
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const T arp = a(r, p);
          const T arq = mul(a(r, q), ph);
          const T new_p = rot.c * arp - rot.s * arq;
          const T new_q = rot.s * arp + rot.c * arq;
          a(r, p) = new_p;
          a(p, r) = conj_of(new_p);
          a(r, q) = new_q;
          a(q, r) = conj_of(new_q);
        }
        diag[p] -= rot.t * mag;
        diag[q] += rot.t * mag;
        a(p, q) = T(0);
        a(q, p) = T(0);
      }
    }
  }
  throw ConvergenceError("hermitian_eigenvalues: Jacobi sweeps did not converge");
}

/// Singular values (descending) by one-sided (Hestenes) Jacobi on the columns
/// of the taller orientation. High relative accuracy for small singular
/// values, which the Gram-matrix route lacks.
template <Scalar T>
std::vector<double> singular_values(const Matrix<T>& m, int max_sweeps = 60) {
  Matrix<T> w = m.rows() >= m.cols() ? m : adjoint(m);
  const std::size_t rows = w.rows();
  const std::size_t cols = w.cols();
  // Rounding in col_dot alone is ~rows * eps * |c_i| |c_j|; a tighter target can cycle forever.
  const double eps = std::numeric_limits<double>::epsilon() * static_cast<double>(rows);

  auto col_dot = [&](std::size_t i, std::size_t j) {
    T s(0);
    for (std::size_t r = 0; r < rows; ++r) s += mul_conj(w(r, j), w(r, i));  // c_i^dagger c_j
    return s;
  };
  auto col_norm2 = [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += abs2(w(r, i));
    return s;
  };

  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t i = 0; i < cols; ++i) {
      for (std::size_t j = i + 1; j < cols; ++j) {
        const double a = col_norm2(i);
        const double b = col_norm2(j);
        const T g = col_dot(i, j);
        const double mag = std::abs(g);
        if (mag == 0.0 || mag <= eps * std::sqrt(a * b)) continue;
        converged = false;
        const auto rot = detail::jacobi_rotation(a, b, g);
        const T ph = conj_of(rot.phase);
        for (std::size_t r = 0; r < rows; ++r) {
          const T ci = w(r, i);
          const T cj = mul(w(r, j), ph);
          w(r, i) = rot.c * ci - rot.s * cj;
          w(r, j) = rot.s * ci + rot.c * cj;
        }
      }
    }
  }
  if (!converged) throw ConvergenceError("singular_values: one-sided Jacobi did not converge");
  std::vector<double> sv(cols);
  for (std::size_t i = 0; i < cols; ++i) sv[i] = std::sqrt(col_norm2(i));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

/// Householder QR of a square matrix: on return `q` is unitary and
/// `r_diag` holds the diagonal of R. The input is overwritten.
template <Scalar T>
void householder_qr(Matrix<T>& a, Matrix<T>& q, std::vector<T>& r_diag, std::vector<T>& v) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("householder_qr: matrix is not square");
  q.resize(n, n);
  q.fill(T(0));
  for (std::size_t i = 0; i < n; ++i) q(i, i) = T(1);
  r_diag.resize(n);
  v.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) xnorm2 += abs2(a(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) throw std::domain_error("householder_qr: singular column");
    const T x0 = a(k, k);
    const double ax0 = std::abs(x0);
    const T sign = ax0 == 0.0 ? T(1) : x0 / ax0;
    const T alpha = -sign * xnorm;  // R(k,k)
    // v = x - alpha e1; |v|^2 = 2 |x| (|x| + |x0|)
    for (std::size_t i = k; i < n; ++i) v[i] = a(i, k);
    v[k] -= alpha;
    const double vnorm2 = 2.0 * xnorm * (xnorm + ax0);
    const double inv = 2.0 / vnorm2;
    // A <- (I - inv v v^dagger) A on the trailing columns
    for (std::size_t j = k + 1; j < n; ++j) {
      T s(0);
      for (std::size_t i = k; i < n; ++i) s += mul_conj(a(i, j), v[i]);
      s *= inv;
      for (std::size_t i = k; i < n; ++i) a(i, j) -= mul(v[i], s);
    }
    // Q <- Q (I - inv v v^dagger)
    for (std::size_t r = 0; r < n; ++r) {
      T s(0);
      for (std::size_t i = k; i < n; ++i) s += mul(q(r, i), v[i]);
      s *= inv;
      for (std::size_t i = k; i < n; ++i) q(r, i) -= mul_conj(s, v[i]);
    }
    r_diag[k] = alpha;
  }
}

/// Attempts a Cholesky factorisation of a Hermitian matrix (lower triangle
/// read). Returns false at the first non-positive pivot. On success
/// `log_det` receives log(det a). `work` is scratch.
template <Scalar T>
bool cholesky_log_det(const Matrix<T>& a, Matrix<T>& work, double& log_det) {
  const std::size_t n = a.rows();
  work = a;
  log_det = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double d = real_of(work(j, j));
    for (std::size_t k = 0; k < j; ++k) d -= abs2(work(j, k));
    if (!(d > 0.0)) return false;
    const double l = std::sqrt(d);
    log_det += std::log(d);
    work(j, j) = T(l);
    const double inv = 1.0 / l;
    for (std::size_t i = j + 1; i < n; ++i) {
      T s = work(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= mul_conj(work(i, k), work(j, k));
      work(i, j) = s * inv;
    }
  }
  return true;
}

}  // namespace sepprob
