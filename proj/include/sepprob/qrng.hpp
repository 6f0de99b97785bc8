#pragma once

// Additive-recurrence quasirandom sequence built from the generalised golden
// ratio phi_d (the unique root > 1 of x^(d+1) = x + 1):
//
//   x_n = (alpha0 + n * (phi^-1, phi^-2, ..., phi^-d)) mod 1
//
// Every coordinate and increment is an unsigned 64-bit fixed-point fraction
// (value = integer / 2^64), so "mod 1" is plain wrap-around arithmetic and a
// point reached by skip-ahead is bit-identical to one reached by iteration.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace sepprob {

using Fixed64 = std::uint64_t;

namespace detail {

using quad = __float128;

inline quad pow_quad(quad x, unsigned e) {
  quad r = 1;
  while (e) {
    if (e & 1U) r *= x;
    x *= x;
    e >>= 1U;
  }
  return r;
}

// Newton on f(x) = x^(d+1) - x - 1 in 128-bit float, starting from a double root.
inline quad polish_phi(double phi, unsigned d) {
  quad x = phi;
  for (int i = 0; i < 3; ++i) {
    const quad xd = pow_quad(x, d);
    const quad f = xd * x - x - 1;
    const quad fp = quad(d + 1) * xd - 1;
    x -= f / fp;
  }
  return x;
}

// Round a value in [0, 1) to the nearest multiple of 2^-64 (wrapping 1.0 to 0).
inline Fixed64 to_fixed(quad v) {
  const quad two64 = quad(18446744073709551616.0);
  const quad scaled = v * two64 + quad(0.5);
  if (scaled >= two64) return 0;
  return static_cast<Fixed64>(scaled);
}

}  // namespace detail

/// Smallest positive root of x^(d+1) = x + 1, in (1, 2].
inline double solve_phi(unsigned d) {
  if (d == 0) throw std::invalid_argument("solve_phi: dimension must be >= 1");
  // f is convex and increasing past the root and f(2^(1/d)) > 0, so Newton from
  // there decreases monotonically. Starting at 2 needs O(d) steps for large d.
  double x = std::exp2(1.0 / d);
  for (int it = 0; it < 200; ++it) {
    const double xd = std::pow(x, static_cast<double>(d));
    const double f = xd * x - x - 1.0;
    const double fp = (d + 1.0) * xd - 1.0;
    const double step = f / fp;
    x -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return x;
}

inline double fixed_to_double(Fixed64 v) { return std::ldexp(static_cast<double>(v >> 11), -53); }

inline Fixed64 double_to_fixed(double v) {
  if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("double_to_fixed: value outside [0, 1)");
  return detail::to_fixed(detail::quad(v));
}

/// Immutable description of a d-dimensional sequence; safe to share across threads.
struct SequenceSpec {
  unsigned d = 0;
  double alpha0 = 0.5;
  double phi = 0.0;
  Fixed64 alpha0_fixed = 0;
  std::vector<Fixed64> alpha;  // alpha[j] ~ phi^-(j+1) * 2^64

  double alpha_value(std::size_t j) const { return fixed_to_double(alpha.at(j)); }
};

/// Builds the increment vector: 1/phi^j by repeated 128-bit multiplication,
/// rounded once to nearest at 64 bits.
inline SequenceSpec make_sequence(unsigned d, double alpha0 = 0.5) {
  if (d == 0) throw std::invalid_argument("make_sequence: dimension must be >= 1");
  SequenceSpec spec;
  spec.d = d;
  spec.alpha0 = alpha0;
  spec.alpha0_fixed = double_to_fixed(alpha0);
  spec.phi = solve_phi(d);
  const detail::quad inv_phi = detail::quad(1) / detail::polish_phi(spec.phi, d);
  spec.alpha.resize(d);
  detail::quad power = 1;
  for (unsigned j = 0; j < d; ++j) {
    power *= inv_phi;
    spec.alpha[j] = detail::to_fixed(power);
  }
  return spec;
}

/// Cursor over the sequence. Single owner; copy to fork.
class SequenceState {
 public:
  SequenceState(const SequenceSpec& spec, std::uint64_t n) : spec_(&spec), n_(n), coords_(spec.d) {
    for (unsigned j = 0; j < spec.d; ++j) coords_[j] = spec.alpha0_fixed + n * spec.alpha[j];
  }

  std::uint64_t index() const { return n_; }
  std::span<const Fixed64> coords() const { return coords_; }
  const SequenceSpec& spec() const { return *spec_; }

  void advance() {
    ++n_;
    const Fixed64* a = spec_->alpha.data();
    for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] += a[j];
  }

  /// Writes the coordinates as doubles in [0, 1) (top 53 bits, truncated).
  void uniforms(std::span<double> out) const {
    for (std::size_t j = 0; j < coords_.size(); ++j) out[j] = fixed_to_double(coords_[j]);
  }

  friend bool operator==(const SequenceState& a, const SequenceState& b) {
    return a.spec_ == b.spec_ && a.n_ == b.n_ && a.coords_ == b.coords_;
  }

 private:
  const SequenceSpec* spec_;
  std::uint64_t n_;
  std::vector<Fixed64> coords_;
};

/// Closed-form point n of the sequence as doubles in [0, 1).
inline std::vector<double> point_at(const SequenceSpec& spec, std::uint64_t n) {
  SequenceState s(spec, n);
  std::vector<double> out(spec.d);
  s.uniforms(out);
  return out;
}

inline SequenceState advance(SequenceState s) {
  s.advance();
  return s;
}

}  // namespace sepprob
