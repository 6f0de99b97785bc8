#pragma once

// Inverse of the standard normal CDF: a rational first guess (Acklam's
// central/tail split, relative error ~1e-9) followed by one Halley step
// against an erfc-based CDF, giving |Phi(z) - u| at the level of double
// rounding.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace sepprob {

using NormalBlock = std::vector<double>;

/// Standard normal CDF via erfc, accurate in both tails.
inline double norm_cdf(double z) { return 0.5 * std::erfc(-z * (0.5 * std::numbers::sqrt2)); }

namespace detail {

inline double acklam_lower(double u) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (u < p_low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = u - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// u in (0, 0.5]
inline double inv_norm_cdf_lower(double u) {
  double x = acklam_lower(u);
  // Halley: e = Phi(x) - u, t = e / phi(x)
  const double e = norm_cdf(x) - u;
  const double t = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= t / (1.0 + 0.5 * x * t);
  return x;
}

}  // namespace detail

/// z with Phi(z) = u. Throws std::domain_error unless 0 < u < 1.
/// Exactly antisymmetric: inv_norm_cdf(1 - u) == -inv_norm_cdf(u) whenever 1 - u is exact.
inline double inv_norm_cdf(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("inv_norm_cdf: argument outside (0, 1)");
  if (u == 0.5) return 0.0;
  if (u < 0.5) return detail::inv_norm_cdf_lower(u);
  return -detail::inv_norm_cdf_lower(1.0 - u);
}

/// Element-wise inv_norm_cdf into a caller-owned buffer of equal length.
inline void uniforms_to_normals(std::span<const double> u, std::span<double> out) {
  if (u.size() != out.size()) throw std::invalid_argument("uniforms_to_normals: length mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = inv_norm_cdf(u[i]);
}

inline NormalBlock uniforms_to_normals(std::span<const double> u) {
  NormalBlock out(u.size());
  uniforms_to_normals(u, out);
  return out;
}

}  // namespace sepprob
