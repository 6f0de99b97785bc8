#pragma once

// Closed-form separability quantities and the integral identities behind them:
// generalized hypergeometric series (with Levin u acceleration at unit
// argument), the two-qubit HS separability probability as a function of the
// Dyson-type parameter alpha, the Lovas-Andai separability functions, Li2,
// tanh-sinh quadrature and the X-state integral checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepprob {

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HypSeriesParams {
  std::vector<double> top;
  std::vector<double> bottom;
  double z = 0.0;
  bool regularized = false;
};

struct HypSeriesResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t terms = 0;
  int levin_order = 0;  // 0 for plain summation
};

inline constexpr std::size_t kMaxSeriesTerms = 1'000'000;
/// Largest relative error estimate accepted from the accelerated z = 1 path.
inline constexpr double kLevinAcceptTol = 1e-6;

namespace detail {

inline bool is_nonpositive_integer(double a) { return a <= 0.0 && a == std::floor(a); }

inline long double rgamma(long double b) {
  if (is_nonpositive_integer(static_cast<double>(b))) return 0.0L;
  return 1.0L / std::tgamma(b);
}

// Terms of sum_n prod (a)_n / prod (b)_n z^n / n!, optionally divided by prod Gamma(b).
struct TermGenerator {
  const HypSeriesParams& p;
  long double t;
  std::size_t n = 0;

  explicit TermGenerator(const HypSeriesParams& params) : p(params), t(1.0L) {
    if (p.regularized)
      for (double b : p.bottom) t *= rgamma(b);
  }

  long double current() const { return t; }

  // Ratio t_{n+1} / t_n, then advance.
  long double step() {
    long double r = static_cast<long double>(p.z) / static_cast<long double>(n + 1);
    for (double a : p.top) r *= a + static_cast<long double>(n);
    for (double b : p.bottom) {
      const long double bn = b + static_cast<long double>(n);
      if (bn == 0.0L) throw SeriesError("hyp_series: bottom parameter hits a pole");
      r /= bn;
    }
    t *= r;
    ++n;
    return r;
  }
};

inline std::string describe(const HypSeriesParams& p) {
  std::ostringstream os;
  os << "top={";
  for (std::size_t i = 0; i < p.top.size(); ++i) os << (i ? "," : "") << p.top[i];
  os << "} bottom={";
  for (std::size_t i = 0; i < p.bottom.size(); ++i) os << (i ? "," : "") << p.bottom[i];
  os << "} z=" << p.z;
  return os.str();
}

// Levin u transform of partial sums s_0..s_k (n0 = 0, beta = 1).
inline long double levin_u(const std::vector<long double>& terms, const std::vector<long double>& sums, int k) {
  constexpr long double beta = 1.0L;
  long double num = 0.0L;
  long double den = 0.0L;
  long double binom = 1.0L;
  for (int j = 0; j <= k; ++j) {
    const long double w = (j + beta) * terms[j];
    const long double c = (j % 2 ? -binom : binom) * std::pow((j + beta) / (k + beta), static_cast<long double>(k - 1));
    num += c * sums[j] / w;
    den += c / w;
    binom = binom * (k - j) / (j + 1);
  }
  return num / den;
}

}  // namespace detail

/// Generalized hypergeometric pFq (or its regularized form) at real z.
/// |z| < 1: summation until the geometric tail bound drops below tol * |sum|.
/// z = 1 with parameter excess sum(bottom) - sum(top) > 0: Levin u acceleration
/// with the order picked by the smallest change between successive orders.
/// Throws SeriesError when neither path converges.
inline HypSeriesResult hyp_series_eval(const HypSeriesParams& p, double tol = 1e-16) {
  const bool terminating = std::any_of(p.top.begin(), p.top.end(), detail::is_nonpositive_integer);
  if (!terminating && !(std::abs(p.z) < 1.0)) {
    double excess = 0.0;
    for (double b : p.bottom) excess += b;
    for (double a : p.top) excess -= a;
    if (p.z != 1.0 || !(excess > 0.0))
      throw SeriesError("hyp_series: divergent or unsupported argument (" + detail::describe(p) + ")");

    constexpr int kmax = 30;
    detail::TermGenerator gen(p);
    std::vector<long double> terms, sums;
    long double s = 0.0L;
    for (int n = 0; n <= kmax; ++n) {
      terms.push_back(gen.current());
      s += gen.current();
      sums.push_back(s);
      gen.step();
    }
    if (std::any_of(terms.begin(), terms.end(), [](long double t) { return t == 0.0L; }))
      throw SeriesError("hyp_series: zero term in accelerated series (" + detail::describe(p) + ")");

    long double prev = detail::levin_u(terms, sums, 2);
    long double best = prev;
    long double best_diff = std::numeric_limits<long double>::infinity();
    int best_k = 2;
    for (int k = 3; k <= kmax; ++k) {
      const long double v = detail::levin_u(terms, sums, k);
      const long double diff = std::abs(v - prev);
      if (diff < best_diff) {
        best_diff = diff;
        best = v;
        best_k = k;
      }
      prev = v;
    }
    HypSeriesResult r{static_cast<double>(best), static_cast<double>(best_diff), terms.size(), best_k};
    if (!std::isfinite(r.value) || r.error_estimate > kLevinAcceptTol * std::max(1.0, std::abs(r.value))) {
      std::ostringstream os;
      os << "hyp_series: acceleration did not converge (" << detail::describe(p) << "; best order " << best_k
         << ", estimate " << r.value << ", change " << r.error_estimate << ")";
      throw SeriesError(os.str());
    }
    return r;
  }

  detail::TermGenerator gen(p);
  long double s = 0.0L;
  for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
    const long double t = gen.current();
    s += t;
    if (t == 0.0L && (terminating || n > 0)) return {static_cast<double>(s), 0.0, n + 1, 0};
    const long double r = std::abs(gen.step());
    if (r < 1.0L) {
      const long double tail = std::abs(gen.current()) / (1.0L - r);
      if (tail <= tol * std::abs(s)) return {static_cast<double>(s), static_cast<double>(tail), n + 1, 0};
    }
  }
  throw SeriesError("hyp_series: no convergence within " + std::to_string(kMaxSeriesTerms) + " terms (" +
                    detail::describe(p) + ")");
}

inline double hyp_series(const HypSeriesParams& p, double tol = 1e-16) { return hyp_series_eval(p, tol).value; }

/// Parameters of the unit-argument regularized 6F5 in the HS separability formula.
inline HypSeriesParams psep_hs_series(double a) {
  return {{1.0, a + 1.5, 1.25 * a + 1.0, (5 * a + 6) / 4, 1.25 * a + 19.0 / 8, 1.5 * (a + 1)},
          {(a + 4) / 2, 1.25 * a + 11.0 / 8, (5 * a + 7) / 4, (5 * a + 9) / 4, 2 * (a + 1)},
          1.0,
          true};
}

/// Two-qubit-type HS separability probability for Dyson-type parameter alpha
/// (1 real, 2 complex, 4 quaternionic).
inline double psep_hs(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("psep_hs: alpha must be positive");
  const long double a = alpha;
  const long double pre = std::sqrt(std::numbers::pi_v<long double>) * std::pow(2.0L, -4.5L * a - 2.5L) *
                          std::tgamma(1.5L * (a + 1)) * std::tgamma(1.25L * a + 19.0L / 8) *
                          std::tgamma(2 * a + 2) * std::tgamma(2.5L * a + 2) / std::tgamma(a);
  return static_cast<double>(1.0L - pre * static_cast<long double>(hyp_series(psep_hs_series(alpha))));
}

inline double q_hs(double alpha) { return psep_hs(alpha) / 2; }

/// Lovas-Andai separability function for Dyson index d, eps = singular-value ratio.
inline double chi_master(double d, double eps) {
  if (!(d > 0.0)) throw std::domain_error("chi_master: d must be positive");
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("chi_master: eps outside [0, 1]");
  if (eps == 1.0) return 1.0;
  if (eps == 0.0) return 0.0;
  const double h = d / 2;
  const double f = hyp_series({{-h, h, d}, {h + 1, 3 * h + 1}, eps * eps, true});
  return std::pow(eps, d) * std::pow(std::tgamma(d + 1), 3) * f / std::pow(std::tgamma(h + 1), 2);
}

/// Induced-measure separability functions in z = eps^2 for d in {2, 4, 6}.
inline double chi_dk(int d, int k, double z) {
  if (k < 0) throw std::domain_error("chi_dk: k must be >= 0");
  if (!(z >= 0.0 && z <= 1.0)) throw std::domain_error("chi_dk: z outside [0, 1]");
  const double K = k;
  const double w = std::pow(1 - z, K + 1);
  switch (d) {
    case 2:
      return 1 + w * (-1 + z / (K + 3));
    case 4:
      return 1 + w * (-1 - (K + 1) * z + 2 * (2 * K * K + 14 * K + 21) / ((K + 5) * (K + 6)) * z * z -
                      6 * (K + 3) / ((K + 6) * (K + 7)) * z * z * z);
    case 6: {
      const double z2 = z * z, z3 = z2 * z;
      const double c3 = 3 * (3 * K * K * K * K + 60 * K * K * K + 432 * K * K + 1230 * K + 1264) /
                        (2 * (K + 7) * (K + 8) * (K + 9));
      const double c4 = 6 * (K + 4) * (3 * K * K + 33 * K + 80) / ((K + 8) * (K + 9) * (K + 10));
      const double c5 = 30 * (K + 4) * (K + 5) / ((K + 9) * (K + 10) * (K + 11));
      return 1 + w * (-1 - (K + 1) * z - (K + 1) * (K + 2) / 2 * z2 + c3 * z3 - c4 * z3 * z + c5 * z3 * z2);
    }
    default:
      throw std::invalid_argument("chi_dk: d must be 2, 4 or 6");
  }
}

/// Li2(x) for -1 <= x <= 1.
inline double dilog(double x) {
  constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6;
  if (!(x >= -1.0 && x <= 1.0)) throw std::domain_error("dilog: argument outside [-1, 1]");
  if (x == 1.0) return pi2_6;
  if (x < 0.0) {  // Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2, x/(x-1) in (0, 1/2]
    const double l = std::log1p(-x);
    return -dilog(x / (x - 1)) - 0.5 * l * l;
  }
  if (x > 0.5) return pi2_6 - std::log(x) * std::log1p(-x) - dilog(1 - x);
  double sum = 0.0, p = x;
  for (int n = 1; n < 200; ++n) {
    const double t = p / (static_cast<double>(n) * n);
    sum += t;
    if (t < 1e-18 * sum) break;
    p *= x;
  }
  return sum;
}

/// Dilogarithmic separability function of the 10-dim rebit-retrit X-state model.
/// Equal to chi_master(1, eps).
inline double sep_function_10d(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::domain_error("sep_function_10d: eps outside (0, 1]");
  if (eps == 1.0) return 1.0;
  const double e2 = eps * eps;
  const double li = e2 * (4 * dilog(eps) - dilog(e2));
  double rest;  // (1 - eps^4) atanh(eps) + eps^3 - eps
  if (eps < 0.25) {
    double atanh_minus = 0.0;  // atanh(eps) - eps without cancellation
    double p = eps * e2;
    for (int k = 1; k < 40; ++k) {
      atanh_minus += p / (2 * k + 1);
      p *= e2;
    }
    rest = atanh_minus - e2 * e2 * std::atanh(eps) + e2 * eps;
  } else {
    // factored so the atanh divergence at eps -> 1 stays bounded
    rest = (1 - eps) * (1 + eps) * (1 + e2) * std::atanh(eps) + e2 * eps - eps;
  }
  return 2 * (li + rest) / (std::numbers::pi * std::numbers::pi * e2);
}

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int levels = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tanh-sinh quadrature on [a, b]. Abscissae are built from their distance to
/// the nearer endpoint, so integrable endpoint singularities are never sampled
/// at the endpoint itself. Halves the step until successive estimates agree to tol.
inline QuadResult tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                            int max_level = 12) {
  if (!(b > a)) throw std::invalid_argument("tanh_sinh: need a < b");
  constexpr double t_max = 4.5;
  const double half = 0.5 * (b - a);
  const double hpi = 0.5 * std::numbers::pi;

  auto contribution = [&](double t) {
    const double u = hpi * std::sinh(t);
    const double e = std::exp(-2 * std::abs(u));
    const double delta = (b - a) * e / (1 + e);  // distance to nearer endpoint
    const double ch = std::cosh(u);
    const double w = half * hpi * std::cosh(t) / (ch * ch);
    double s = 0.0;
    const double xl = a + delta;
    const double xr = b - delta;
    if (xl > a) s += f(xl);
    if (xr < b) s += f(xr);
    return w * s;
  };

  double h = 1.0;
  double sum = half * hpi * f(a + half);
  for (double t = h; t <= t_max; t += h) sum += contribution(t);
  double estimate = h * sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= t_max; t += 2 * h) sum += contribution(t);
    const double next = h * sum;
    const double err = std::abs(next - estimate);
    estimate = next;
    if (!std::isfinite(estimate)) throw QuadratureError("tanh_sinh: non-finite integrand value");
    if (level >= 3 && err <= tol * std::abs(estimate)) return {estimate, err, level};
  }
  throw QuadratureError("tanh_sinh: no convergence at level " + std::to_string(max_level));
}

/// (P(eta) + Q(eta) ln eta) / (eta - 1)^m with a removable singularity at eta = 1.
/// Coefficients are ascending in eta. For |1 - eta| < 1/2 the kernel is
/// evaluated from its Taylor series in t = 1 - eta, which avoids the 0/0.
class LogRationalKernel {
 public:
  LogRationalKernel(std::vector<double> p, std::vector<double> q, int m) : p_(std::move(p)), q_(std::move(q)), m_(m) {
    constexpr int n_coef = 90;
    const auto pt = shift(p_, n_coef + m_);
    const auto qt = shift(q_, n_coef + m_);
    std::vector<double> c(n_coef + m_, 0.0);
    double scale = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      double v = pt[i];
      for (std::size_t j = 1; j <= i; ++j) v -= qt[i - j] / static_cast<double>(j);  // ln(1-t) = -sum t^j/j
      c[i] = v;
      scale = std::max(scale, std::abs(v));
    }
    for (int i = 0; i < m_; ++i)
      if (std::abs(c[i]) > 1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument("LogRationalKernel: singularity at eta = 1 is not removable");
    const double sign = m_ % 2 ? -1.0 : 1.0;  // (eta - 1)^m = (-t)^m
    series_.assign(c.begin() + m_, c.end());
    for (auto& v : series_) v *= sign;
  }

  double operator()(double eta) const {
    const double t = 1 - eta;
    if (std::abs(t) < 0.5) {
      double s = 0.0;
      for (auto it = series_.rbegin(); it != series_.rend(); ++it) s = s * t + *it;
      return s;
    }
    return (horner(p_, eta) + horner(q_, eta) * std::log(eta)) / std::pow(eta - 1, m_);
  }

 private:
  static double horner(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
  }

  // Coefficients of poly(1 - t) in t.
  static std::vector<double> shift(const std::vector<double>& c, std::size_t len) {
    std::vector<double> out(len, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      double binom = 1.0;
      for (std::size_t i = 0; i <= k; ++i) {
        out[i] += c[k] * binom * (i % 2 ? -1.0 : 1.0);
        binom = binom * static_cast<double>(k - i) / static_cast<double>(i + 1);
      }
    }
    return out;
  }

  std::vector<double> p_, q_;
  int m_;
  std::vector<double> series_;
};

namespace xstate {

// 8-dim X-state kernel: (-3 eta^2 + (eta + 4) eta ln eta + ln eta + 3) / (eta - 1)^5
inline const LogRationalKernel& kernel_8d() {
  static const LogRationalKernel k({3, 0, -3}, {1, 4, 1}, 5);
  return k;
}

// 10-dim rebit-retrit kernel:
// (3 (eta + 1)(eta^2 + 8 eta + 1) ln eta - (eta - 1)(11 eta^2 + 38 eta + 11)) / (eta - 1)^7
inline const LogRationalKernel& kernel_10d() {
  static const LogRationalKernel k({11, 27, -27, -11}, {3, 27, 27, 3}, 7);
  return k;
}

inline double numerator_8d(double eta) { return std::numbers::pi * eta * kernel_8d()(eta) / 40320; }
inline double denominator_8d(double eta) { return std::numbers::pi * std::sqrt(eta) * kernel_8d()(eta) / 40320; }
inline double denominator_10d(double eta) { return std::numbers::pi * eta * kernel_10d()(eta) / 1209600; }

/// Sub-optimal separability function from the leading 5x5 minor.
inline double bound_function_10d(double eta) {
  return 2 * (std::sqrt((1 - eta) * eta) + std::asin(std::sqrt(eta))) / std::numbers::pi;
}

}  // namespace xstate

struct IdentityCheck {
  std::string label;
  std::string closed_form;
  double expected = 0.0;
  double computed = 0.0;
  double rel_error = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
  }
};

inline IdentityReport verify_xstate_identities(double tol = 1e-8) {
  using std::numbers::pi;
  constexpr double qtol = 1e-13;
  const double i7 = tanh_sinh(xstate::numerator_8d, 0, 1, qtol).value;
  const double i8 = tanh_sinh(xstate::denominator_8d, 0, 1, qtol).value;
  const double i9 = tanh_sinh(xstate::denominator_10d, 0, 1, qtol).value;
  const double i10 =
      tanh_sinh([](double h) { return xstate::denominator_10d(h) * xstate::bound_function_10d(h); }, 0, 1, qtol).value;
  const double i11 =
      tanh_sinh([](double h) { return xstate::denominator_10d(h) * sep_function_10d(std::sqrt(h)); }, 0, 1, qtol)
          .value;

  IdentityReport rep;
  auto add = [&](std::string label, std::string form, double expected, double computed) {
    IdentityCheck c{std::move(label), std::move(form), expected, computed, 0.0, tol, false};
    c.rel_error = std::abs(computed - expected) / std::abs(expected);
    c.pass = c.rel_error <= tol;
    rep.checks.push_back(std::move(c));
  };
  add("8d numerator integral", "pi/967680", pi / 967680, i7);
  add("8d denominator integral", "pi^3/5160960", pi * pi * pi / 5160960, i8);
  add("8d separability ratio", "16/(3*pi^2)", 16 / (3 * pi * pi), i7 / i8);
  add("10d denominator integral", "pi/29030400", pi / 29030400, i9);
  add("10d minor-bound ratio", "919/5-264*ln(2)", 0.80914433217443831385, i10 / i9);
  add("10d dilogarithm ratio", "272/(45*pi^2)", 272 / (45 * pi * pi), i11 / i9);
  return rep;
}

}  // namespace sepprob
