#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sepprob/qrng.hpp"

using namespace sepprob;

namespace {

// Bisection on x^(d+1) - x - 1 over [1, 2], long double.
long double bisect_phi(unsigned d) {
  long double lo = 1, hi = 2;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    (std::pow(mid, static_cast<long double>(d + 1)) - mid - 1 > 0 ? hi : lo) = mid;
  }
  return (lo + hi) / 2;
}

// (alpha0 + n * alpha_j) mod 2^64 through 128-bit products.
Fixed64 coord_oracle(const SequenceSpec& s, unsigned j, std::uint64_t n) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(n) * s.alpha[j] + s.alpha0_fixed;
  return static_cast<Fixed64>(prod);
}

}  // namespace

TEST(Qrng, GoldenRatio) { EXPECT_NEAR(solve_phi(1), (1 + std::sqrt(5.0)) / 2, 1e-15); }

TEST(Qrng, PlasticConstantAgainstBisection) {
  EXPECT_NEAR(solve_phi(2), static_cast<double>(bisect_phi(2)), 1e-15);
  EXPECT_NEAR(solve_phi(2), 1.32471795724475, 1e-14);
}

TEST(Qrng, PhiResidual) {
  for (unsigned d : {1u, 2u, 20u, 36u, 64u, 72u, 144u, 256u, 324u}) {
    const long double phi = solve_phi(d);
    const long double r = std::pow(phi, static_cast<long double>(d + 1)) - phi - 1;
    EXPECT_LE(std::abs(r), 1e-12L) << "d=" << d;
    EXPECT_GT(phi, 1.0L);
    EXPECT_NEAR(static_cast<double>(phi), static_cast<double>(bisect_phi(d)), 1e-14) << "d=" << d;
  }
}

TEST(Qrng, RejectsZeroDimension) {
  EXPECT_THROW(solve_phi(0), std::invalid_argument);
  EXPECT_THROW(make_sequence(0), std::invalid_argument);
}

TEST(Qrng, AlphaDecreasingInUnitInterval) {
  for (unsigned d : {1u, 2u, 64u, 324u}) {
    const auto s = make_sequence(d);
    for (unsigned j = 0; j < d; ++j) {
      EXPECT_GT(s.alpha_value(j), 0.0);
      EXPECT_LT(s.alpha_value(j), 1.0);
      if (j) {
        EXPECT_LT(s.alpha[j], s.alpha[j - 1]);
      }
    }
  }
}

TEST(Qrng, AlphaValues) {
  const auto s1 = make_sequence(1, 0.0);
  EXPECT_NEAR(s1.alpha_value(0), 0.61803398874989, 1e-14);
  const auto s2 = make_sequence(2, 0.5);
  const double phi = static_cast<double>(bisect_phi(2));
  EXPECT_NEAR(s2.alpha_value(0), 1 / phi, 1e-15);
  EXPECT_NEAR(s2.alpha_value(1), 1 / (phi * phi), 1e-15);
  EXPECT_NEAR(s2.alpha_value(0), 0.7548776662, 1e-10);
  EXPECT_NEAR(s2.alpha_value(1), 0.5698402910, 1e-10);
  EXPECT_EQ(make_sequence(5, 0.5).alpha0, 0.5);
}

TEST(Qrng, HighPowersOfAlphaAreAccurate) {
  const auto s = make_sequence(324);
  const long double inv = 1.0L / bisect_phi(324);
  for (unsigned j : {0u, 99u, 323u}) {
    const long double ref = std::pow(inv, static_cast<long double>(j + 1));
    const long double got = std::ldexp(static_cast<long double>(s.alpha[j]), -64);
    EXPECT_LE(std::abs(got - ref), 1e-15L * ref) << j;
  }
}

TEST(Qrng, FirstPoints) {
  for (unsigned d : {1u, 7u, 64u}) {
    for (double u : point_at(make_sequence(d, 0.5), 0)) EXPECT_EQ(u, 0.5);
  }
  const auto s = make_sequence(1, 0.0);
  EXPECT_NEAR(point_at(s, 1)[0], 0.61803398874989, 1e-14);
  EXPECT_NEAR(point_at(s, 2)[0], 0.23606797749979, 1e-14);
}

TEST(Qrng, SkipAheadMatchesAdvance) {
  const auto s = make_sequence(64);
  for (std::uint64_t k : {0ULL, 1'000'000ULL, 1'000'000'000ULL}) {
    const SequenceState next = advance(SequenceState(s, k));
    EXPECT_TRUE(next == SequenceState(s, k + 1)) << "k=" << k;
    EXPECT_EQ(point_at(s, k + 1), [&] {
      std::vector<double> u(s.d);
      next.uniforms(u);
      return u;
    }());
  }
}

TEST(Qrng, SkipAheadMatches128BitOracle) {
  const auto s = make_sequence(256, 0.5);
  const std::uint64_t n = 1'000'000'000ULL;
  const SequenceState st(s, n);
  for (unsigned j = 0; j < s.d; ++j) ASSERT_EQ(st.coords()[j], coord_oracle(s, j, n)) << j;
}

TEST(Qrng, IteratedAdvanceEqualsPointAt) {
  const auto s = make_sequence(36);
  SequenceState st(s, 0);
  for (int i = 0; i < 100'000; ++i) st.advance();
  EXPECT_TRUE(st == SequenceState(s, 100'000));
  EXPECT_EQ(st.index(), 100'000u);
}

TEST(Qrng, WrapAround) {
  const auto s = make_sequence(1, 0.999999);
  const SequenceState st(s, 0);
  const auto next = advance(st);
  std::vector<double> u(1);
  next.uniforms(u);
  EXPECT_GE(u[0], 0.0);
  EXPECT_LT(u[0], 1.0);
  EXPECT_NEAR(u[0], 0.999999 + s.alpha_value(0) - 1.0, 1e-15);
}

TEST(Qrng, CoordinateMeans) {
  const auto s = make_sequence(2);
  SequenceState st(s, 0);
  std::vector<double> u(2);
  double m0 = 0, m1 = 0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i, st.advance()) {
    st.uniforms(u);
    m0 += u[0];
    m1 += u[1];
  }
  EXPECT_NEAR(m0 / n, 0.5, 0.005);
  EXPECT_NEAR(m1 / n, 0.5, 0.005);
}

// Max absolute bin-count deviation on a 32x32 grid shifted by (ox, oy).
double grid_deviation(const std::vector<std::pair<double, double>>& pts, double ox, double oy) {
  std::vector<int> bins(32 * 32, 0);
  for (auto [x, y] : pts) {
    const double sx = std::fmod(x + ox, 1.0), sy = std::fmod(y + oy, 1.0);
    ++bins[std::min(31, static_cast<int>(sx * 32)) * 32 + std::min(31, static_cast<int>(sy * 32))];
  }
  const double expect = static_cast<double>(pts.size()) / bins.size();
  double worst = 0;
  for (int b : bins) worst = std::max(worst, std::abs(b - expect));
  return worst;
}

TEST(Qrng, LowerDiscrepancyThanPseudorandom) {
  const int n = 100'000;
  const auto s = make_sequence(2);
  std::vector<std::pair<double, double>> q, r;
  SequenceState st(s, 0);
  std::vector<double> u(2);
  for (int i = 0; i < n; ++i, st.advance()) {
    st.uniforms(u);
    q.emplace_back(u[0], u[1]);
  }
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif;
  for (int i = 0; i < n; ++i) r.emplace_back(unif(rng), unif(rng));

  std::mt19937_64 offs(7);
  int wins = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    const double ox = unif(offs), oy = unif(offs);
    wins += grid_deviation(q, ox, oy) < grid_deviation(r, ox, oy);
  }
  EXPECT_GE(wins, static_cast<int>(std::ceil(0.95 * trials)));
}
