#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "risd2d/error.hpp"
#include "risd2d/impairments.hpp"
#include "risd2d/phase.hpp"

using namespace risd2d;
using std::numbers::pi;

namespace {

// sum_k (x/2)^(2k+p) / (k! (k+p)!) in extended precision.
long double series_bessel(int p, long double x) {
  const long double h = x / 2;
  long double term = p == 0 ? 1.0L : h;
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= h * h / (static_cast<long double>(k) * (k + p));
    sum += term;
    if (term < sum * 1e-22L) break;
  }
  return sum;
}

double rel_err(double got, long double want) {
  return static_cast<double>(std::fabs((got - want) / want));
}

// Von Mises CDF on [-pi, t] by composite Simpson integration of the density.
double von_mises_cdf(double t, double kappa) {
  const int n = 2000;
  const double a = -pi, h = (t - a) / n;
  const double norm = 2 * pi * std::cyl_bessel_i(0.0, kappa);
  auto f = [&](double x) { return std::exp(kappa * std::cos(x)) / norm; };
  double s = f(a) + f(t);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

double ks_statistic(std::vector<double> x, auto cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

}  // namespace

TEST(Bessel, ValuesAtZero) {
  EXPECT_EQ(bessel_i(0, 0.0), 1.0);
  EXPECT_EQ(bessel_i(1, 0.0), 0.0);
}

TEST(Bessel, MatchesSeriesOracleOnRange) {
  for (double x = 0.05; x <= 50.0; x += 0.35) {
    EXPECT_LT(rel_err(bessel_i(0, x), series_bessel(0, x)), 1e-10) << x;
    EXPECT_LT(rel_err(bessel_i(1, x), series_bessel(1, x)), 1e-10) << x;
  }
  EXPECT_LT(rel_err(bessel_i(0, 1.0), series_bessel(0, 1.0L)), 1e-10);
  EXPECT_LT(rel_err(bessel_i(1, 1.0), series_bessel(1, 1.0L)), 1e-10);
  EXPECT_LT(rel_err(bessel_i(0, 50.0), series_bessel(0, 50.0L)), 1e-10);
}

TEST(Bessel, AgreesWithStandardLibraryBeyondRange) {
  for (double x : {60.0, 100.0, 300.0, 700.0}) {
    EXPECT_LT(std::fabs(bessel_i(0, x) / std::cyl_bessel_i(0.0, x) - 1), 1e-10) << x;
    EXPECT_LT(std::fabs(bessel_i(1, x) / std::cyl_bessel_i(1.0, x) - 1), 1e-10) << x;
  }
}

TEST(Bessel, ScaledVariantStaysFinite) {
  EXPECT_NEAR(bessel_i_scaled(0, 10.0), std::exp(-10.0) * bessel_i(0, 10.0), 1e-15);
  const double big = bessel_i_scaled(0, 1e6);
  EXPECT_TRUE(std::isfinite(big));
  EXPECT_NEAR(big * std::sqrt(2 * pi * 1e6), 1.0, 1e-6);
}

TEST(Bessel, RejectsBadInput) {
  EXPECT_THROW(bessel_i(2, 1.0), InvalidParameter);
  EXPECT_THROW(bessel_i(0, -1.0), InvalidParameter);
}

TEST(PhaseNoiseChi, KnownValues) {
  EXPECT_EQ(phase_noise_chi(0.0), 0.0);
  EXPECT_GT(phase_noise_chi(1e6), 0.999999);
  EXPECT_EQ(phase_noise_chi(std::numeric_limits<double>::infinity()), 1.0);
  const double oracle = static_cast<double>(series_bessel(1, 4.0L) / series_bessel(0, 4.0L));
  EXPECT_NEAR(phase_noise_chi(4.0), oracle, 1e-8);
}

TEST(PhaseNoiseChi, StrictlyIncreasingAndBounded) {
  double prev = phase_noise_chi(0.0);
  for (double k : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double chi = phase_noise_chi(k);
    EXPECT_GT(chi, prev) << k;
    EXPECT_LT(chi, 1.0);
    prev = chi;
  }
}

TEST(VonMises, UniformAtZeroConcentration) {
  Rng rng = make_rng(21, 0);
  std::vector<double> x(100000);
  for (auto& v : x) v = sample_von_mises(0.0, rng);
  for (double v : x) {
    ASSERT_GE(v, -pi);
    ASSERT_LT(v, pi);
  }
  EXPECT_LT(ks_statistic(x, [](double t) { return (t + pi) / (2 * pi); }), 0.01);
}

TEST(VonMises, DistributionAtConcentrationFour) {
  Rng rng = make_rng(22, 0);
  std::vector<double> x(100000);
  for (auto& v : x) v = sample_von_mises(4.0, rng);
  EXPECT_LT(ks_statistic(x, [](double t) { return von_mises_cdf(t, 4.0); }), 0.01);

  double c = 0.0, s = 0.0, c2 = 0.0, s2 = 0.0;
  for (double v : x) {
    c += std::cos(v);
    s += std::sin(v);
    c2 += std::cos(v) * std::cos(v);
    s2 += std::sin(v) * std::sin(v);
  }
  const double n = static_cast<double>(x.size());
  const double mc = c / n, ms = s / n;
  const double se_c = std::sqrt((c2 / n - mc * mc) / n);
  const double se_s = std::sqrt((s2 / n - ms * ms) / n);
  EXPECT_LT(std::fabs(mc - phase_noise_chi(4.0)), 3 * se_c);
  EXPECT_LT(std::fabs(ms), 3 * se_s);
}

TEST(VonMises, CharacteristicFunctionMatchesChi) {
  constexpr int n = 100000;
  for (double k : {0.0, 1.0, 4.0, 10.0}) {
    Rng rng = make_rng(23, static_cast<std::uint64_t>(k));
    std::complex<double> acc = 0.0;
    for (int i = 0; i < n; ++i) acc += std::polar(1.0, sample_von_mises(k, rng));
    EXPECT_LT(std::abs(acc / double(n) - phase_noise_chi(k)), 3 / std::sqrt(double(n))) << k;
  }
}

TEST(VonMises, InfiniteConcentrationIsZero) {
  Rng rng = make_rng(24, 0);
  const auto r = sample_phase_noise(9, std::numeric_limits<double>::infinity(), rng);
  for (double d : r.delta) EXPECT_EQ(d, 0.0);
  EXPECT_EQ(no_phase_noise(4).delta.size(), 4u);
}

TEST(Distortion, Variances) {
  EXPECT_EQ(tx_distortion_variance(0.0), 0.0);
  EXPECT_EQ(tx_distortion_variance(0.05), 0.05);
  EXPECT_NEAR(rx_distortion_variance(0.05, 2.0), 0.1, 1e-15);
  EXPECT_THROW(tx_distortion_variance(1.0), InvalidParameter);
}

TEST(Distortion, SampledMomentsAndSymmetry) {
  constexpr int n = 100000;
  Rng rng = make_rng(25, 0);
  const double var = tx_distortion_variance(0.05);
  std::complex<double> sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto eta = sample_complex_gaussian(var, rng);
    sum += eta;
    sq += std::norm(eta);
  }
  EXPECT_NEAR(sq / n, 0.05, 0.02 * 0.05);
  EXPECT_LT(std::abs(sum / double(n)), 3 * std::sqrt(var / n));
}
