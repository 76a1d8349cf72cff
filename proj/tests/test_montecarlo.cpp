#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "risd2d/error.hpp"
#include "risd2d/montecarlo.hpp"
#include "risd2d/rate.hpp"

using namespace risd2d;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SystemConfig two_pair_config() {
  auto cfg = make_uniform_config(2, 4, 1.0, 1.0, {0.05, 0.08, 4.0}, PhaseDomain::continuous(), 1);
  cfg.power = {2.0, 0.5};
  cfg.noise_variance = {0.3, 0.7};
  return cfg;
}

ChannelSet fixed_channels() {
  ChannelSet ch;
  ch.g_a = {{{0.3, -0.2}, {1.1, 0.4}, {-0.5, 0.9}, {0.2, 0.2}},
            {{-0.7, 0.1}, {0.0, -1.2}, {0.6, 0.6}, {1.0, -0.3}}};
  ch.g_b = {{{0.8, 0.5}, {-0.4, 0.3}, {0.1, -1.0}, {0.9, 0.0}},
            {{0.2, -0.6}, {0.5, 0.5}, {-1.1, 0.2}, {0.3, 0.8}}};
  return ch;
}

}  // namespace

TEST(Sinr, HandComputedTwoPairs) {
  const auto cfg = two_pair_config();
  const auto ch = fixed_channels();
  const std::vector<double> theta = {0.1, 1.7, 3.2, 5.9};
  const PhaseNoiseRealization noise{{0.05, -0.2, 0.4, -0.1}};
  const std::vector<Complex> eta = {{0.1, -0.05}, {-0.2, 0.15}};

  // c_ij written out term by term.
  Complex c[2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      c[i][j] = ch.g_b[i][0] * std::exp(Complex(0, theta[0] + noise.delta[0])) * ch.g_a[j][0] +
                ch.g_b[i][1] * std::exp(Complex(0, theta[1] + noise.delta[1])) * ch.g_a[j][1] +
                ch.g_b[i][2] * std::exp(Complex(0, theta[2] + noise.delta[2])) * ch.g_a[j][2] +
                ch.g_b[i][3] * std::exp(Complex(0, theta[3] + noise.delta[3])) * ch.g_a[j][3];
    }
  }
  for (int i = 0; i < 2; ++i) {
    const int o = 1 - i;
    const double s_ii = cfg.power[i] * std::norm(c[i][i]);
    const double s_io = cfg.power[o] * std::norm(c[i][o]);
    const double total = s_ii + s_io;
    const double rx = 0.08 * 1.05 * total;

    const double expected_mode = s_ii / (s_io + 0.05 * total + rx + cfg.noise_variance[i]);
    EXPECT_NEAR(instantaneous_sinr(ch, theta, noise, cfg, i), expected_mode, 1e-12);

    const double tx = std::norm(std::sqrt(cfg.power[i]) * c[i][i] * eta[i] +
                                std::sqrt(cfg.power[o]) * c[i][o] * eta[o]);
    const double sampled_mode = s_ii / (s_io + tx + rx + cfg.noise_variance[i]);
    EXPECT_NEAR(instantaneous_sinr(ch, theta, noise, cfg, i, std::span<const Complex>(eta)),
                sampled_mode, 1e-12);
  }
}

TEST(Sinr, IdealHardwareSinglePair) {
  auto cfg = make_uniform_config(1, 4, 3.0, 1.0, {}, PhaseDomain::continuous(), 1);
  auto ch = fixed_channels();
  ch.g_a.resize(1);
  ch.g_b.resize(1);
  const std::vector<double> theta = {0.4, 0.9, 2.0, 4.4};
  const auto c = cascade(ch.g_b[0], theta, no_phase_noise(4).delta, ch.g_a[0]);
  EXPECT_NEAR(instantaneous_sinr(ch, theta, no_phase_noise(4), cfg, 0), 3.0 * std::norm(c), 1e-12);
}

TEST(Sinr, IdealHardwareDropsDistortionTerms) {
  auto cfg = two_pair_config();
  cfg.impairments = {};
  const auto ch = fixed_channels();
  const std::vector<double> theta = {0.1, 1.7, 3.2, 5.9};
  const auto nz = no_phase_noise(4);
  const std::vector<Complex> eta = {{0.0, 0.0}, {0.0, 0.0}};
  for (std::size_t i = 0; i < 2; ++i) {
    const double s_ii = cfg.power[i] * std::norm(cascade(ch.g_b[i], theta, nz.delta, ch.g_a[i]));
    const double s_io =
        cfg.power[1 - i] * std::norm(cascade(ch.g_b[i], theta, nz.delta, ch.g_a[1 - i]));
    const double want = s_ii / (s_io + cfg.noise_variance[i]);
    EXPECT_EQ(instantaneous_sinr(ch, theta, nz, cfg, i), want);
    EXPECT_EQ(instantaneous_sinr(ch, theta, nz, cfg, i, std::span<const Complex>(eta)), want);
  }
}

TEST(Sinr, ScalingChannelsRaisesSinr) {
  const auto cfg = two_pair_config();
  auto ch = fixed_channels();
  const std::vector<double> theta = {0.1, 1.7, 3.2, 5.9};
  const auto nz = no_phase_noise(4);
  const double before = instantaneous_sinr(ch, theta, nz, cfg, 0);
  for (auto& v : ch.g_a) for (auto& x : v) x *= 1.5;
  EXPECT_GT(instantaneous_sinr(ch, theta, nz, cfg, 0), before);
}

TEST(Sinr, RejectsMismatchedInputs) {
  const auto cfg = two_pair_config();
  auto ch = fixed_channels();
  const std::vector<double> theta = {0.1, 1.7, 3.2, 5.9};
  EXPECT_THROW(instantaneous_sinr(ch, theta, no_phase_noise(4), cfg, 2), DimensionMismatch);
  ch.g_a.pop_back();
  EXPECT_THROW(instantaneous_sinr(ch, theta, no_phase_noise(4), cfg, 0), DimensionMismatch);
}

TEST(NormalQuantile, KnownValues) {
  EXPECT_NEAR(normal_quantile_two_sided(0.95), 1.959963984540054, 1e-9);
  EXPECT_NEAR(normal_quantile_two_sided(0.99), 2.5758293035489, 1e-9);
  EXPECT_NEAR(normal_quantile_two_sided(0.6826894921370859), 1.0, 1e-9);
}

TEST(ErgodicRate, DeterministicChannelsGiveClosedForm) {
  auto cfg = make_uniform_config(2, 9, 10.0, kInf, {}, PhaseDomain::continuous(), 3);
  cfg.impairments.phase_concentration = kInf;
  const auto phases = optimal_single_pair_phases(0, cfg.geometry);
  McParams mc;
  mc.channel_draws = 200;
  const auto r = ergodic_rate_mc(cfg, phases, mc);
  const auto exact = rate_general(cfg, phases);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(r.per_pair[i].mean, exact.per_pair[i], 1e-12);
    EXPECT_NEAR(r.per_pair[i].half_width, 0.0, 1e-12);
  }
  EXPECT_EQ(r.report.variant, RateVariant::monte_carlo);
}

TEST(ErgodicRate, IdenticalForAnyThreadCount) {
  auto cfg = make_uniform_config(3, 9, 10.0, 5.0, {0.05, 0.05, 4.0}, PhaseDomain::discrete(2), 3);
  Rng rng = make_rng(1, 1);
  const auto phases = random_phases(9, cfg.domain, rng);
  McParams mc;
  mc.channel_draws = 3001;
  mc.noise_draws_per_channel = 2;
  const auto a = ergodic_rate_mc(cfg, phases, mc);
  for (unsigned t : {2u, 3u, 8u}) {
    mc.threads = t;
    const auto b = ergodic_rate_mc(cfg, phases, mc);
    EXPECT_EQ(a.sum.mean, b.sum.mean);
    EXPECT_EQ(a.sum.half_width, b.sum.half_width);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.per_pair[i].mean, b.per_pair[i].mean);
  }
  EXPECT_EQ(a.sum.samples, 6002u);
}

TEST(ErgodicRate, HalfWidthShrinksWithDraws) {
  auto cfg = make_uniform_config(2, 9, 10.0, 3.0, {0.05, 0.05, 4.0}, PhaseDomain::continuous(), 3);
  Rng rng = make_rng(1, 2);
  const auto phases = random_phases(9, cfg.domain, rng);
  McParams mc;
  mc.channel_draws = 20000;
  const double h1 = ergodic_rate_mc(cfg, phases, mc).sum.half_width;
  mc.channel_draws = 40000;
  const double h2 = ergodic_rate_mc(cfg, phases, mc).sum.half_width;
  EXPECT_NEAR(h2 / h1, 1 / std::sqrt(2.0), 0.2 / std::sqrt(2.0));
}

TEST(ErgodicRate, SampledDistortionPowerMatchesExpectedTerm) {
  const auto cfg = two_pair_config();
  const auto ch = fixed_channels();
  const std::vector<double> theta = {0.1, 1.7, 3.2, 5.9};
  const auto nz = no_phase_noise(4);
  Complex c[2];
  double expected = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    c[j] = cascade(ch.g_b[0], theta, nz.delta, ch.g_a[j]);
    expected += cfg.impairments.kappa_t * cfg.power[j] * std::norm(c[j]);
  }
  constexpr int n = 200000;
  Rng rng = make_rng(5, 0);
  double sum = 0.0, sq = 0.0;
  for (int s = 0; s < n; ++s) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < 2; ++j)
      acc += std::sqrt(cfg.power[j]) * c[j] *
             sample_complex_gaussian(tx_distortion_variance(cfg.impairments.kappa_t), rng);
    sum += std::norm(acc);
    sq += std::norm(acc) * std::norm(acc);
  }
  const double mean = sum / n;
  EXPECT_LT(std::fabs(mean - expected), 3 * std::sqrt((sq / n - mean * mean) / n));
}

TEST(ErgodicRate, SampledAndExpectedDistortionRatesClose) {
  // The rate is convex in the distortion power, so sampling it can only raise
  // the average.
  auto cfg = make_uniform_config(2, 9, 10.0, 3.0, {0.1, 0.1, 4.0}, PhaseDomain::continuous(), 3);
  Rng rng = make_rng(1, 3);
  const auto phases = random_phases(9, cfg.domain, rng);
  McParams mc;
  mc.channel_draws = 40000;
  const auto s = ergodic_rate_mc(cfg, phases, mc);
  mc.tx_mode = TxDistortionMode::expected;
  const auto e = ergodic_rate_mc(cfg, phases, mc);
  EXPECT_GE(s.sum.mean, e.sum.mean);
  EXPECT_LT((s.sum.mean - e.sum.mean) / e.sum.mean, 0.05);
}

TEST(ErgodicRate, IdealTransceiverCloseToClosedForm) {
  auto cfg = make_uniform_config(2, 16, 0.1, 10.0, {0.0, 0.0, 4.0}, PhaseDomain::continuous(), 2);
  Rng rng = make_rng(1, 4);
  const auto phases = random_phases(16, cfg.domain, rng);
  McParams mc;
  mc.channel_draws = 20000;
  const double sim = ergodic_rate_mc(cfg, phases, mc).sum.mean;
  EXPECT_NEAR(rate_no_transceiver_hwi(cfg, phases).sum / sim, 1.0, 0.05);
}

TEST(ErgodicRate, IdealRisCloseToClosedForm) {
  auto cfg = make_uniform_config(2, 9, 0.1, 10.0, {0.05, 0.05, kInf}, PhaseDomain::continuous(), 2);
  Rng rng = make_rng(1, 5);
  const auto phases = random_phases(9, cfg.domain, rng);
  McParams mc;
  mc.channel_draws = 20000;
  const double sim = ergodic_rate_mc(cfg, phases, mc).sum.mean;
  EXPECT_NEAR(rate_no_ris_hwi(cfg, phases).sum / sim, 1.0, 0.05);
}

TEST(ErgodicRate, UniformPhaseNoiseHidesPhaseDesign) {
  auto cfg = make_uniform_config(2, 16, 10.0, 10.0, {0.05, 0.05, 0.0}, PhaseDomain::continuous(), 2);
  const auto a = optimal_single_pair_phases(0, cfg.geometry);
  Rng rng = make_rng(1, 6);
  const auto b = random_phases(16, cfg.domain, rng);
  McParams mc;
  mc.channel_draws = 20000;
  const auto ra = ergodic_rate_mc(cfg, a, mc).sum;
  mc.seed = 2;
  const auto rb = ergodic_rate_mc(cfg, b, mc).sum;
  EXPECT_LT(std::fabs(ra.mean - rb.mean), ra.half_width + rb.half_width);
}

TEST(ErgodicRate, RejectsBadParams) {
  auto cfg = make_uniform_config(1, 4, 1.0, 1.0, {}, PhaseDomain::continuous(), 1);
  McParams mc;
  mc.channel_draws = 0;
  EXPECT_THROW(ergodic_rate_mc(cfg, continuous_phases(std::vector<double>(4)), mc),
               InvalidParameter);
  mc.channel_draws = 10;
  mc.confidence = 1.0;
  EXPECT_THROW(validate(mc), InvalidParameter);
}

TEST(MomentOracle, CoherentDeterministicCase) {
  auto cfg = make_uniform_config(1, 16, 1.0, kInf, {0, 0, kInf}, PhaseDomain::continuous(), 1);
  const auto opt = optimal_single_pair_phases(0, cfg.geometry);
  McParams mc;
  mc.channel_draws = 10;
  const auto m = moment_oracle(cfg, opt.theta, 0, 0, mc);
  EXPECT_NEAR(m.mean, 256.0, 1e-9);
  EXPECT_NEAR(m.half_width, 0.0, 1e-9);
}

TEST(MomentOracle, IsotropicCase) {
  auto cfg = make_uniform_config(2, 9, 1.0, 0.0, {0, 0, 4.0}, PhaseDomain::continuous(), 1);
  Rng rng = make_rng(2, 0);
  const auto phases = random_phases(9, cfg.domain, rng);
  McParams mc;
  mc.channel_draws = 50000;
  const auto m = moment_oracle(cfg, phases.theta, 1, 0, mc);
  EXPECT_LT(std::fabs(m.mean - 9.0), 3 * m.standard_error);
}

TEST(MomentOracle, MatchesClosedFormOnGrid) {
  int failures = 0, cells = 0;
  Rng rng = make_rng(3, 0);
  for (std::size_t l : {4, 9, 16}) {
    for (double eps : {0.0, 1.0, 10.0}) {
      for (double beta : {0.0, 1.0, 10.0}) {
        for (double conc : {0.0, 4.0, 1e4}) {
          auto cfg = make_uniform_config(2, l, 1.0, 1.0, {0, 0, conc}, PhaseDomain::continuous(), 5);
          cfg.links[0].rician_b = beta;
          cfg.links[1].rician_a = eps;
          const auto phases = random_phases(l, cfg.domain, rng);
          McParams mc;
          mc.channel_draws = 20000;
          mc.seed = 100 + cells;
          const auto m = moment_oracle(cfg, phases.theta, 0, 1, mc);
          const double want = cascaded_second_moment(
              phases.theta, phase_noise_chi(conc), 0, 1, cfg);
          failures += std::fabs(m.mean - want) > 3 * m.standard_error;
          ++cells;
        }
      }
    }
  }
  EXPECT_EQ(cells, 81);
  // 81 cells at a 0.27% two-sided 3-sigma rate: more than 2 misses has
  // probability below 0.2%.
  EXPECT_LE(failures, 2);
}
