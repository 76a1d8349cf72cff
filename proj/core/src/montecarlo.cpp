#include "risd2d/montecarlo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "parallel.hpp"
#include "risd2d/error.hpp"

namespace risd2d {
namespace {

// Mean and normal-approximation half-width of i.i.d. values.
McEstimate summarize(std::span<const double> values, double z, std::size_t samples) {
  McEstimate est;
  est.samples = samples;
  const auto n = static_cast<double>(values.size());
  if (values.empty()) return est;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  est.mean = mean;
  est.standard_error = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  est.half_width = z * est.standard_error;
  return est;
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

void validate(const McParams& mc) {
  if (mc.channel_draws < 1) throw InvalidParameter("channel_draws must be >= 1");
  if (mc.noise_draws_per_channel < 1) {
    throw InvalidParameter("noise_draws_per_channel must be >= 1");
  }
  if (!(mc.confidence > 0.0 && mc.confidence < 1.0)) {
    throw InvalidParameter("confidence must lie in (0, 1)");
  }
}

double normal_quantile_two_sided(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InvalidParameter("confidence must lie in (0, 1)");
  }
  // Invert erf by Newton iterations on Phi(z) = (1 + confidence) / 2.
  const double target = 0.5 * (1.0 + confidence);
  double z = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    const double step = (cdf - target) / pdf;
    z -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return z;
}

Complex cascade(std::span<const Complex> g_b, std::span<const double> theta,
                std::span<const double> phase_noise, std::span<const Complex> g_a) {
  if (g_b.size() != theta.size() || g_a.size() != theta.size() ||
      phase_noise.size() != theta.size()) {
    throw DimensionMismatch("cascade operands have inconsistent lengths");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t ell = 0; ell < theta.size(); ++ell) {
    acc += g_b[ell] * std::polar(1.0, theta[ell] + phase_noise[ell]) * g_a[ell];
  }
  return acc;
}

double instantaneous_sinr(const ChannelSet& channels, std::span<const double> theta,
                          const PhaseNoiseRealization& noise, const SystemConfig& config,
                          std::size_t pair, std::optional<std::span<const Complex>> tx_distortion) {
  const std::size_t pairs = config.pairs();
  if (pair >= pairs) throw DimensionMismatch("pair index out of range");
  if (channels.g_a.size() != pairs || channels.g_b.size() != pairs) {
    throw DimensionMismatch("channel set does not match the pair count");
  }
  if (tx_distortion && tx_distortion->size() != pairs) {
    throw DimensionMismatch("expected one transmitter distortion sample per pair");
  }
  const auto& imp = config.impairments;
  double desired = 0.0;
  double interference = 0.0;
  double total = 0.0;
  Complex distorted{0.0, 0.0};
  for (std::size_t j = 0; j < pairs; ++j) {
    const Complex c = cascade(channels.g_b[pair], theta, noise.delta, channels.g_a[j]);
    const double received = config.power[j] * std::norm(c);
    total += received;
    if (j == pair) {
      desired = received;
    } else {
      interference += received;
    }
    if (tx_distortion) distorted += std::sqrt(config.power[j]) * c * (*tx_distortion)[j];
  }
  const double tx_term = tx_distortion ? std::norm(distorted) : imp.kappa_t * total;
  const double rx_term = imp.kappa_r * (1.0 + imp.kappa_t) * total;
  return desired / (interference + tx_term + rx_term + config.noise_variance[pair]);
}

McRateResult ergodic_rate_mc(const SystemConfig& config, const PhaseConfig& phases,
                             const McParams& mc) {
  validate(mc);
  validate(config);
  validate_phases(phases, config.elements());
  const std::size_t pairs = config.pairs();
  const std::size_t draws = mc.channel_draws;
  const std::size_t inner = mc.noise_draws_per_channel;
  const auto los = los_responses(config.geometry);
  const auto& imp = config.impairments;
  const bool sample_tx = mc.tx_mode == TxDistortionMode::sampled && imp.kappa_t > 0.0;

  // Per channel draw: the average over its inner draws, for every pair.
  std::vector<double> cluster(draws * pairs, 0.0);
  detail::parallel_for(draws, mc.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<Complex> eta(pairs);
    for (std::size_t d = begin; d < end; ++d) {
      Rng rng = make_rng(mc.seed, d);
      const auto channels = build_channels(config, los, rng);
      for (std::size_t s = 0; s < inner; ++s) {
        const auto noise =
            sample_phase_noise(config.elements(), imp.phase_concentration, rng);
        if (sample_tx) {
          for (auto& e : eta) e = sample_complex_gaussian(tx_distortion_variance(imp.kappa_t), rng);
        }
        for (std::size_t i = 0; i < pairs; ++i) {
          const double sinr =
              sample_tx ? instantaneous_sinr(channels, phases.theta, noise, config, i,
                                             std::span<const Complex>(eta))
                        : instantaneous_sinr(channels, phases.theta, noise, config, i);
          cluster[d * pairs + i] += log2_1p(sinr);
        }
      }
      for (std::size_t i = 0; i < pairs; ++i) cluster[d * pairs + i] /= static_cast<double>(inner);
    }
  });

  const double z = normal_quantile_two_sided(mc.confidence);
  const std::size_t samples = draws * inner;
  McRateResult result;
  std::vector<double> column(draws);
  for (std::size_t i = 0; i < pairs; ++i) {
    for (std::size_t d = 0; d < draws; ++d) column[d] = cluster[d * pairs + i];
    result.per_pair.push_back(summarize(column, z, samples));
  }
  for (std::size_t d = 0; d < draws; ++d) {
    double s = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) s += cluster[d * pairs + i];
    column[d] = s;
  }
  result.sum = summarize(column, z, samples);

  auto& report = result.report;
  report.variant = RateVariant::monte_carlo;
  std::vector<double> hw;
  for (const auto& e : result.per_pair) {
    report.per_pair.push_back(e.mean);
    report.sum += e.mean;
    hw.push_back(e.half_width);
  }
  report.half_width = std::move(hw);
  report.sum_half_width = result.sum.half_width;
  return result;
}

McEstimate moment_oracle(const SystemConfig& config, std::span<const double> theta,
                         std::size_t rx, std::size_t tx, const McParams& mc) {
  validate(mc);
  if (rx >= config.pairs() || tx >= config.pairs()) {
    throw DimensionMismatch("pair index out of range");
  }
  if (theta.size() != config.elements()) {
    throw DimensionMismatch("phase vector length does not match the element count");
  }
  const auto& b = config.geometry.pairs[rx];
  const auto& a = config.geometry.pairs[tx];
  const auto los_b = steering_vector(config.elements(), b.departure_azimuth, b.departure_elevation);
  const auto los_a = steering_vector(config.elements(), a.arrival_azimuth, a.arrival_elevation);
  const double rician_b = config.links[rx].rician_b;
  const double rician_a = config.links[tx].rician_a;
  const double concentration = config.impairments.phase_concentration;
  const std::size_t draws = mc.channel_draws;
  const std::size_t inner = mc.noise_draws_per_channel;

  std::vector<double> cluster(draws, 0.0);
  detail::parallel_for(draws, mc.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t d = begin; d < end; ++d) {
      Rng rng = make_rng(mc.seed, d);
      const auto h_a = sample_rician(los_a, rician_a, rng);
      const auto h_b = sample_rician(los_b, rician_b, rng);
      double acc = 0.0;
      for (std::size_t s = 0; s < inner; ++s) {
        const auto noise = sample_phase_noise(config.elements(), concentration, rng);
        acc += std::norm(cascade(h_b, theta, noise.delta, h_a));
      }
      cluster[d] = acc / static_cast<double>(inner);
    }
  });
  return summarize(cluster, normal_quantile_two_sided(mc.confidence), draws * inner);
}

}  // namespace risd2d
