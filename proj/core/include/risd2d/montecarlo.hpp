#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "risd2d/channel.hpp"
#include "risd2d/config.hpp"
#include "risd2d/impairments.hpp"
#include "risd2d/phase.hpp"
#include "risd2d/rate.hpp"

namespace risd2d {

/// How the transmitter-distortion interference enters the simulated SINR.
enum class TxDistortionMode {
  /// |g_bi^T Theta Phi G_a sqrt(Lambda) eta_t|^2 with eta_t drawn per sample.
  sampled,
  /// Its conditional mean kappa_t sum_j p_j |g_bi^T Theta Phi g_aj|^2.
  expected,
};

struct McParams {
  std::size_t channel_draws = 10000;
  std::size_t noise_draws_per_channel = 1;
  std::uint64_t seed = 1;
  double confidence = 0.95;
  TxDistortionMode tx_mode = TxDistortionMode::sampled;
  /// Worker threads; results do not depend on this value.
  unsigned threads = 1;
};

void validate(const McParams& mc);

struct McEstimate {
  double mean = 0.0;
  double half_width = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Two-sided normal quantile for the given confidence level, e.g. 1.95996
/// for 0.95.
double normal_quantile_two_sided(double confidence);

/// Cascaded coefficient g_bi^T Theta Phi g_aj.
Complex cascade(std::span<const Complex> g_b, std::span<const double> theta,
                std::span<const double> phase_noise, std::span<const Complex> g_a);

/// Instantaneous SINR of pair i given channels and phase noise. The
/// receiver distortion is kappa_r (1 + kappa_t) sum_j p_j |c_ij|^2. The
/// transmitter distortion uses `tx_distortion` (one eta_t per transmitter)
/// when given, and kappa_t sum_j p_j |c_ij|^2 otherwise.
double instantaneous_sinr(const ChannelSet& channels, std::span<const double> theta,
                          const PhaseNoiseRealization& noise, const SystemConfig& config,
                          std::size_t pair,
                          std::optional<std::span<const Complex>> tx_distortion = std::nullopt);

struct McRateResult {
  RateReport report;
  std::vector<McEstimate> per_pair;
  McEstimate sum;
};

/// E{log2(1 + gamma_i)} over channel, phase-noise, and (in sampled mode)
/// transmitter-distortion draws. Sample s uses the substream
/// derive_seed(mc.seed, s), so the output is bit-identical for any thread
/// count.
McRateResult ergodic_rate_mc(const SystemConfig& config, const PhaseConfig& phases,
                             const McParams& mc);

/// Monte-Carlo estimate of E{|h_bi^T Theta Phi h_ah|^2} (unit path gains).
McEstimate moment_oracle(const SystemConfig& config, std::span<const double> theta,
                         std::size_t rx, std::size_t tx, const McParams& mc);

}  // namespace risd2d
