#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "risd2d/config.hpp"
#include "risd2d/phase.hpp"

namespace risd2d {

/// Which expression produced a rate.
enum class RateVariant { general, no_ris_hwi, no_transceiver_hwi, monte_carlo };

std::string_view to_string(RateVariant variant) noexcept;

struct RateReport {
  std::vector<double> per_pair;  // bits/s/Hz
  double sum = 0.0;
  RateVariant variant = RateVariant::general;
  /// Confidence half-widths, Monte-Carlo only. `sum_half_width` treats the
  /// per-pair estimates as computed from the same draws.
  std::optional<std::vector<double>> half_width;
  std::optional<double> sum_half_width;
};

/// Linear phase progression of the cascaded LoS path for receiver i and
/// transmitter h. The cascade g_bi^T Theta g_ah has LoS element phase
/// pi * (x_l * p + y_l * q).
struct CascadeSlope {
  double p = 0.0;
  double q = 0.0;
};

/// p = sin(az_b,i) sin(el_b,i) + sin(az_a,h) sin(el_a,h),
/// q = cos(el_b,i) + cos(el_a,h); b-side angles of receiver pair i, a-side
/// angles of transmitter pair h. Symmetric in the two sides when i == h.
CascadeSlope cascade_slope(const Geometry& geometry, std::size_t rx, std::size_t tx);

/// T^{n,m} = (x_n - x_m) p + (y_n - y_m) q for 0-based elements n, m.
double t_geom(std::size_t rx, std::size_t tx, std::size_t n, std::size_t m,
              const Geometry& geometry);

/// Expected squared coherent sum with phase noise:
/// L + 2 chi^2 sum_{m<n} cos(theta_n - theta_m + pi T^{n,m}).
/// Evaluated in O(L) as (1 - chi^2) L + chi^2 |sum_l exp(j(theta_l + pi t_l))|^2.
double gamma_tilde(std::span<const double> theta, double chi, std::size_t rx,
                   std::size_t tx, const Geometry& geometry);

/// The O(L^2) pairwise-cosine form of gamma_tilde. Reference path only.
double gamma_tilde_pairwise(std::span<const double> theta, double chi, std::size_t rx,
                            std::size_t tx, const Geometry& geometry);

/// E{|h_bi^T Theta Phi h_ah|^2} =
/// (beta_i eps_h G + L (beta_i + eps_h) + L) / ((beta_i + 1)(eps_h + 1)),
/// G = gamma_tilde(rx = i, tx = h). Infinite Rician factors take the limit.
double cascaded_second_moment(std::span<const double> theta, double chi, std::size_t rx,
                              std::size_t tx, const SystemConfig& config);

/// All K x K moments M[i][h] at once.
std::vector<std::vector<double>> cascaded_moments(std::span<const double> theta,
                                                  double chi, const SystemConfig& config);

/// Expectation-ratio rate with transceiver distortion and RIS phase noise.
RateReport rate_general(const SystemConfig& config, const PhaseConfig& phases);

/// rate_general with chi forced to 1 (ideal RIS).
RateReport rate_no_ris_hwi(const SystemConfig& config, const PhaseConfig& phases);

/// rate_general with kappa_t = kappa_r = 0 (ideal transceivers).
RateReport rate_no_transceiver_hwi(const SystemConfig& config, const PhaseConfig& phases);

/// Shared kernel: per-pair rates from a moment matrix, explicit chi and
/// transceiver coefficients. Used by the three variants and by the GA
/// fitness.
std::vector<double> closed_form_rates(const SystemConfig& config, std::span<const double> theta,
                                      double chi, double kappa_t, double kappa_r);

/// theta_l = -pi (x_l p_ii + y_l q_ii), wrapped to [0, 2*pi). Makes every
/// LoS term of pair i add coherently, so gamma(i, i) = L^2.
PhaseConfig optimal_single_pair_phases(std::size_t pair, const Geometry& geometry);

enum class AsymptoticCase { no_ris_hwi, no_transceiver_hwi };
enum class PowerScaling { inverse_square, inverse_linear };  // p = Eu/L^2, p = Eu/L

struct AsymptoticParams {
  double eu = 1.0;
  double alpha_a = 1.0;
  double alpha_b = 1.0;
  double rician_a = 0.0;
  double rician_b = 0.0;
  double noise_variance = 1.0;
  double kappa_t = 0.0;
  double kappa_r = 0.0;
  /// Phase-noise coefficient for the no_transceiver_hwi limit. The best
  /// reachable coherence under phase noise is chi^2 L^2 + (1 - chi^2) L, so
  /// the limit carries a chi^2 factor; chi = 1 is the phase-noise-free value.
  double chi = 1.0;
};

/// Large-L limit of the single-pair rate under optimal phases. The
/// (no_transceiver_hwi, inverse_linear) combination diverges and is
/// rejected with InvalidParameter.
double asymptotic_rate(AsymptoticCase which, PowerScaling scaling,
                       const AsymptoticParams& params);

}  // namespace risd2d
