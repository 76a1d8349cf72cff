#include "risd2d/rate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "risd2d/error.hpp"
#include "risd2d/impairments.hpp"

namespace risd2d {
namespace {

using std::numbers::pi;

void check_pair(const Geometry& geometry, std::size_t index) {
  if (index >= geometry.pairs.size()) {
    throw InvalidGeometry("pair index " + std::to_string(index) + " out of range (K = " +
                          std::to_string(geometry.pairs.size()) + ")");
  }
}

void check_chi(double chi) {
  if (!(chi >= 0.0 && chi <= 1.0)) {
    throw InvalidParameter("chi must lie in [0, 1]");
  }
}

// k / (k + 1), with the k = +inf limit.
double los_fraction(double rician) {
  return std::isinf(rician) ? 1.0 : rician / (rician + 1.0);
}

RateReport make_report(std::vector<double> per_pair, RateVariant variant) {
  RateReport report;
  report.variant = variant;
  for (double r : per_pair) report.sum += r;
  report.per_pair = std::move(per_pair);
  return report;
}

double log2_1p(double sinr) { return std::log1p(sinr) / std::numbers::ln2; }

}  // namespace

std::string_view to_string(RateVariant variant) noexcept {
  switch (variant) {
    case RateVariant::general: return "general";
    case RateVariant::no_ris_hwi: return "N-RIS-HWIs";
    case RateVariant::no_transceiver_hwi: return "N-T-HWIs";
    case RateVariant::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

CascadeSlope cascade_slope(const Geometry& geometry, std::size_t rx, std::size_t tx) {
  check_pair(geometry, rx);
  check_pair(geometry, tx);
  const auto& b = geometry.pairs[rx];
  const auto& a = geometry.pairs[tx];
  return {std::sin(b.departure_azimuth) * std::sin(b.departure_elevation) +
              std::sin(a.arrival_azimuth) * std::sin(a.arrival_elevation),
          std::cos(b.departure_elevation) + std::cos(a.arrival_elevation)};
}

double t_geom(std::size_t rx, std::size_t tx, std::size_t n, std::size_t m,
              const Geometry& geometry) {
  const std::size_t side = geometry.side();
  if (n >= geometry.elements || m >= geometry.elements) {
    throw InvalidGeometry("element index out of range");
  }
  const auto slope = cascade_slope(geometry, rx, tx);
  const auto cn = element_coord(side, n);
  const auto cm = element_coord(side, m);
  const double dx = static_cast<double>(cn.x) - static_cast<double>(cm.x);
  const double dy = static_cast<double>(cn.y) - static_cast<double>(cm.y);
  return dx * slope.p + dy * slope.q;
}

double gamma_tilde(std::span<const double> theta, double chi, std::size_t rx, std::size_t tx,
                   const Geometry& geometry) {
  check_chi(chi);
  if (theta.size() != geometry.elements) {
    throw DimensionMismatch("phase vector length does not match the element count");
  }
  const std::size_t side = geometry.side();
  const auto slope = cascade_slope(geometry, rx, tx);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t ell = 0; ell < theta.size(); ++ell) {
    const auto c = element_coord(side, ell);
    const double phase = theta[ell] + pi * (static_cast<double>(c.x) * slope.p +
                                            static_cast<double>(c.y) * slope.q);
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double chi2 = chi * chi;
  const auto L = static_cast<double>(theta.size());
  return (1.0 - chi2) * L + chi2 * (re * re + im * im);
}

double gamma_tilde_pairwise(std::span<const double> theta, double chi, std::size_t rx,
                            std::size_t tx, const Geometry& geometry) {
  check_chi(chi);
  if (theta.size() != geometry.elements) {
    throw DimensionMismatch("phase vector length does not match the element count");
  }
  double acc = 0.0;
  for (std::size_t n = 1; n < theta.size(); ++n) {
    for (std::size_t m = 0; m < n; ++m) {
      acc += std::cos(theta[n] - theta[m] + pi * t_geom(rx, tx, n, m, geometry));
    }
  }
  return static_cast<double>(theta.size()) + 2.0 * chi * chi * acc;
}

double cascaded_second_moment(std::span<const double> theta, double chi, std::size_t rx,
                              std::size_t tx, const SystemConfig& config) {
  const double coherence = gamma_tilde(theta, chi, rx, tx, config.geometry);
  const double wb = los_fraction(config.links[rx].rician_b);
  const double wa = los_fraction(config.links[tx].rician_a);
  const auto L = static_cast<double>(config.elements());
  // (beta eps G + L (beta + eps) + L) / ((beta + 1)(eps + 1)) rewritten in
  // LoS fractions so that infinite factors need no special case.
  return wb * wa * coherence + L * (wb * (1.0 - wa) + wa * (1.0 - wb)) +
         L * (1.0 - wb) * (1.0 - wa);
}

std::vector<std::vector<double>> cascaded_moments(std::span<const double> theta, double chi,
                                                  const SystemConfig& config) {
  const std::size_t pairs = config.pairs();
  std::vector<std::vector<double>> m(pairs, std::vector<double>(pairs));
  for (std::size_t i = 0; i < pairs; ++i) {
    for (std::size_t h = 0; h < pairs; ++h) {
      m[i][h] = cascaded_second_moment(theta, chi, i, h, config);
    }
  }
  return m;
}

std::vector<double> closed_form_rates(const SystemConfig& config, std::span<const double> theta,
                                      double chi, double kappa_t, double kappa_r) {
  const std::size_t pairs = config.pairs();
  const auto moments = cascaded_moments(theta, chi, config);
  const double scale = (1.0 + kappa_r) * (1.0 + kappa_t);
  std::vector<double> rates(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    const double alpha_b = config.links[i].alpha_b;
    double total = 0.0;
    for (std::size_t j = 0; j < pairs; ++j) {
      total += config.power[j] * alpha_b * config.links[j].alpha_a * moments[i][j];
    }
    const double desired = config.power[i] * alpha_b * config.links[i].alpha_a * moments[i][i];
    const double denominator = scale * total - desired + config.noise_variance[i];
    if (!(denominator > 0.0)) {
      throw NumericalDomain("non-positive SINR denominator for pair " + std::to_string(i));
    }
    rates[i] = log2_1p(desired / denominator);
  }
  return rates;
}

RateReport rate_general(const SystemConfig& config, const PhaseConfig& phases) {
  validate_phases(phases, config.elements());
  const double chi = phase_noise_chi(config.impairments.phase_concentration);
  return make_report(closed_form_rates(config, phases.theta, chi, config.impairments.kappa_t,
                                       config.impairments.kappa_r),
                     RateVariant::general);
}

RateReport rate_no_ris_hwi(const SystemConfig& config, const PhaseConfig& phases) {
  validate_phases(phases, config.elements());
  return make_report(closed_form_rates(config, phases.theta, 1.0, config.impairments.kappa_t,
                                       config.impairments.kappa_r),
                     RateVariant::no_ris_hwi);
}

RateReport rate_no_transceiver_hwi(const SystemConfig& config, const PhaseConfig& phases) {
  validate_phases(phases, config.elements());
  const double chi = phase_noise_chi(config.impairments.phase_concentration);
  const auto moments = cascaded_moments(phases.theta, chi, config);
  const std::size_t pairs = config.pairs();
  std::vector<double> rates(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    const double alpha_b = config.links[i].alpha_b;
    double interference = 0.0;
    for (std::size_t j = 0; j < pairs; ++j) {
      if (j == i) continue;
      interference += config.power[j] * alpha_b * config.links[j].alpha_a * moments[i][j];
    }
    const double desired = config.power[i] * alpha_b * config.links[i].alpha_a * moments[i][i];
    rates[i] = log2_1p(desired / (interference + config.noise_variance[i]));
  }
  return make_report(std::move(rates), RateVariant::no_transceiver_hwi);
}

PhaseConfig optimal_single_pair_phases(std::size_t pair, const Geometry& geometry) {
  const std::size_t side = geometry.side();
  const auto slope = cascade_slope(geometry, pair, pair);
  PhaseConfig out{std::vector<double>(geometry.elements), PhaseDomain::continuous()};
  for (std::size_t ell = 0; ell < geometry.elements; ++ell) {
    const auto c = element_coord(side, ell);
    out.theta[ell] = wrap_phase(
        -pi * (static_cast<double>(c.x) * slope.p + static_cast<double>(c.y) * slope.q));
  }
  return out;
}

double asymptotic_rate(AsymptoticCase which, PowerScaling scaling,
                       const AsymptoticParams& params) {
  if (!(params.eu > 0.0) || !(params.noise_variance > 0.0) || !(params.alpha_a > 0.0) ||
      !(params.alpha_b > 0.0)) {
    throw InvalidParameter("asymptotic_rate needs positive power, gains, and noise");
  }
  if (!(params.rician_a >= 0.0) || !(params.rician_b >= 0.0)) {
    throw InvalidParameter("Rician factors must be >= 0");
  }
  check_chi(params.chi);
  const double los = los_fraction(params.rician_a) * los_fraction(params.rician_b);
  const double gain = params.eu * params.alpha_a * params.alpha_b * los;
  switch (which) {
    case AsymptoticCase::no_ris_hwi: {
      if (!(params.kappa_t >= 0.0 && params.kappa_t < 1.0) ||
          !(params.kappa_r >= 0.0 && params.kappa_r < 1.0)) {
        throw InvalidParameter("impairment coefficients must lie in [0, 1)");
      }
      const double distortion =
          params.kappa_t * params.kappa_r + params.kappa_t + params.kappa_r;
      if (scaling == PowerScaling::inverse_square) {
        return log2_1p(gain / (distortion * gain + params.noise_variance));
      }
      if (distortion == 0.0) return std::numeric_limits<double>::infinity();
      return log2_1p(1.0 / distortion);
    }
    case AsymptoticCase::no_transceiver_hwi:
      if (scaling != PowerScaling::inverse_square) {
        throw InvalidParameter(
            "ideal-transceiver limit is only defined for power scaled as Eu/L^2");
      }
      return log2_1p(params.chi * params.chi * gain / params.noise_variance);
  }
  throw InvalidParameter("unknown asymptotic case");
}

}  // namespace risd2d
