#include "risd2d/config.hpp"

#include <cmath>
#include <string>

#include "risd2d/error.hpp"

namespace risd2d {
namespace {

std::string indexed(const char* name, std::size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

void check_angle(double angle, const std::string& field) {
  if (!(angle >= 0.0 && angle < kTwoPi)) {
    throw ConfigError(field, "angle must lie in [0, 2pi)");
  }
}

void check_coefficient(double kappa, const char* field) {
  if (!(kappa >= 0.0 && kappa < 1.0)) {
    throw ConfigError(field, "impairment coefficient must lie in [0, 1)");
  }
}

}  // namespace

void validate(const SystemConfig& config) {
  const std::size_t pairs = config.pairs();
  if (pairs == 0) {
    throw ConfigError("pairs", "at least one device pair is required");
  }
  if (config.geometry.elements == 0 || !is_perfect_square(config.geometry.elements)) {
    throw ConfigError("elements", "element count must be a positive perfect square, got " +
                                      std::to_string(config.geometry.elements));
  }
  if (config.geometry.pairs.size() != pairs) {
    throw ConfigError("angles", "expected " + std::to_string(pairs) + " angle sets, got " +
                                    std::to_string(config.geometry.pairs.size()));
  }
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto& a = config.geometry.pairs[i];
    const auto base = indexed("angles", i);
    check_angle(a.arrival_azimuth, base + ".arrival_azimuth");
    check_angle(a.arrival_elevation, base + ".arrival_elevation");
    check_angle(a.departure_azimuth, base + ".departure_azimuth");
    check_angle(a.departure_elevation, base + ".departure_elevation");
  }
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto& link = config.links[i];
    const auto base = indexed("links", i);
    if (!(link.alpha_a > 0.0) || !std::isfinite(link.alpha_a)) {
      throw ConfigError(base + ".alpha_a", "large-scale gain must be positive and finite");
    }
    if (!(link.alpha_b > 0.0) || !std::isfinite(link.alpha_b)) {
      throw ConfigError(base + ".alpha_b", "large-scale gain must be positive and finite");
    }
    if (!(link.rician_a >= 0.0)) {
      throw ConfigError(base + ".rician_a", "Rician factor must be >= 0");
    }
    if (!(link.rician_b >= 0.0)) {
      throw ConfigError(base + ".rician_b", "Rician factor must be >= 0");
    }
  }
  if (config.power.size() != pairs) {
    throw ConfigError("power", "expected one transmit power per pair");
  }
  if (config.noise_variance.size() != pairs) {
    throw ConfigError("noise_variance", "expected one noise variance per pair");
  }
  for (std::size_t i = 0; i < pairs; ++i) {
    if (!(config.power[i] > 0.0) || !std::isfinite(config.power[i])) {
      throw ConfigError(indexed("power", i), "transmit power must be positive and finite");
    }
    if (!(config.noise_variance[i] > 0.0) || !std::isfinite(config.noise_variance[i])) {
      throw ConfigError(indexed("noise_variance", i),
                        "noise variance must be positive and finite");
    }
  }
  check_coefficient(config.impairments.kappa_t, "kappa_t");
  check_coefficient(config.impairments.kappa_r, "kappa_r");
  if (!(config.impairments.phase_concentration >= 0.0)) {
    throw ConfigError("phase_concentration", "Von Mises concentration must be >= 0");
  }
  if (config.domain.is_discrete() && (config.domain.bits < 1 || config.domain.bits > 16)) {
    throw ConfigError("phase_domain.bits", "bit width must lie in [1, 16]");
  }
}

SystemConfig make_uniform_config(std::size_t pairs, std::size_t elements, double power,
                                 double rician, ImpairmentParams impairments,
                                 PhaseDomain domain, std::uint64_t angle_seed) {
  SystemConfig config;
  config.geometry.elements = elements;
  config.geometry.pairs = random_pair_angles(pairs, angle_seed);
  config.links.assign(pairs, PairLinkParams{1.0, 1.0, rician, rician});
  config.power.assign(pairs, power);
  config.noise_variance.assign(pairs, 1.0);
  config.impairments = impairments;
  config.domain = domain;
  return config;
}

}  // namespace risd2d
