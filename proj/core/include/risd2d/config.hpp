#pragma once

#include <cstddef>
#include <vector>

#include "risd2d/geometry.hpp"
#include "risd2d/impairments.hpp"
#include "risd2d/phase.hpp"

namespace risd2d {

/// Per-pair link statistics, all linear.
struct PairLinkParams {
  double alpha_a = 1.0;   // large-scale gain, transmitter -> RIS
  double alpha_b = 1.0;   // large-scale gain, RIS -> receiver
  double rician_a = 0.0;  // Rician factor of the transmitter -> RIS link
  double rician_b = 0.0;  // Rician factor of the RIS -> receiver link
};

/// Complete scenario: K pairs sharing one L-element RIS. Every quantity here
/// is linear; dB conversion happens when a config file is read.
struct SystemConfig {
  Geometry geometry;
  std::vector<PairLinkParams> links;
  std::vector<double> power;           // p_i
  std::vector<double> noise_variance;  // sigma_i^2
  ImpairmentParams impairments;
  PhaseDomain domain;

  std::size_t pairs() const noexcept { return links.size(); }
  std::size_t elements() const noexcept { return geometry.elements; }
};

/// Checks every invariant of the scenario. Throws ConfigError naming the
/// offending field.
void validate(const SystemConfig& config);

/// K identical pairs with unit path gain, unit noise, and the given power,
/// Rician factors, and impairments. Angles come from random_pair_angles.
SystemConfig make_uniform_config(std::size_t pairs, std::size_t elements, double power,
                                 double rician, ImpairmentParams impairments,
                                 PhaseDomain domain, std::uint64_t angle_seed);

}  // namespace risd2d
