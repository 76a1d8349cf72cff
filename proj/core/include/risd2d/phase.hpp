#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "risd2d/rng.hpp"

namespace risd2d {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Continuous phase shifts (CPS) or B-bit discrete phase shifts (DPS).
struct PhaseDomain {
  enum class Kind { continuous, discrete };

  Kind kind = Kind::continuous;
  unsigned bits = 0;  // only meaningful when discrete

  static PhaseDomain continuous() { return {}; }
  static PhaseDomain discrete(unsigned bits) { return {Kind::discrete, bits}; }

  bool is_discrete() const noexcept { return kind == Kind::discrete; }
  /// 2^B for DPS. Throws InvalidParameter for CPS.
  std::size_t levels() const;
  std::string to_string() const;

  friend bool operator==(const PhaseDomain&, const PhaseDomain&) = default;
};

/// RIS phase shifts, stored wrapped to [0, 2*pi).
struct PhaseConfig {
  std::vector<double> theta;
  PhaseDomain domain;

  std::size_t size() const noexcept { return theta.size(); }
};

/// Wraps an angle to [0, 2*pi).
double wrap_phase(double angle) noexcept;

/// Wraps an angle to [-pi, pi).
double wrap_signed(double angle) noexcept;

/// Phase of DPS level k: 2*pi*k / 2^B.
double grid_phase(std::size_t level, unsigned bits);

/// Index of the grid level closest to `angle` on the circle.
std::size_t nearest_level(double angle, unsigned bits);

/// True when `angle` equals a grid phase to within 1e-12.
bool on_grid(double angle, unsigned bits) noexcept;

/// Builds a CPS configuration, wrapping every entry.
PhaseConfig continuous_phases(std::span<const double> theta);

/// Rounds every phase to the nearest point of the 2^B grid.
PhaseConfig quantize(std::span<const double> theta, unsigned bits);

/// Throws InvalidParameter when a DPS configuration holds off-grid entries
/// or when the length differs from `elements`.
void validate_phases(const PhaseConfig& phases, std::size_t elements);

/// Uniform on [0, 2*pi) for CPS, uniform over the grid for DPS.
PhaseConfig random_phases(std::size_t elements, const PhaseDomain& domain, Rng& rng);

}  // namespace risd2d
