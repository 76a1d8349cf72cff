#pragma once

#include <cstddef>
#include <vector>

#include "risd2d/geometry.hpp"
#include "risd2d/rng.hpp"

namespace risd2d {

/// Transceiver distortion coefficients and RIS phase-noise concentration.
struct ImpairmentParams {
  double kappa_t = 0.0;           // transmitter, [0, 1)
  double kappa_r = 0.0;           // receiver, [0, 1)
  double phase_concentration = 0.0;  // Von Mises kappa, >= 0; +inf means no phase noise
};

/// Per-element phase errors of one RIS realization, each in [-pi, pi).
struct PhaseNoiseRealization {
  std::vector<double> delta;
};

/// Modified Bessel function of the first kind, order 0 or 1.
/// Overflows to +inf for x beyond roughly 713.
double bessel_i(int order, double x);

/// exp(-x) * I_order(x); finite for every x >= 0.
double bessel_i_scaled(int order, double x);

/// chi = I1(kappa) / I0(kappa), the first circular moment E{cos dtheta}.
/// Returns 1 for kappa = +inf.
double phase_noise_chi(double concentration);

/// One Von Mises(0, kappa) draw wrapped to [-pi, pi). kappa = 0 degenerates
/// to the uniform distribution and +inf to a point mass at 0.
double sample_von_mises(double concentration, Rng& rng);

PhaseNoiseRealization sample_phase_noise(std::size_t elements, double concentration,
                                         Rng& rng);

inline PhaseNoiseRealization no_phase_noise(std::size_t elements) {
  return {std::vector<double>(elements, 0.0)};
}

/// Variance of the transmitter distortion for unit-power data symbols.
double tx_distortion_variance(double kappa_t);

/// Receiver distortion variance kappa_r * signal_power.
double rx_distortion_variance(double kappa_r, double signal_power);

/// Circularly-symmetric complex Gaussian with the given variance.
Complex sample_complex_gaussian(double variance, Rng& rng);

}  // namespace risd2d
