#include "risd2d/impairments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "risd2d/error.hpp"
#include "risd2d/phase.hpp"

namespace risd2d {
namespace {

// Below this the power series is used directly; above it the large-argument
// expansion is accurate to well under 1e-15.
constexpr double kSeriesLimit = 50.0;

void check_order(int order) {
  if (order != 0 && order != 1) {
    throw InvalidParameter("bessel_i supports orders 0 and 1, got " + std::to_string(order));
  }
}

void check_argument(double x) {
  if (!(x >= 0.0)) {
    throw InvalidParameter("bessel_i argument must be >= 0");
  }
}

// sum_k (x/2)^(2k+p) / (k! (k+p)!). All terms are positive, so the sum is
// accurate to a few ulps.
double bessel_series(int order, double x) {
  const double half = 0.5 * x;
  const double q = half * half;
  double term = order == 0 ? 1.0 : half;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// exp(-x) I_p(x) ~ (2 pi x)^(-1/2) sum_k (-1)^k a_k(p) / x^k.
double bessel_asymptotic_scaled(int order, double x) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_i(int order, double x) {
  check_order(order);
  check_argument(x);
  if (x <= kSeriesLimit) return bessel_series(order, x);
  return std::exp(x) * bessel_asymptotic_scaled(order, x);
}

double bessel_i_scaled(int order, double x) {
  check_order(order);
  check_argument(x);
  if (std::isinf(x)) return 0.0;
  if (x <= kSeriesLimit) return std::exp(-x) * bessel_series(order, x);
  return bessel_asymptotic_scaled(order, x);
}

double phase_noise_chi(double concentration) {
  if (!(concentration >= 0.0)) {
    throw InvalidParameter("phase-noise concentration must be >= 0");
  }
  if (std::isinf(concentration)) return 1.0;
  if (concentration == 0.0) return 0.0;
  return bessel_i_scaled(1, concentration) / bessel_i_scaled(0, concentration);
}

double sample_von_mises(double concentration, Rng& rng) {
  if (!(concentration >= 0.0)) {
    throw InvalidParameter("phase-noise concentration must be >= 0");
  }
  if (std::isinf(concentration)) return 0.0;
  if (concentration == 0.0) {
    return kTwoPi * uniform01(rng) - std::numbers::pi;
  }
  // Best & Fisher (1979) wrapped-Cauchy envelope, in the cancellation-free
  // parameterization r = s + sqrt(1 + s^2), s = 1 / (2 kappa).
  const double s = 0.5 / concentration;
  const double r = s + std::sqrt(1.0 + s * s);
  double z = 0.0;
  for (;;) {
    z = std::cos(std::numbers::pi * uniform01(rng));
    const double d = z / (r + z);
    const double u = uniform01(rng);
    if (u < 1.0 - d * d || u <= (1.0 - d) * std::exp(d)) break;
  }
  const double inv_r = 1.0 / r;
  const double f = std::clamp((inv_r + z) / (1.0 + inv_r * z), -1.0, 1.0);
  const double angle = uniform01(rng) < 0.5 ? std::acos(f) : -std::acos(f);
  return wrap_signed(angle);
}

PhaseNoiseRealization sample_phase_noise(std::size_t elements, double concentration,
                                         Rng& rng) {
  PhaseNoiseRealization out{std::vector<double>(elements)};
  for (auto& d : out.delta) d = sample_von_mises(concentration, rng);
  return out;
}

double tx_distortion_variance(double kappa_t) {
  if (!(kappa_t >= 0.0 && kappa_t < 1.0)) {
    throw InvalidParameter("kappa_t must lie in [0, 1)");
  }
  return kappa_t;
}

double rx_distortion_variance(double kappa_r, double signal_power) {
  if (!(kappa_r >= 0.0 && kappa_r < 1.0)) {
    throw InvalidParameter("kappa_r must lie in [0, 1)");
  }
  if (!(signal_power >= 0.0)) {
    throw InvalidParameter("signal power must be >= 0");
  }
  return kappa_r * signal_power;
}

Complex sample_complex_gaussian(double variance, Rng& rng) {
  const double scale = std::sqrt(0.5 * variance);
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return {scale * re, scale * im};
}

}  // namespace risd2d
