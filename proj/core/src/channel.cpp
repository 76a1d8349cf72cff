#include "risd2d/channel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "risd2d/error.hpp"
#include "risd2d/impairments.hpp"

namespace risd2d {

bool is_perfect_square(std::size_t n) noexcept {
  auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return root * root == n;
}

std::size_t array_side(std::size_t elements) {
  if (elements == 0 || !is_perfect_square(elements)) {
    throw InvalidGeometry("element count " + std::to_string(elements) +
                          " is not a positive perfect square");
  }
  return static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(elements))));
}

void validate_geometry(const Geometry& geometry) {
  array_side(geometry.elements);
  auto check = [](double angle, std::size_t pair, const char* what) {
    if (!(angle >= 0.0 && angle < kTwoPi)) {
      throw InvalidGeometry("pair " + std::to_string(pair) + " " + what + " = " +
                            std::to_string(angle) + " is outside [0, 2pi)");
    }
  };
  for (std::size_t i = 0; i < geometry.pairs.size(); ++i) {
    const auto& a = geometry.pairs[i];
    check(a.arrival_azimuth, i, "arrival azimuth");
    check(a.arrival_elevation, i, "arrival elevation");
    check(a.departure_azimuth, i, "departure azimuth");
    check(a.departure_elevation, i, "departure elevation");
  }
}

CVector steering_vector(std::size_t elements, double azimuth, double elevation) {
  const std::size_t side = array_side(elements);
  const double kx = std::sin(azimuth) * std::sin(elevation);
  const double ky = std::cos(elevation);
  const double scale = kTwoPi * kSpacingRatio;
  CVector out(elements);
  for (std::size_t ell = 0; ell < elements; ++ell) {
    const auto [x, y] = element_coord(side, ell);
    const double phase = scale * (static_cast<double>(x) * kx + static_cast<double>(y) * ky);
    out[ell] = std::polar(1.0, phase);
  }
  return out;
}

std::vector<PairAngles> random_pair_angles(std::size_t pairs, std::uint64_t seed,
                                           AngleModel model) {
  Rng rng(seed);
  std::vector<PairAngles> out(pairs);
  for (auto& a : out) {
    a.arrival_azimuth = kTwoPi * uniform01(rng);
    a.arrival_elevation =
        model == AngleModel::tied ? a.arrival_azimuth : kTwoPi * uniform01(rng);
    a.departure_azimuth = kTwoPi * uniform01(rng);
    a.departure_elevation =
        model == AngleModel::tied ? a.departure_azimuth : kTwoPi * uniform01(rng);
  }
  return out;
}

double path_loss_gain(double distance_m, double reference_db, double exponent) {
  if (!(distance_m > 0.0)) {
    throw InvalidParameter("distance must be positive");
  }
  return db_to_linear(reference_db) * std::pow(distance_m, -exponent);
}

CVector sample_rician(std::span<const Complex> los, double rician_factor, Rng& rng) {
  if (!(rician_factor >= 0.0)) {
    throw InvalidParameter("Rician factor must be >= 0, got " + std::to_string(rician_factor));
  }
  CVector out(los.begin(), los.end());
  if (std::isinf(rician_factor)) {
    return out;
  }
  const double los_weight = std::sqrt(rician_factor / (rician_factor + 1.0));
  const double nlos_weight = std::sqrt(1.0 / (rician_factor + 1.0));
  for (auto& h : out) {
    h = los_weight * h + nlos_weight * sample_complex_gaussian(1.0, rng);
  }
  return out;
}

LosResponses los_responses(const Geometry& geometry) {
  LosResponses los;
  los.a.reserve(geometry.pairs.size());
  los.b.reserve(geometry.pairs.size());
  for (const auto& angles : geometry.pairs) {
    los.a.push_back(
        steering_vector(geometry.elements, angles.arrival_azimuth, angles.arrival_elevation));
    los.b.push_back(steering_vector(geometry.elements, angles.departure_azimuth,
                                    angles.departure_elevation));
  }
  return los;
}

ChannelSet build_channels(const SystemConfig& config, Rng& rng) {
  return build_channels(config, los_responses(config.geometry), rng);
}

ChannelSet build_channels(const SystemConfig& config, const LosResponses& los, Rng& rng) {
  const std::size_t pairs = config.pairs();
  if (los.a.size() != pairs || los.b.size() != pairs) {
    throw DimensionMismatch("LoS responses do not match the pair count");
  }
  ChannelSet set;
  set.g_a.reserve(pairs);
  set.g_b.reserve(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto& link = config.links[i];
    auto g_a = sample_rician(los.a[i], link.rician_a, rng);
    auto g_b = sample_rician(los.b[i], link.rician_b, rng);
    const double amp_a = std::sqrt(link.alpha_a);
    const double amp_b = std::sqrt(link.alpha_b);
    for (auto& v : g_a) v *= amp_a;
    for (auto& v : g_b) v *= amp_b;
    set.g_a.push_back(std::move(g_a));
    set.g_b.push_back(std::move(g_b));
  }
  return set;
}

}  // namespace risd2d
