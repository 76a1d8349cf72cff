#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace risd2d {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Element spacing over wavelength. Half-wavelength spacing is assumed
/// throughout, which turns the steering exponent into j*pi*(...).
inline constexpr double kSpacingRatio = 0.5;

/// Angles (radians, in [0, 2*pi)) describing one device pair as seen from
/// the RIS. Arrival angles belong to the transmitter-to-RIS link, departure
/// angles to the RIS-to-receiver link.
struct PairAngles {
  double arrival_azimuth = 0.0;
  double arrival_elevation = 0.0;
  double departure_azimuth = 0.0;
  double departure_elevation = 0.0;
};

/// Grid coordinates of one element on the square UPA.
struct ElementCoord {
  std::size_t x = 0;
  std::size_t y = 0;
};

bool is_perfect_square(std::size_t n) noexcept;

/// Side length of an L-element square array. Throws InvalidGeometry when L
/// is zero or not a perfect square.
std::size_t array_side(std::size_t elements);

/// (x, y) of the element stored at 0-based index `ell`:
/// x = floor(ell / sqrt(L)), y = ell mod sqrt(L). This is the one index map
/// used by the steering vectors and the coherence sums alike.
inline ElementCoord element_coord(std::size_t side, std::size_t ell) noexcept {
  return {ell / side, ell % side};
}

/// RIS layout plus the per-pair angles.
struct Geometry {
  std::size_t elements = 1;
  std::vector<PairAngles> pairs;

  std::size_t side() const { return array_side(elements); }
};

/// Throws InvalidGeometry on a non-square element count or an angle outside
/// [0, 2*pi).
void validate_geometry(const Geometry& geometry);

/// LoS response of the square UPA:
/// a_l = exp(j*2*pi*(d/lambda)*(x_l*sin(az)*sin(el) + y_l*cos(el))).
CVector steering_vector(std::size_t elements, double azimuth, double elevation);

/// How random_pair_angles fills the four angles of a pair.
enum class AngleModel {
  /// One uniform draw per side; azimuth and elevation of a side are equal.
  tied,
  /// All four angles drawn independently.
  independent,
};

/// Draws every angle uniform on [0, 2*pi) from `seed`. Default angle source
/// for presets; not tied to any measured deployment.
std::vector<PairAngles> random_pair_angles(std::size_t pairs, std::uint64_t seed,
                                           AngleModel model = AngleModel::tied);

/// Large-scale fading from distance: alpha = C0 * (d / 1 m)^(-exponent), with
/// C0 given in dB.
double path_loss_gain(double distance_m, double reference_db = -30.0,
                      double exponent = 2.2);

inline double db_to_linear(double db) noexcept {
  return std::pow(10.0, db / 10.0);
}

}  // namespace risd2d
