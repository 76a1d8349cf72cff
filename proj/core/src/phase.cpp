#include "risd2d/phase.hpp"

#include <cmath>
#include <string>

#include "risd2d/error.hpp"

namespace risd2d {

std::size_t PhaseDomain::levels() const {
  if (!is_discrete()) {
    throw InvalidParameter("continuous phase domain has no grid");
  }
  return std::size_t{1} << bits;
}

std::string PhaseDomain::to_string() const {
  return is_discrete() ? "DPS(B=" + std::to_string(bits) + ")" : "CPS";
}

double wrap_phase(double angle) noexcept {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2*pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_signed(double angle) noexcept {
  double r = wrap_phase(angle + std::numbers::pi) - std::numbers::pi;
  if (r >= std::numbers::pi) r -= kTwoPi;
  return r;
}

double grid_phase(std::size_t level, unsigned bits) {
  const auto levels = std::size_t{1} << bits;
  return kTwoPi * static_cast<double>(level % levels) / static_cast<double>(levels);
}

std::size_t nearest_level(double angle, unsigned bits) {
  const auto levels = std::size_t{1} << bits;
  const double step = kTwoPi / static_cast<double>(levels);
  auto k = static_cast<std::size_t>(std::llround(wrap_phase(angle) / step));
  return k % levels;
}

bool on_grid(double angle, unsigned bits) noexcept {
  const double snapped = grid_phase(nearest_level(angle, bits), bits);
  return std::abs(wrap_signed(angle - snapped)) <= 1e-12;
}

PhaseConfig continuous_phases(std::span<const double> theta) {
  PhaseConfig out{std::vector<double>(theta.size()), PhaseDomain::continuous()};
  for (std::size_t i = 0; i < theta.size(); ++i) out.theta[i] = wrap_phase(theta[i]);
  return out;
}

PhaseConfig quantize(std::span<const double> theta, unsigned bits) {
  if (bits == 0) {
    throw InvalidParameter("DPS bit width must be >= 1");
  }
  PhaseConfig out{std::vector<double>(theta.size()), PhaseDomain::discrete(bits)};
  for (std::size_t i = 0; i < theta.size(); ++i) {
    out.theta[i] = grid_phase(nearest_level(theta[i], bits), bits);
  }
  return out;
}

void validate_phases(const PhaseConfig& phases, std::size_t elements) {
  if (phases.size() != elements) {
    throw DimensionMismatch("phase vector has " + std::to_string(phases.size()) +
                            " entries, expected " + std::to_string(elements));
  }
  for (double t : phases.theta) {
    if (!std::isfinite(t)) {
      throw InvalidParameter("phase shift is not finite");
    }
  }
  if (phases.domain.is_discrete()) {
    if (phases.domain.bits == 0) {
      throw InvalidParameter("DPS bit width must be >= 1");
    }
    for (double t : phases.theta) {
      if (!on_grid(t, phases.domain.bits)) {
        throw InvalidParameter("phase " + std::to_string(t) + " is off the " +
                               phases.domain.to_string() + " grid");
      }
    }
  }
}

PhaseConfig random_phases(std::size_t elements, const PhaseDomain& domain, Rng& rng) {
  PhaseConfig out{std::vector<double>(elements), domain};
  if (domain.is_discrete()) {
    const std::size_t levels = domain.levels();
    for (auto& t : out.theta) {
      auto k = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(levels));
      t = grid_phase(k, domain.bits);
    }
  } else {
    for (auto& t : out.theta) t = kTwoPi * uniform01(rng);
  }
  return out;
}

}  // namespace risd2d
