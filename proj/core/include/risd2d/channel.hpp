#pragma once

#include <span>
#include <vector>

#include "risd2d/config.hpp"
#include "risd2d/geometry.hpp"
#include "risd2d/rng.hpp"

namespace risd2d {

/// One realization of every transmitter->RIS (g_a) and RIS->receiver (g_b)
/// channel vector. g_a[i] and g_b[i] have length L.
struct ChannelSet {
  std::vector<CVector> g_a;
  std::vector<CVector> g_b;
};

/// sqrt(k/(k+1)) * los + sqrt(1/(k+1)) * w with w ~ CN(0, I).
/// A factor of +inf returns `los` unchanged.
CVector sample_rician(std::span<const Complex> los, double rician_factor, Rng& rng);

/// Deterministic LoS responses of every pair: a-side from the arrival
/// angles, b-side from the departure angles.
struct LosResponses {
  std::vector<CVector> a;
  std::vector<CVector> b;
};

LosResponses los_responses(const Geometry& geometry);

/// g_ai = sqrt(alpha_ai) h_ai, g_bi = sqrt(alpha_bi) h_bi with independent
/// NLoS draws per pair and per side. Draw order: for each pair i, the a-side
/// then the b-side.
ChannelSet build_channels(const SystemConfig& config, Rng& rng);

/// Same as above with precomputed LoS responses; used by inner Monte-Carlo
/// loops.
ChannelSet build_channels(const SystemConfig& config, const LosResponses& los, Rng& rng);

}  // namespace risd2d
