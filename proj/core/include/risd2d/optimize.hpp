#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "risd2d/config.hpp"
#include "risd2d/phase.hpp"
#include "risd2d/rate.hpp"

namespace risd2d {

/// Closed-form expression maximized by the optimizers.
enum class Objective { general, no_ris_hwi, no_transceiver_hwi };

std::string_view to_string(Objective objective) noexcept;

/// Closed-form sum rate of `theta` under `objective`.
double sum_rate(const SystemConfig& config, std::span<const double> theta,
                Objective objective);

RateReport evaluate(const SystemConfig& config, const PhaseConfig& phases,
                    Objective objective);

struct GaParams {
  std::size_t population = 50;   // N_t
  std::size_t generations = 100;  // n
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;     // per gene
  std::size_t elite_count = 2;
  std::size_t tournament_size = 2;
  double cps_mutation_sigma = 0.39269908169872414;  // pi / 8
  std::uint64_t seed = 1;
};

void validate(const GaParams& ga);

struct OptResult {
  PhaseConfig best;
  double best_sum_rate = 0.0;
  /// Best fitness after initialization (entry 0) and after each generation.
  std::vector<double> trace;
  std::size_t evaluations = 0;
};

/// Observer called with every chromosome the GA evaluates. Test hook.
using EvaluationObserver = std::function<void(std::span<const double>)>;

/// Genetic search over phase vectors: tournament selection, uniform
/// crossover, wrapped-Gaussian (CPS) or grid re-draw (DPS) mutation, and
/// elitism. Uses population * (generations + 1) fitness evaluations.
OptResult ga_optimize(const SystemConfig& config, Objective objective,
                      const PhaseDomain& domain, const GaParams& ga,
                      const EvaluationObserver& observer = {});

inline constexpr std::uint64_t kDefaultExhaustiveBudget = std::uint64_t{1} << 24;

/// Enumerates all 2^(B L) grid configurations. Throws BudgetExceeded when
/// that count is larger than `budget`. Ties keep the first candidate in
/// enumeration order.
OptResult exhaustive_search(const SystemConfig& config, Objective objective, unsigned bits,
                            std::uint64_t budget = kDefaultExhaustiveBudget);

/// Number of candidates exhaustive_search would visit, saturating at
/// UINT64_MAX.
std::uint64_t exhaustive_candidates(std::size_t elements, unsigned bits) noexcept;

}  // namespace risd2d
