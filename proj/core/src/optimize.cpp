#include "risd2d/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "risd2d/error.hpp"
#include "risd2d/impairments.hpp"

namespace risd2d {
namespace {

struct Individual {
  std::vector<double> genes;
  double fitness = -std::numeric_limits<double>::infinity();
};

std::size_t tournament(const std::vector<Individual>& pop, std::size_t size, Rng& rng) {
  auto pick = [&] {
    return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(pop.size()));
  };
  std::size_t best = pick();
  for (std::size_t t = 1; t < size; ++t) {
    const std::size_t other = pick();
    if (pop[other].fitness > pop[best].fitness) best = other;
  }
  return best;
}

double random_gene(const PhaseDomain& domain, Rng& rng) {
  if (domain.is_discrete()) {
    const auto levels = domain.levels();
    return grid_phase(static_cast<std::size_t>(uniform01(rng) * static_cast<double>(levels)),
                      domain.bits);
  }
  return kTwoPi * uniform01(rng);
}

// Indices sorted by fitness, best first; ties keep the lower index.
std::vector<std::size_t> ranking(const std::vector<Individual>& pop) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pop[a].fitness > pop[b].fitness;
  });
  return order;
}

}  // namespace

std::string_view to_string(Objective objective) noexcept {
  switch (objective) {
    case Objective::general: return "general";
    case Objective::no_ris_hwi: return "N-RIS-HWIs";
    case Objective::no_transceiver_hwi: return "N-T-HWIs";
  }
  return "unknown";
}

double sum_rate(const SystemConfig& config, std::span<const double> theta, Objective objective) {
  const auto& imp = config.impairments;
  std::vector<double> rates;
  switch (objective) {
    case Objective::general:
      rates = closed_form_rates(config, theta, phase_noise_chi(imp.phase_concentration),
                                imp.kappa_t, imp.kappa_r);
      break;
    case Objective::no_ris_hwi:
      rates = closed_form_rates(config, theta, 1.0, imp.kappa_t, imp.kappa_r);
      break;
    case Objective::no_transceiver_hwi:
      rates = closed_form_rates(config, theta, phase_noise_chi(imp.phase_concentration), 0.0, 0.0);
      break;
  }
  return std::accumulate(rates.begin(), rates.end(), 0.0);
}

RateReport evaluate(const SystemConfig& config, const PhaseConfig& phases, Objective objective) {
  switch (objective) {
    case Objective::general: return rate_general(config, phases);
    case Objective::no_ris_hwi: return rate_no_ris_hwi(config, phases);
    case Objective::no_transceiver_hwi: return rate_no_transceiver_hwi(config, phases);
  }
  throw InvalidParameter("unknown objective");
}

void validate(const GaParams& ga) {
  if (ga.population < 2) throw InvalidParameter("GA population must be >= 2");
  if (ga.generations < 1) throw InvalidParameter("GA generation count must be >= 1");
  if (ga.elite_count >= ga.population) {
    throw InvalidParameter("GA elite count must be smaller than the population");
  }
  if (ga.tournament_size < 1) throw InvalidParameter("GA tournament size must be >= 1");
  if (!(ga.crossover_rate >= 0.0 && ga.crossover_rate <= 1.0)) {
    throw InvalidParameter("GA crossover rate must lie in [0, 1]");
  }
  if (!(ga.mutation_rate >= 0.0 && ga.mutation_rate <= 1.0)) {
    throw InvalidParameter("GA mutation rate must lie in [0, 1]");
  }
  if (!(ga.cps_mutation_sigma >= 0.0)) {
    throw InvalidParameter("GA mutation sigma must be >= 0");
  }
}

OptResult ga_optimize(const SystemConfig& config, Objective objective, const PhaseDomain& domain,
                      const GaParams& ga, const EvaluationObserver& observer) {
  validate(ga);
  validate(config);
  if (domain.is_discrete() && domain.bits == 0) {
    throw InvalidParameter("DPS bit width must be >= 1");
  }
  const std::size_t elements = config.elements();
  Rng rng(ga.seed);
  OptResult result;

  auto score = [&](Individual& ind) {
    if (observer) observer(ind.genes);
    ind.fitness = sum_rate(config, ind.genes, objective);
    ++result.evaluations;
  };

  std::vector<Individual> population(ga.population);
  for (auto& ind : population) {
    ind.genes = random_phases(elements, domain, rng).theta;
    score(ind);
  }
  auto best_of = [](const std::vector<Individual>& pop) {
    return std::max_element(pop.begin(), pop.end(), [](const auto& a, const auto& b) {
      return a.fitness < b.fitness;
    });
  };
  result.trace.push_back(best_of(population)->fitness);

  std::vector<Individual> offspring(ga.population);
  for (std::size_t gen = 0; gen < ga.generations; ++gen) {
    for (auto& child : offspring) {
      const auto& first = population[tournament(population, ga.tournament_size, rng)];
      child.genes = first.genes;
      if (uniform01(rng) < ga.crossover_rate) {
        const auto& second = population[tournament(population, ga.tournament_size, rng)];
        for (std::size_t g = 0; g < elements; ++g) {
          if (uniform01(rng) < 0.5) child.genes[g] = second.genes[g];
        }
      }
      for (auto& gene : child.genes) {
        if (uniform01(rng) >= ga.mutation_rate) continue;
        if (domain.is_discrete()) {
          gene = random_gene(domain, rng);
        } else {
          gene = wrap_phase(gene + ga.cps_mutation_sigma * standard_normal(rng));
        }
      }
      score(child);
    }
    // Elites of the parent generation replace the weakest offspring.
    const auto parent_rank = ranking(population);
    const auto child_rank = ranking(offspring);
    for (std::size_t e = 0; e < ga.elite_count; ++e) {
      offspring[child_rank[ga.population - 1 - e]] = population[parent_rank[e]];
    }
    population.swap(offspring);
    result.trace.push_back(best_of(population)->fitness);
  }

  const auto& best = *best_of(population);
  result.best = PhaseConfig{best.genes, domain};
  result.best_sum_rate = best.fitness;
  return result;
}

std::uint64_t exhaustive_candidates(std::size_t elements, unsigned bits) noexcept {
  const auto total_bits = static_cast<unsigned long long>(elements) * bits;
  if (total_bits >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << total_bits;
}

OptResult exhaustive_search(const SystemConfig& config, Objective objective, unsigned bits,
                            std::uint64_t budget) {
  validate(config);
  if (bits == 0) throw InvalidParameter("DPS bit width must be >= 1");
  const std::size_t elements = config.elements();
  const std::uint64_t candidates = exhaustive_candidates(elements, bits);
  if (candidates > budget) {
    throw BudgetExceeded("exhaustive search over L = " + std::to_string(elements) +
                         ", B = " + std::to_string(bits) + " needs 2^" +
                         std::to_string(elements * bits) + " candidates, budget is " +
                         std::to_string(budget));
  }
  const std::size_t levels = std::size_t{1} << bits;
  std::vector<double> table(levels);
  for (std::size_t k = 0; k < levels; ++k) table[k] = grid_phase(k, bits);

  std::vector<std::size_t> digits(elements, 0);
  std::vector<double> theta(elements, table[0]);
  OptResult result;
  result.best_sum_rate = -std::numeric_limits<double>::infinity();
  for (std::uint64_t c = 0; c < candidates; ++c) {
    const double value = sum_rate(config, theta, objective);
    ++result.evaluations;
    if (value > result.best_sum_rate) {
      result.best_sum_rate = value;
      result.best = PhaseConfig{theta, PhaseDomain::discrete(bits)};
    }
    // Mixed-radix increment, element 0 fastest.
    for (std::size_t g = 0; g < elements; ++g) {
      if (++digits[g] < levels) {
        theta[g] = table[digits[g]];
        break;
      }
      digits[g] = 0;
      theta[g] = table[0];
    }
  }
  result.trace.push_back(result.best_sum_rate);
  return result;
}

}  // namespace risd2d
