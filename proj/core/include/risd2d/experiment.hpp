#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "risd2d/config.hpp"
#include "risd2d/montecarlo.hpp"
#include "risd2d/optimize.hpp"

namespace risd2d {

/// Parameter varied along one experiment.
enum class SweepAxis { snr_db, rician_db, bits, elements, impairment, concentration };

/// Curve produced per axis point.
enum class Method {
  closed_general,   // general closed form at GA phases optimized for it
  closed_nris,      // ideal-RIS closed form at its own GA phases
  closed_nthwi,     // ideal-transceiver closed form at its own GA phases
  mc,               // Monte-Carlo rate at the closed_general design
  ga_cps,           // GA over continuous phases, objective rate
  ga_dps,           // GA over the B-bit grid, objective rate
  exhaustive,       // full grid enumeration, objective rate
  random,           // objective rate averaged over random phase draws
  analytic_single,  // single-pair optimum for pair 0, grid-projected under DPS
};

std::string_view to_string(SweepAxis axis) noexcept;
std::string_view to_string(Method method) noexcept;
SweepAxis parse_axis(std::string_view name);
Method parse_method(std::string_view name);

struct ExperimentSpec {
  std::string name;
  SystemConfig scenario;
  Objective objective = Objective::general;
  SweepAxis axis = SweepAxis::snr_db;
  std::vector<double> values;
  std::vector<Method> methods;
  McParams mc;
  GaParams ga;
  std::size_t random_draws = 100;
  std::uint64_t exhaustive_budget = kDefaultExhaustiveBudget;
  std::uint64_t seed = 1;
  std::string output;
};

/// Parses and checks a scenario document (JSON). dB fields are converted to
/// linear here. Throws ConfigError with the dotted path of the first
/// violation.
SystemConfig validate_config(std::string_view text);

/// Canonical scenario document: every pair listed explicitly in linear
/// units. validate_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const SystemConfig& config);

/// Parses and checks a full experiment document (scenario + sweep).
ExperimentSpec parse_experiment(std::string_view text);

std::string serialize_experiment(const ExperimentSpec& spec);

/// The scenario at one axis value. SNR sets p_i (noise variance stays as
/// configured); rician sets both sides of every pair; impairment sets
/// kappa_t = kappa_r.
SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value);

struct ResultRow {
  SweepAxis axis = SweepAxis::snr_db;
  double axis_value = 0.0;
  Method method = Method::closed_general;
  std::optional<std::size_t> pair;  // nullopt = sum row
  std::optional<double> rate;       // nullopt when skipped
  std::optional<double> ci_half_width;
  double wall_ms = 0.0;
  std::string note;
};

/// Runs every (axis value, method) combination. Axis points may run on
/// `threads` workers; rows are ordered by axis index, then method order,
/// then pair index with the sum row last. GA and Monte-Carlo streams depend
/// only on spec.seed, so every axis point sees the same random numbers.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, unsigned threads = 1);

struct CsvOptions {
  bool timing = true;  // false writes empty wall_ms cells
  std::string comment; // written as a leading "# ..." line when non-empty
};

/// Columns: axis_name,axis_value,method,pair_index,rate_bps_hz,ci_half_width,wall_ms,note
void write_csv(std::ostream& out, std::span<const ResultRow> rows, const CsvOptions& options = {});

struct Preset {
  std::string_view name;
  std::string_view text;
};

const std::vector<Preset>& builtin_presets();

/// nullptr when no preset has that name.
const Preset* find_preset(std::string_view name);

}  // namespace risd2d
