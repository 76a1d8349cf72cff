#include "risd2d/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include <json.hpp>

#include "parallel.hpp"
#include "risd2d/error.hpp"

namespace risd2d {
namespace {

using json = nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string at(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

void require_object(const json& node, const std::string& path) {
  if (!node.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const json& node, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : node.items()) {
    bool known = key == "notes";
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError(join(path, key), "unknown field");
  }
}

// Number, or the strings "inf" / "infinity".
double read_number(const json& node, const std::string& path) {
  if (node.is_number()) return node.get<double>();
  if (node.is_string()) {
    const auto s = node.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
  }
  throw ConfigError(path, "expected a number or \"inf\"");
}

std::uint64_t read_count(const json& node, const std::string& path) {
  if (!node.is_number_integer() || node.get<long long>() < 0) {
    throw ConfigError(path, "expected a non-negative integer");
  }
  return node.get<std::uint64_t>();
}

json write_number(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

// Scalar applies to every pair; array must hold one entry per pair.
std::vector<double> read_per_pair(const json& node, const std::string& path, std::size_t pairs) {
  if (node.is_array()) {
    if (node.size() != pairs) {
      throw ConfigError(path, "expected " + std::to_string(pairs) + " entries, got " +
                                  std::to_string(node.size()));
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(read_number(node[i], at(path, i)));
    return out;
  }
  return std::vector<double>(pairs, read_number(node, path));
}

double db_field(const json& node, const std::string& path) {
  const double db = read_number(node, path);
  return std::isinf(db) ? db : db_to_linear(db);
}

// Exactly one of `linear_key` / `db_key` may be present; returns nullopt if
// neither is.
std::optional<double> linear_or_db(const json& node, const std::string& path,
                                   const char* linear_key, const char* db_key) {
  const bool has_lin = node.contains(linear_key);
  const bool has_db = node.contains(db_key);
  if (has_lin && has_db) {
    throw ConfigError(join(path, db_key), std::string("conflicts with ") + linear_key);
  }
  if (has_lin) return read_number(node[linear_key], join(path, linear_key));
  if (has_db) return db_field(node[db_key], join(path, db_key));
  return std::nullopt;
}

PhaseDomain read_domain(const json& node, const std::string& path) {
  require_object(node, path);
  reject_unknown(node, path, {"type", "bits"});
  const auto type = node.value("type", std::string("continuous"));
  if (type == "continuous") {
    if (node.contains("bits")) throw ConfigError(join(path, "bits"), "CPS takes no bit width");
    return PhaseDomain::continuous();
  }
  if (type == "discrete") {
    if (!node.contains("bits")) throw ConfigError(join(path, "bits"), "DPS needs a bit width");
    const auto bits = read_count(node["bits"], join(path, "bits"));
    if (bits < 1 || bits > 16) throw ConfigError(join(path, "bits"), "bit width must lie in [1, 16]");
    return PhaseDomain::discrete(static_cast<unsigned>(bits));
  }
  throw ConfigError(join(path, "type"), "expected \"continuous\" or \"discrete\"");
}

json write_domain(const PhaseDomain& domain) {
  if (domain.is_discrete()) return {{"type", "discrete"}, {"bits", domain.bits}};
  return {{"type", "continuous"}};
}

SystemConfig read_scenario(const json& node, const std::string& path) {
  require_object(node, path);
  reject_unknown(node, path,
                 {"elements", "pairs", "power", "power_db", "snr_db", "noise_variance", "rician",
                  "rician_db", "kappa", "kappa_t", "kappa_r", "phase_concentration",
                  "phase_domain", "angles", "links", "path_loss"});

  SystemConfig config;
  if (!node.contains("elements")) throw ConfigError(join(path, "elements"), "required");
  config.geometry.elements = read_count(node["elements"], join(path, "elements"));
  if (config.geometry.elements == 0 || !is_perfect_square(config.geometry.elements)) {
    throw ConfigError(join(path, "elements"),
                      "element count must be a positive perfect square, got " +
                          std::to_string(config.geometry.elements));
  }

  std::size_t pairs = 0;
  if (node.contains("pairs")) {
    pairs = read_count(node["pairs"], join(path, "pairs"));
  } else if (node.contains("links") && node["links"].is_array()) {
    pairs = node["links"].size();
  } else if (node.contains("angles") && node["angles"].is_array()) {
    pairs = node["angles"].size();
  }
  if (pairs == 0) throw ConfigError(join(path, "pairs"), "at least one device pair is required");

  // Transmit power: SNR in dB is p_i itself (noise is normalized separately).
  const int power_keys = static_cast<int>(node.contains("power")) +
                         static_cast<int>(node.contains("power_db")) +
                         static_cast<int>(node.contains("snr_db"));
  if (power_keys > 1) throw ConfigError(join(path, "power"), "give only one of power, power_db, snr_db");
  if (node.contains("power")) {
    config.power = read_per_pair(node["power"], join(path, "power"), pairs);
  } else if (node.contains("power_db") || node.contains("snr_db")) {
    const char* key = node.contains("power_db") ? "power_db" : "snr_db";
    config.power = read_per_pair(node[key], join(path, key), pairs);
    for (auto& p : config.power) p = db_to_linear(p);
  } else {
    config.power.assign(pairs, 1.0);
  }
  config.noise_variance = node.contains("noise_variance")
                              ? read_per_pair(node["noise_variance"], join(path, "noise_variance"), pairs)
                              : std::vector<double>(pairs, 1.0);

  const double default_rician = linear_or_db(node, path, "rician", "rician_db").value_or(0.0);

  if (node.contains("kappa") && (node.contains("kappa_t") || node.contains("kappa_r"))) {
    throw ConfigError(join(path, "kappa"), "conflicts with kappa_t / kappa_r");
  }
  if (node.contains("kappa")) {
    const double k = read_number(node["kappa"], join(path, "kappa"));
    config.impairments.kappa_t = k;
    config.impairments.kappa_r = k;
  } else {
    if (node.contains("kappa_t")) config.impairments.kappa_t = read_number(node["kappa_t"], join(path, "kappa_t"));
    if (node.contains("kappa_r")) config.impairments.kappa_r = read_number(node["kappa_r"], join(path, "kappa_r"));
  }
  for (const char* key : {"kappa_t", "kappa_r"}) {
    const double k = std::string_view(key) == "kappa_t" ? config.impairments.kappa_t
                                                         : config.impairments.kappa_r;
    if (!(k >= 0.0 && k < 1.0)) {
      throw ConfigError(join(path, node.contains("kappa") ? "kappa" : key),
                        "impairment coefficient must lie in [0, 1)");
    }
  }
  config.impairments.phase_concentration =
      node.contains("phase_concentration")
          ? read_number(node["phase_concentration"], join(path, "phase_concentration"))
          : kInf;

  config.domain = node.contains("phase_domain") ? read_domain(node["phase_domain"], join(path, "phase_domain"))
                                                : PhaseDomain::continuous();

  // Angles: explicit list, or {"seed": N} for the uniform generator.
  const std::string angles_path = join(path, "angles");
  if (!node.contains("angles")) throw ConfigError(angles_path, "required");
  const auto& angles = node["angles"];
  if (angles.is_object()) {
    reject_unknown(angles, angles_path, {"seed", "model"});
    if (!angles.contains("seed")) throw ConfigError(join(angles_path, "seed"), "required");
    AngleModel model = AngleModel::tied;
    if (angles.contains("model")) {
      const auto m = angles["model"].is_string() ? angles["model"].get<std::string>() : "";
      if (m == "tied") model = AngleModel::tied;
      else if (m == "independent") model = AngleModel::independent;
      else throw ConfigError(join(angles_path, "model"), "expected \"tied\" or \"independent\"");
    }
    config.geometry.pairs =
        random_pair_angles(pairs, read_count(angles["seed"], join(angles_path, "seed")), model);
  } else if (angles.is_array()) {
    if (angles.size() != pairs) {
      throw ConfigError(angles_path, "expected " + std::to_string(pairs) + " angle sets, got " +
                                         std::to_string(angles.size()));
    }
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto p = at(angles_path, i);
      const auto& a = angles[i];
      require_object(a, p);
      reject_unknown(a, p, {"arrival_azimuth", "arrival_elevation", "departure_azimuth",
                            "departure_elevation"});
      PairAngles pa;
      auto get = [&](const char* key) {
        if (!a.contains(key)) throw ConfigError(join(p, key), "required");
        const double v = read_number(a[key], join(p, key));
        if (!(v >= 0.0 && v < kTwoPi)) throw ConfigError(join(p, key), "angle must lie in [0, 2pi)");
        return v;
      };
      pa.arrival_azimuth = get("arrival_azimuth");
      pa.arrival_elevation = get("arrival_elevation");
      pa.departure_azimuth = get("departure_azimuth");
      pa.departure_elevation = get("departure_elevation");
      config.geometry.pairs.push_back(pa);
    }
  } else {
    throw ConfigError(angles_path, "expected an array of angle sets or {\"seed\": N}");
  }

  double reference_db = -30.0;
  double exponent = 2.2;
  if (node.contains("path_loss")) {
    const auto& pl = node["path_loss"];
    const auto pl_path = join(path, "path_loss");
    require_object(pl, pl_path);
    reject_unknown(pl, pl_path, {"reference_db", "exponent"});
    if (pl.contains("reference_db")) reference_db = read_number(pl["reference_db"], join(pl_path, "reference_db"));
    if (pl.contains("exponent")) exponent = read_number(pl["exponent"], join(pl_path, "exponent"));
  }

  config.links.assign(pairs, PairLinkParams{1.0, 1.0, default_rician, default_rician});
  if (node.contains("links")) {
    const auto& links = node["links"];
    const auto links_path = join(path, "links");
    if (!links.is_array() || links.size() != pairs) {
      throw ConfigError(links_path, "expected an array with one entry per pair");
    }
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto p = at(links_path, i);
      const auto& l = links[i];
      require_object(l, p);
      reject_unknown(l, p, {"alpha_a", "alpha_b", "alpha_a_db", "alpha_b_db", "distance_a_m",
                            "distance_b_m", "rician_a", "rician_b", "rician_a_db", "rician_b_db"});
      auto& link = config.links[i];
      auto gain = [&](const char* lin, const char* db, const char* dist, double& out) {
        const int n = static_cast<int>(l.contains(lin)) + static_cast<int>(l.contains(db)) +
                      static_cast<int>(l.contains(dist));
        if (n > 1) throw ConfigError(join(p, lin), "give only one of alpha, alpha_db, distance");
        if (l.contains(lin)) out = read_number(l[lin], join(p, lin));
        if (l.contains(db)) out = db_field(l[db], join(p, db));
        if (l.contains(dist)) {
          const double d = read_number(l[dist], join(p, dist));
          if (!(d > 0.0) || std::isinf(d)) throw ConfigError(join(p, dist), "distance must be positive and finite");
          out = path_loss_gain(d, reference_db, exponent);
        }
      };
      gain("alpha_a", "alpha_a_db", "distance_a_m", link.alpha_a);
      gain("alpha_b", "alpha_b_db", "distance_b_m", link.alpha_b);
      if (auto r = linear_or_db(l, p, "rician_a", "rician_a_db")) link.rician_a = *r;
      if (auto r = linear_or_db(l, p, "rician_b", "rician_b_db")) link.rician_b = *r;
    }
  }

  try {
    validate(config);
  } catch (const ConfigError& e) {
    throw ConfigError(join(path, e.field()), std::string(e.what()).substr(e.field().size() + 2));
  }
  return config;
}

json write_scenario(const SystemConfig& config) {
  json angles = json::array();
  for (const auto& a : config.geometry.pairs) {
    angles.push_back({{"arrival_azimuth", a.arrival_azimuth},
                      {"arrival_elevation", a.arrival_elevation},
                      {"departure_azimuth", a.departure_azimuth},
                      {"departure_elevation", a.departure_elevation}});
  }
  json links = json::array();
  for (const auto& l : config.links) {
    links.push_back({{"alpha_a", l.alpha_a},
                     {"alpha_b", l.alpha_b},
                     {"rician_a", write_number(l.rician_a)},
                     {"rician_b", write_number(l.rician_b)}});
  }
  return {{"elements", config.geometry.elements},
          {"pairs", config.pairs()},
          {"power", config.power},
          {"noise_variance", config.noise_variance},
          {"kappa_t", config.impairments.kappa_t},
          {"kappa_r", config.impairments.kappa_r},
          {"phase_concentration", write_number(config.impairments.phase_concentration)},
          {"phase_domain", write_domain(config.domain)},
          {"angles", angles},
          {"links", links}};
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
}

Objective parse_objective(const std::string& name, const std::string& path) {
  if (name == "general") return Objective::general;
  if (name == "N-RIS-HWIs" || name == "nris") return Objective::no_ris_hwi;
  if (name == "N-T-HWIs" || name == "nthwi") return Objective::no_transceiver_hwi;
  throw ConfigError(path, "unknown objective \"" + name + "\"");
}

bool needs_grid(Method m) { return m == Method::ga_dps || m == Method::exhaustive; }

struct AxisTable {
  SweepAxis axis;
  std::string_view name;
};
constexpr AxisTable kAxes[] = {
    {SweepAxis::snr_db, "snr_db"},           {SweepAxis::rician_db, "rician_db"},
    {SweepAxis::bits, "bits"},               {SweepAxis::elements, "elements"},
    {SweepAxis::impairment, "impairment"},   {SweepAxis::concentration, "concentration"},
};

struct MethodTable {
  Method method;
  std::string_view name;
};
constexpr MethodTable kMethods[] = {
    {Method::closed_general, "closed-general"}, {Method::closed_nris, "closed-nris"},
    {Method::closed_nthwi, "closed-nthwi"},     {Method::mc, "mc"},
    {Method::ga_cps, "ga-cps"},                 {Method::ga_dps, "ga-dps"},
    {Method::exhaustive, "exhaustive"},         {Method::random, "random"},
    {Method::analytic_single, "analytic-single"},
};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view to_string(SweepAxis axis) noexcept {
  for (const auto& a : kAxes) {
    if (a.axis == axis) return a.name;
  }
  return "unknown";
}

std::string_view to_string(Method method) noexcept {
  for (const auto& m : kMethods) {
    if (m.method == method) return m.name;
  }
  return "unknown";
}

SweepAxis parse_axis(std::string_view name) {
  for (const auto& a : kAxes) {
    if (a.name == name) return a.axis;
  }
  throw ConfigError("sweep.axis", "unknown axis \"" + std::string(name) + "\"");
}

Method parse_method(std::string_view name) {
  for (const auto& m : kMethods) {
    if (m.name == name) return m.method;
  }
  throw ConfigError("methods", "unknown method \"" + std::string(name) + "\"");
}

SystemConfig validate_config(std::string_view text) {
  return read_scenario(parse_text(text), "");
}

std::string serialize_config(const SystemConfig& config) {
  return write_scenario(config).dump(2) + "\n";
}

SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value) {
  SystemConfig config = base;
  switch (axis) {
    case SweepAxis::snr_db:
      config.power.assign(config.pairs(), db_to_linear(value));
      break;
    case SweepAxis::rician_db: {
      const double k = std::isinf(value) ? value : db_to_linear(value);
      for (auto& l : config.links) l.rician_a = l.rician_b = k;
      break;
    }
    case SweepAxis::bits:
      if (value < 1.0 || value != std::floor(value)) {
        throw ConfigError("sweep.values", "bit width must be a positive integer");
      }
      config.domain = PhaseDomain::discrete(static_cast<unsigned>(value));
      break;
    case SweepAxis::elements:
      if (value < 1.0 || value != std::floor(value)) {
        throw ConfigError("sweep.values", "element count must be a positive integer");
      }
      config.geometry.elements = static_cast<std::size_t>(value);
      break;
    case SweepAxis::impairment:
      config.impairments.kappa_t = value;
      config.impairments.kappa_r = value;
      break;
    case SweepAxis::concentration:
      config.impairments.phase_concentration = value;
      break;
  }
  try {
    validate(config);
  } catch (const ConfigError& e) {
    throw ConfigError("sweep.values", std::string(to_string(axis)) + " = " + format_number(value) +
                                          " gives an invalid scenario (" + e.what() + ")");
  }
  return config;
}

ExperimentSpec parse_experiment(std::string_view text) {
  const json root = parse_text(text);
  require_object(root, "");
  reject_unknown(root, "", {"name", "scenario", "objective", "sweep", "methods", "monte_carlo",
                            "ga", "random_draws", "exhaustive_budget", "seed", "output"});
  ExperimentSpec spec;
  spec.name = root.value("name", std::string("experiment"));
  if (!root.contains("scenario")) throw ConfigError("scenario", "required");
  spec.scenario = read_scenario(root["scenario"], "scenario");
  if (root.contains("objective")) {
    if (!root["objective"].is_string()) throw ConfigError("objective", "expected a string");
    spec.objective = parse_objective(root["objective"].get<std::string>(), "objective");
  }

  if (!root.contains("sweep")) throw ConfigError("sweep", "required");
  const auto& sweep = root["sweep"];
  require_object(sweep, "sweep");
  reject_unknown(sweep, "sweep", {"axis", "values"});
  if (!sweep.contains("axis") || !sweep["axis"].is_string()) throw ConfigError("sweep.axis", "required string");
  spec.axis = parse_axis(sweep["axis"].get<std::string>());
  if (!sweep.contains("values") || !sweep["values"].is_array() || sweep["values"].empty()) {
    throw ConfigError("sweep.values", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < sweep["values"].size(); ++i) {
    spec.values.push_back(read_number(sweep["values"][i], at("sweep.values", i)));
  }

  if (!root.contains("methods") || !root["methods"].is_array() || root["methods"].empty()) {
    throw ConfigError("methods", "expected a non-empty array");
  }
  std::set<Method> seen;
  for (std::size_t i = 0; i < root["methods"].size(); ++i) {
    const auto& m = root["methods"][i];
    if (!m.is_string()) throw ConfigError(at("methods", i), "expected a string");
    Method method;
    try {
      method = parse_method(m.get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(at("methods", i), "unknown method \"" + m.get<std::string>() + "\"");
    }
    if (!seen.insert(method).second) throw ConfigError(at("methods", i), "duplicate method");
    spec.methods.push_back(method);
  }

  if (root.contains("monte_carlo")) {
    const auto& mc = root["monte_carlo"];
    require_object(mc, "monte_carlo");
    reject_unknown(mc, "monte_carlo",
                   {"channel_draws", "noise_draws_per_channel", "confidence", "tx_distortion"});
    if (mc.contains("channel_draws")) spec.mc.channel_draws = read_count(mc["channel_draws"], "monte_carlo.channel_draws");
    if (mc.contains("noise_draws_per_channel")) {
      spec.mc.noise_draws_per_channel =
          read_count(mc["noise_draws_per_channel"], "monte_carlo.noise_draws_per_channel");
    }
    if (mc.contains("confidence")) spec.mc.confidence = read_number(mc["confidence"], "monte_carlo.confidence");
    if (mc.contains("tx_distortion")) {
      const auto mode = mc["tx_distortion"].is_string() ? mc["tx_distortion"].get<std::string>() : "";
      if (mode == "sampled") spec.mc.tx_mode = TxDistortionMode::sampled;
      else if (mode == "expected") spec.mc.tx_mode = TxDistortionMode::expected;
      else throw ConfigError("monte_carlo.tx_distortion", "expected \"sampled\" or \"expected\"");
    }
    try {
      validate(spec.mc);
    } catch (const InvalidParameter& e) {
      throw ConfigError("monte_carlo", e.what());
    }
  }
  if (root.contains("ga")) {
    const auto& ga = root["ga"];
    require_object(ga, "ga");
    reject_unknown(ga, "ga", {"population", "generations", "crossover_rate", "mutation_rate",
                              "elite_count", "tournament_size", "cps_mutation_sigma"});
    if (ga.contains("population")) spec.ga.population = read_count(ga["population"], "ga.population");
    if (ga.contains("generations")) spec.ga.generations = read_count(ga["generations"], "ga.generations");
    if (ga.contains("crossover_rate")) spec.ga.crossover_rate = read_number(ga["crossover_rate"], "ga.crossover_rate");
    if (ga.contains("mutation_rate")) spec.ga.mutation_rate = read_number(ga["mutation_rate"], "ga.mutation_rate");
    if (ga.contains("elite_count")) spec.ga.elite_count = read_count(ga["elite_count"], "ga.elite_count");
    if (ga.contains("tournament_size")) spec.ga.tournament_size = read_count(ga["tournament_size"], "ga.tournament_size");
    if (ga.contains("cps_mutation_sigma")) {
      spec.ga.cps_mutation_sigma = read_number(ga["cps_mutation_sigma"], "ga.cps_mutation_sigma");
    }
    try {
      validate(spec.ga);
    } catch (const InvalidParameter& e) {
      throw ConfigError("ga", e.what());
    }
  }
  if (root.contains("random_draws")) {
    spec.random_draws = read_count(root["random_draws"], "random_draws");
    if (spec.random_draws == 0) throw ConfigError("random_draws", "must be >= 1");
  }
  if (root.contains("exhaustive_budget")) {
    spec.exhaustive_budget = read_count(root["exhaustive_budget"], "exhaustive_budget");
  }
  if (root.contains("seed")) spec.seed = read_count(root["seed"], "seed");
  spec.mc.seed = spec.seed;
  spec.ga.seed = spec.seed;
  if (root.contains("output")) {
    if (!root["output"].is_string()) throw ConfigError("output", "expected a string");
    spec.output = root["output"].get<std::string>();
  }

  // Every axis point must give a valid scenario before anything runs.
  for (double v : spec.values) {
    const auto point = apply_axis(spec.scenario, spec.axis, v);
    for (Method m : spec.methods) {
      if (needs_grid(m) && !point.domain.is_discrete()) {
        throw ConfigError("methods", std::string(to_string(m)) +
                                         " needs a discrete phase domain (scenario.phase_domain)");
      }
    }
  }
  return spec;
}

std::string serialize_experiment(const ExperimentSpec& spec) {
  json methods = json::array();
  for (Method m : spec.methods) methods.push_back(std::string(to_string(m)));
  json values = json::array();
  for (double v : spec.values) values.push_back(write_number(v));
  json root = {
      {"name", spec.name},
      {"scenario", write_scenario(spec.scenario)},
      {"objective", std::string(to_string(spec.objective))},
      {"sweep", {{"axis", std::string(to_string(spec.axis))}, {"values", values}}},
      {"methods", methods},
      {"monte_carlo",
       {{"channel_draws", spec.mc.channel_draws},
        {"noise_draws_per_channel", spec.mc.noise_draws_per_channel},
        {"confidence", spec.mc.confidence},
        {"tx_distortion", spec.mc.tx_mode == TxDistortionMode::sampled ? "sampled" : "expected"}}},
      {"ga",
       {{"population", spec.ga.population},
        {"generations", spec.ga.generations},
        {"crossover_rate", spec.ga.crossover_rate},
        {"mutation_rate", spec.ga.mutation_rate},
        {"elite_count", spec.ga.elite_count},
        {"tournament_size", spec.ga.tournament_size},
        {"cps_mutation_sigma", spec.ga.cps_mutation_sigma}}},
      {"random_draws", spec.random_draws},
      {"exhaustive_budget", spec.exhaustive_budget},
      {"seed", spec.seed}};
  if (!spec.output.empty()) root["output"] = spec.output;
  return root.dump(2) + "\n";
}

namespace {

class AxisPointRunner {
 public:
  AxisPointRunner(const ExperimentSpec& spec, std::size_t index)
      : spec_(spec), index_(index), config_(apply_axis(spec.scenario, spec.axis, spec.values[index])) {}

  std::vector<ResultRow> run() {
    std::vector<ResultRow> rows;
    for (Method m : spec_.methods) {
      const auto start = std::chrono::steady_clock::now();
      std::vector<ResultRow> block;
      try {
        block = run_method(m);
      } catch (const BudgetExceeded& e) {
        block.push_back(skipped(m, e.what()));
      }
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      for (auto& r : block) {
        r.wall_ms = ms;
        rows.push_back(std::move(r));
      }
    }
    return rows;
  }

 private:
  // Common random numbers: every axis point reuses the same GA and
  // Monte-Carlo streams, so curves differ only through the swept parameter.
  std::uint64_t seed_for(std::uint64_t slot) const { return derive_seed(spec_.seed, slot); }

  const OptResult& design(Objective objective, const PhaseDomain& domain) {
    const auto key = std::make_pair(static_cast<int>(objective),
                                    domain.is_discrete() ? static_cast<int>(domain.bits) : 0);
    auto it = designs_.find(key);
    if (it != designs_.end()) return it->second;
    GaParams ga = spec_.ga;
    ga.seed = seed_for(static_cast<std::uint64_t>(key.first) * 32 + key.second);
    return designs_.emplace(key, ga_optimize(config_, objective, domain, ga)).first->second;
  }

  ResultRow base_row(Method m) const {
    ResultRow row;
    row.axis = spec_.axis;
    row.axis_value = spec_.values[index_];
    row.method = m;
    return row;
  }

  ResultRow skipped(Method m, const std::string& reason) const {
    auto row = base_row(m);
    row.note = "skipped: " + reason;
    return row;
  }

  std::vector<ResultRow> rows_from(Method m, const RateReport& report) const {
    std::vector<ResultRow> rows;
    for (std::size_t i = 0; i < report.per_pair.size(); ++i) {
      auto row = base_row(m);
      row.pair = i;
      row.rate = report.per_pair[i];
      if (report.half_width) row.ci_half_width = (*report.half_width)[i];
      rows.push_back(std::move(row));
    }
    auto sum = base_row(m);
    sum.rate = report.sum;
    sum.ci_half_width = report.sum_half_width;
    rows.push_back(std::move(sum));
    return rows;
  }

  std::vector<ResultRow> run_method(Method m) {
    const PhaseDomain grid = config_.domain;
    switch (m) {
      case Method::closed_general:
        return rows_from(m, rate_general(config_, design(Objective::general, grid).best));
      case Method::closed_nris:
        return rows_from(m, rate_no_ris_hwi(config_, design(Objective::no_ris_hwi, grid).best));
      case Method::closed_nthwi:
        return rows_from(m, rate_no_transceiver_hwi(
                                config_, design(Objective::no_transceiver_hwi, grid).best));
      case Method::mc: {
        McParams mc = spec_.mc;
        mc.seed = seed_for(900);
        return rows_from(m, ergodic_rate_mc(config_, design(Objective::general, grid).best, mc).report);
      }
      case Method::ga_cps:
        return rows_from(m, evaluate(config_, design(spec_.objective, PhaseDomain::continuous()).best,
                                     spec_.objective));
      case Method::ga_dps:
        return rows_from(m, evaluate(config_, design(spec_.objective, grid).best, spec_.objective));
      case Method::exhaustive: {
        const auto result =
            exhaustive_search(config_, spec_.objective, grid.bits, spec_.exhaustive_budget);
        return rows_from(m, evaluate(config_, result.best, spec_.objective));
      }
      case Method::random:
        return random_rows();
      case Method::analytic_single: {
        auto phases = optimal_single_pair_phases(0, config_.geometry);
        if (grid.is_discrete()) phases = quantize(phases.theta, grid.bits);
        return rows_from(m, evaluate(config_, phases, spec_.objective));
      }
    }
    throw InvalidParameter("unknown method");
  }

  // Average over random phase draws, with the spread of that average as CI.
  std::vector<ResultRow> random_rows() {
    Rng rng(seed_for(901));
    const std::size_t pairs = config_.pairs();
    const std::size_t n = spec_.random_draws;
    std::vector<std::vector<double>> samples(pairs + 1, std::vector<double>(n));
    for (std::size_t d = 0; d < n; ++d) {
      const auto report = evaluate(config_, random_phases(config_.elements(), config_.domain, rng),
                                   spec_.objective);
      for (std::size_t i = 0; i < pairs; ++i) samples[i][d] = report.per_pair[i];
      samples[pairs][d] = report.sum;
    }
    const double z = normal_quantile_two_sided(spec_.mc.confidence);
    RateReport report;
    std::vector<double> hw;
    for (std::size_t i = 0; i <= pairs; ++i) {
      double mean = 0.0;
      for (double v : samples[i]) mean += v;
      mean /= static_cast<double>(n);
      double ss = 0.0;
      for (double v : samples[i]) ss += (v - mean) * (v - mean);
      const double half = n > 1 ? z * std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
      if (i < pairs) {
        report.per_pair.push_back(mean);
        hw.push_back(half);
      } else {
        report.sum = mean;
        report.sum_half_width = half;
      }
    }
    report.half_width = std::move(hw);
    return rows_from(Method::random, report);
  }

  const ExperimentSpec& spec_;
  std::size_t index_;
  SystemConfig config_;
  std::map<std::pair<int, int>, OptResult> designs_;
};

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, unsigned threads) {
  if (spec.values.empty()) throw ConfigError("sweep.values", "expected a non-empty array");
  if (spec.methods.empty()) throw ConfigError("methods", "expected a non-empty array");
  validate(spec.scenario);
  std::vector<std::vector<ResultRow>> blocks(spec.values.size());
  // Fail fast on an invalid axis point before any computation.
  for (double v : spec.values) apply_axis(spec.scenario, spec.axis, v);
  detail::parallel_for(spec.values.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) blocks[a] = AxisPointRunner(spec, a).run();
  });
  std::vector<ResultRow> rows;
  for (auto& b : blocks) {
    for (auto& r : b) rows.push_back(std::move(r));
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows, const CsvOptions& options) {
  if (!options.comment.empty()) out << "# " << options.comment << "\n";
  out << "axis_name,axis_value,method,pair_index,rate_bps_hz,ci_half_width,wall_ms,note\n";
  for (const auto& r : rows) {
    out << to_string(r.axis) << ',' << format_number(r.axis_value) << ',' << to_string(r.method)
        << ',' << (r.pair ? std::to_string(*r.pair) : std::string("sum")) << ','
        << (r.rate ? format_number(*r.rate) : std::string()) << ','
        << (r.ci_half_width ? format_number(*r.ci_half_width) : std::string()) << ','
        << (options.timing ? format_number(r.wall_ms) : std::string()) << ','
        << csv_escape(r.note) << '\n';
  }
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : builtin_presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace risd2d
