// risd2d: experiment runner for RIS-aided D2D rate studies.
//
//   risd2d run <spec-file|preset:NAME> [--seed N] [--out PATH] [--threads N] [--no-timing]
//   risd2d validate <spec-file|preset:NAME>
//   risd2d presets list
//   risd2d presets show NAME

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "risd2d/error.hpp"
#include "risd2d/experiment.hpp"

namespace {

constexpr std::string_view kPresetPrefix = "preset:";

std::string load_spec_text(const std::string& source) {
  if (source.rfind(kPresetPrefix, 0) == 0) {
    const auto name = source.substr(kPresetPrefix.size());
    const auto* preset = risd2d::find_preset(name);
    if (preset == nullptr) throw risd2d::Error("no preset named \"" + name + "\"");
    return std::string(preset->text);
  }
  std::ifstream in(source);
  if (!in) throw risd2d::Error("cannot open " + source);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-aided D2D achievable-rate experiments"};
  app.require_subcommand(1);

  std::string spec_source;
  std::uint64_t seed = 0;
  std::string out_path;
  unsigned threads = 1;
  bool no_timing = false;

  auto* run = app.add_subcommand("run", "Run an experiment spec and write CSV");
  run->add_option("spec", spec_source, "Experiment file, or preset:NAME")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the spec seed");
  run->add_option("--out", out_path, "CSV output path (default: spec output, else stdout)");
  run->add_option("--threads", threads, "Worker threads for axis points")
      ->check(CLI::Range(1u, 1024u));
  run->add_flag("--no-timing", no_timing, "Leave wall_ms empty so output is byte-reproducible");

  auto* validate = app.add_subcommand("validate", "Check an experiment spec without running it");
  validate->add_option("spec", spec_source, "Experiment file, or preset:NAME")->required();

  auto* presets = app.add_subcommand("presets", "Inspect built-in presets");
  presets->require_subcommand(1);
  presets->add_subcommand("list", "List preset names");
  std::string preset_name;
  auto* show = presets->add_subcommand("show", "Print a preset document");
  show->add_option("name", preset_name)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto spec = risd2d::parse_experiment(load_spec_text(spec_source));
      if (*seed_opt) {
        spec.seed = seed;
        spec.mc.seed = seed;
        spec.ga.seed = seed;
      }
      const auto rows = risd2d::run_experiment(spec, threads);
      risd2d::CsvOptions options;
      options.timing = !no_timing;
      if (!no_timing) {
        options.comment = "risd2d " + spec.name + " seed=" + std::to_string(spec.seed) +
                          " generated " + utc_timestamp();
      }
      const std::string path = out_path.empty() ? spec.output : out_path;
      if (path.empty() || path == "-") {
        risd2d::write_csv(std::cout, rows, options);
      } else {
        std::ofstream out(path);
        if (!out) throw risd2d::Error("cannot write " + path);
        risd2d::write_csv(out, rows, options);
        std::cerr << "wrote " << rows.size() << " rows to " << path << "\n";
      }
    } else if (*validate) {
      const auto spec = risd2d::parse_experiment(load_spec_text(spec_source));
      std::cout << "ok: " << spec.name << " (" << spec.values.size() << " axis values x "
                << spec.methods.size() << " methods)\n";
    } else if (*presets) {
      if (*show) {
        const auto* preset = risd2d::find_preset(preset_name);
        if (preset == nullptr) throw risd2d::Error("no preset named \"" + preset_name + "\"");
        std::cout << preset->text;
      } else {
        for (const auto& p : risd2d::builtin_presets()) std::cout << p.name << "\n";
      }
    }
  } catch (const risd2d::ConfigError& e) {
    std::cerr << "invalid spec: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
