#include <cstdio>
#include <exception>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "fpsearch/config.hpp"
#include "fpsearch/experiments.hpp"
#include "fpsearch/invariants.hpp"
#include "fpsearch/output.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

std::vector<std::string> split_plus(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find('+', start);
    out.push_back(s.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

int cmd_list() {
  for (const auto& info : fpsearch::experiment_catalog()) {
    fmt::print("{:<12} {}\n", info.name, info.summary);
  }
  return 0;
}

int cmd_run(const std::string& name, const std::string& config_path, const std::string& out_dir,
            const std::vector<std::string>& overrides) {
  const auto kind = fpsearch::parse_experiment(name);
  auto config = config_path.empty() ? fpsearch::parse_config(kind, "", overrides)
                                    : fpsearch::load_config(kind, config_path, overrides);
  if (!out_dir.empty()) config.output_dir = out_dir;
  const auto output = fpsearch::run_experiment(config);
  fpsearch::write_output(output, config.output_dir);
  for (const auto& f : output.files) fmt::print("{}/{}\n", config.output_dir, f.path);
  return 0;
}

int cmd_verify() {
  bool ok = true;
  for (const auto& r : fpsearch::run_invariant_suite()) {
    fmt::print("{} {} ({})\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitFailure;
}

int cmd_compile(const std::string& matching, double phase_deg, int r, const std::string& style) {
  const fpsearch::OracleSpec oracle(2, split_plus(matching), phase_deg * std::numbers::pi / 180.0);
  const auto seq = fpsearch::compile_algorithm(fpsearch::RecursionOrder(r), oracle, fpsearch::SpinSystem{},
                                               fpsearch::parse_style(style));
  fmt::print("{}", fpsearch::to_text(seq));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-point search simulator"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List experiments");

  auto* run = app.add_subcommand("run", "Run an experiment");
  std::string experiment, config_path, out_dir;
  std::vector<std::string> overrides;
  run->add_option("experiment", experiment, "Experiment name")->required();
  run->add_option("--config", config_path, "INI config file");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--override", overrides, "key=value, repeatable");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");

  auto* compile = app.add_subcommand("compile", "Print the pulse sequence for V_r");
  std::string matching = "11", style = "naive";
  double phase_deg = 60.0;
  int order = 1;
  compile->add_option("--matching", matching, "Matching states joined by '+'");
  compile->add_option("--phase-deg", phase_deg, "Oracle phase in degrees");
  compile->add_option("-r,--order", order, "Recursion order");
  compile->add_option("--style", style, "naive or bb1");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) return cmd_list();
    if (*run) return cmd_run(experiment, config_path, out_dir, overrides);
    if (*verify) return cmd_verify();
    if (*compile) return cmd_compile(matching, phase_deg, order, style);
  } catch (const fpsearch::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const fpsearch::InvariantViolation& e) {
    fmt::print(stderr, "invariant violation at index {}: {}\n", e.event_index(), e.what());
    return kExitInvariant;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}
