// Command-line runner for the fracspec experiments.
//
//   fracspec run <config> [--out DIR] [--override key=value ...]
//   fracspec validate <config>
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fracspec/config.hpp"
#include "fracspec/error.hpp"
#include "fracspec/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

fracspec::ExperimentConfig resolve(const std::string& path, const std::vector<std::string>& overrides) {
  return fracspec::apply_overrides(fracspec::load_config(path), overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static-memory solvers for time-fractional PDEs"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;

  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "JSON config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("--override", overrides, "key=value overrides, dotted keys for nested blocks");

  CLI::App* validate = app.add_subcommand("validate", "Parse and check a config file");
  validate->add_option("config", config_path, "JSON config file")->required();
  validate->add_option("--override", overrides, "key=value overrides, dotted keys for nested blocks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    fracspec::ExperimentConfig cfg = resolve(config_path, overrides);
    if (*validate) {
      std::cout << fracspec::serialize_config(cfg) << '\n';
      return 0;
    }
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    const fracspec::ExperimentResult result = fracspec::run_experiment(cfg);
    for (const auto& path : fracspec::write_result(result, cfg, cfg.output_dir)) std::cout << "wrote " << path.string() << '\n';
    for (const std::string& line : result.summary) std::cout << line << '\n';
    return 0;
  } catch (const fracspec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fracspec::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
