#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "fracspec/config.hpp"
#include "fracspec/csv.hpp"

namespace fracspec {

/// A scalar test function with its derivative and its Caputo derivative of order alpha.
struct TestFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> caputo;
};

/// "tsquared", "exp", "mittag" (E_{a,1}(t)), "constant" and "zero".
/// Throws ConfigError for other names.
TestFunction make_test_function(const std::string& name, double alpha, double mittag_a = 0.5);

/// Tables produced by one experiment plus human-readable summary lines.
struct ExperimentResult {
  std::vector<CsvTable> tables;
  std::vector<std::string> summary;
};

/// (L, dt, t, numeric, reference, abs_err, rel_err) per configured (L, dt).
ExperimentResult run_caputo_direct(const ExperimentConfig& cfg);
/// (dt, n, t, max_j |psi_recurrence - psi_oracle|) at log-spaced steps.
ExperimentResult run_psi_stability(const ExperimentConfig& cfg);
/// (t, x, numeric, reference, abs_err, rel_err) on a grid x grid sampling of [0,T] x [-1,1].
ExperimentResult run_toy_pde(const ExperimentConfig& cfg);
/// Field snapshots, sensor traces, coefficient decay and per-step diagnostics.
ExperimentResult run_disk_wave(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes every table to dir/<name>.csv with the config stamp; returns the paths.
std::vector<std::filesystem::path> write_result(const ExperimentResult& result, const ExperimentConfig& cfg,
                                                const std::filesystem::path& dir);

}  // namespace fracspec
