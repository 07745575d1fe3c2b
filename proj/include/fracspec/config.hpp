#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "fracspec/quadrature.hpp"

namespace fracspec {

enum class ExperimentKind { CaputoDirect, PsiStability, ToyPde, DiskWave };

std::string to_string(ExperimentKind kind);
/// Accepts "caputo-direct", "psi-stability", "toy-pde", "disk-wave"; throws ConfigError.
ExperimentKind parse_experiment(const std::string& name);

/// One (L, dt) combination of the direct Caputo experiment.
struct LdtPair {
  std::size_t L = 0;
  double dt = 0.0;
  bool operator==(const LdtPair&) const = default;
};

struct CaputoDirectBlock {
  std::string function = "tsquared";  // tsquared | exp | mittag | constant
  double mittag_a = 0.5;              // parameter a of E_{a,1} for "mittag"
  std::vector<LdtPair> runs;          // empty: the top-level (L, dt)
  std::size_t samples = 64;           // output rows per run (plus the end point)
  bool operator==(const CaputoDirectBlock&) const = default;
};

struct PsiStabilityBlock {
  std::string function = "exp";  // tsquared | exp | zero
  std::vector<double> dts;       // empty: the top-level dt
  std::size_t samples = 200;     // rows per dt, log-spaced in n
  std::size_t panels = 64;       // oracle panels
  bool operator==(const PsiStabilityBlock&) const = default;
};

struct ToyPdeBlock {
  double k = 10.0;
  double c = 100.0;
  std::size_t grid = 64;
  bool operator==(const ToyPdeBlock&) const = default;
};

struct DiskWaveBlock {
  double c0 = 100.0;
  double tau = 1.0;
  std::string initial = "dipole";  // dipole | zero | bump
  std::size_t sensor_count = 70;
  double sensor_radius = 0.5;
  std::size_t decimation = 100;
  std::size_t snapshot_count = 4;
  std::size_t grid = 101;
  bool unscaled_psi_term = false;
  bool operator==(const DiskWaveBlock&) const = default;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::CaputoDirect;
  QuadMethod method = QuadMethod::BirkSong;
  double alpha = 0.5;
  std::size_t L = 50;
  double dt = 1.0 / 16384.0;
  double T = 1.0;
  std::size_t K = 40;
  std::string output_dir = "out";
  CaputoDirectBlock caputo_direct;
  PsiStabilityBlock psi_stability;
  ToyPdeBlock toy_pde;
  DiskWaveBlock disk_wave;

  bool operator==(const ExperimentConfig&) const = default;

  /// Range checks; throws ConfigError.
  void validate() const;
};

/// Parses JSON text. Missing keys take defaults; unknown keys are rejected.
/// Throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
/// Pretty-printed JSON with every field spelled out.
std::string serialize_config(const ExperimentConfig& cfg);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies "dotted.key=value" where value is JSON (bare words are taken as strings).
ExperimentConfig apply_override(const ExperimentConfig& cfg, const std::string& assignment);
/// Applies all assignments in order, validating only the final result.
ExperimentConfig apply_overrides(const ExperimentConfig& cfg, const std::vector<std::string>& assignments);

/// Single-line JSON of the resolved config, for CSV stamps.
std::string config_stamp(const ExperimentConfig& cfg);

}  // namespace fracspec
