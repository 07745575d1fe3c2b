#include "fracspec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "fracspec/caputo.hpp"
#include "fracspec/disk.hpp"
#include "fracspec/error.hpp"
#include "fracspec/orthopoly.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/solvers.hpp"
#include "fracspec/specialfns.hpp"

namespace fracspec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t steps_of(double T, double dt) { return static_cast<std::size_t>(std::llround(T / dt)); }

// sum_{k>=1} exp(log_term(k)), stopping once terms are negligible.
template <typename LogTerm>
double positive_series(LogTerm log_term) {
  double sum = 0.0;
  for (int k = 1; k < 2000; ++k) {
    const double term = std::exp(log_term(k));
    sum += term;
    if (k > 3 && term < 1e-17 * sum) return sum;
  }
  throw NonConvergenceError("Mittag-Leffler derivative series did not converge");
}

double relative_error(double numeric, double reference) {
  const double abs_err = std::abs(numeric - reference);
  if (reference != 0.0) return abs_err / std::abs(reference);
  return abs_err == 0.0 ? 0.0 : kNaN;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

}  // namespace

TestFunction make_test_function(const std::string& name, double alpha, double mittag_a) {
  if (name == "tsquared") {
    const double g = std::tgamma(3.0 - alpha);
    return {[](double t) { return t * t; }, [](double t) { return 2.0 * t; },
            [alpha, g](double t) { return t > 0.0 ? 2.0 * std::pow(t, 2.0 - alpha) / g : 0.0; }};
  }
  if (name == "exp") {
    return {[](double t) { return std::exp(t); }, [](double t) { return std::exp(t); },
            [alpha](double t) {
              if (t <= 0.0) return 0.0;
              return std::pow(t, 1.0 - alpha) * mittag_leffler(MLParams{1.0, 2.0 - alpha}, t);
            }};
  }
  if (name == "mittag") {
    const double a = mittag_a;
    return {[a](double t) { return mittag_leffler(MLParams{a, 1.0}, t); },
            [a](double t) {
              if (t <= 0.0) return 1.0 / std::tgamma(a + 1.0);
              return positive_series([&](int k) {
                const double kk = k;
                return std::log(kk) + (kk - 1.0) * std::log(t) - std::lgamma(a * kk + 1.0);
              });
            },
            [a, alpha](double t) {
              if (t <= 0.0) return 0.0;
              return positive_series([&](int k) {
                const double kk = k;
                return std::lgamma(kk + 1.0) - std::lgamma(kk + 1.0 - alpha) - std::lgamma(a * kk + 1.0) +
                       (kk - alpha) * std::log(t);
              });
            }};
  }
  if (name == "constant") {
    return {[](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
  }
  if (name == "zero") {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
  }
  throw ConfigError("unknown test function '" + name + "'");
}

ExperimentResult run_caputo_direct(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto& blk = cfg.caputo_direct;
  const TestFunction fn = make_test_function(blk.function, cfg.alpha, blk.mittag_a);
  std::vector<LdtPair> runs = blk.runs;
  if (runs.empty()) runs.push_back({cfg.L, cfg.dt});
  ExperimentResult res;
  CsvTable table{"caputo_direct", {"L", "dt", "t", "numeric", "reference", "abs_err", "rel_err"}, {}};
  for (const LdtPair& run : runs) {
    const std::size_t N = steps_of(cfg.T, run.dt);
    std::set<std::size_t> sample_steps;
    for (std::size_t i = 1; i <= blk.samples; ++i)
      sample_steps.insert(std::max<std::size_t>(1, (i * N + blk.samples / 2) / blk.samples));
    sample_steps.insert(N);
    AuxState aux(build_rule(cfg.method, cfg.alpha, run.L), 1, run.dt);
    const double f0 = fn.f(0.0);
    aux.set_initial(std::span<const double>(&f0, 1));
    double last_rel = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
      const double t = static_cast<double>(n) * run.dt;
      const double fn_t = fn.f(t);
      const std::span<const double> fv(&fn_t, 1);
      if (sample_steps.count(n)) {
        const double numeric = aux.caputo_apply(fv)[0];
        const double reference = fn.caputo(t);
        const double rel = relative_error(numeric, reference);
        table.rows.push_back({static_cast<double>(run.L), run.dt, t, numeric, reference,
                              std::abs(numeric - reference), rel});
        last_rel = rel;
      }
      aux.psi_step(fv);
    }
    res.summary.push_back("L=" + std::to_string(run.L) + " dt=" + fmt(run.dt) +
                          ": relative error at t=" + fmt(cfg.T) + " is " + fmt(last_rel));
  }
  res.tables.push_back(std::move(table));
  return res;
}

ExperimentResult run_psi_stability(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto& blk = cfg.psi_stability;
  const TestFunction fn = make_test_function(blk.function, cfg.alpha);
  std::vector<double> dts = blk.dts;
  if (dts.empty()) dts.push_back(cfg.dt);
  const QuadratureRule rule = build_rule(cfg.method, cfg.alpha, cfg.L);
  ExperimentResult res;
  CsvTable table{"psi_stability", {"dt", "n", "t", "max_abs_discrepancy"}, {}};
  for (double dt : dts) {
    const std::size_t N = steps_of(cfg.T, dt);
    std::set<std::size_t> sample_steps;
    for (std::size_t i = 0; i <= blk.samples; ++i) {
      const double e = static_cast<double>(i) / static_cast<double>(blk.samples);
      sample_steps.insert(static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(N), e))));
    }
    AuxState aux(rule, 1, dt);
    const double f0 = fn.f(0.0);
    aux.set_initial(std::span<const double>(&f0, 1));
    double worst = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
      const double t = static_cast<double>(n) * dt;
      const double fv = fn.f(t);
      aux.psi_step(std::span<const double>(&fv, 1));
      if (!sample_steps.count(n)) continue;
      const std::vector<double> oracle = psi_fulldomain_oracle(rule, fn.df, t, blk.panels);
      double mx = 0.0;
      for (std::size_t j = 0; j < rule.size(); ++j) mx = std::max(mx, std::abs(aux.psi_row(j)[0] - oracle[j]));
      table.rows.push_back({dt, static_cast<double>(n), t, mx});
      worst = std::max(worst, mx);
    }
    res.summary.push_back("dt=" + fmt(dt) + ": max discrepancy over " + std::to_string(N) + " steps is " +
                          fmt(worst));
  }
  res.tables.push_back(std::move(table));
  return res;
}

ExperimentResult run_toy_pde(const ExperimentConfig& cfg) {
  cfg.validate();
  ToyProblemParams p;
  p.k = cfg.toy_pde.k;
  p.c = cfg.toy_pde.c;
  p.alpha = cfg.alpha;
  p.K = cfg.K;
  p.L = cfg.L;
  p.dt = cfg.dt;
  p.T = cfg.T;
  p.method = cfg.method;
  const std::size_t N = p.step_count();
  const std::size_t G = cfg.toy_pde.grid;
  for (std::size_t i = 0; i < G; ++i)
    p.snapshot_steps.push_back((i * N + (G - 1) / 2) / (G - 1));
  const SimulationOutput out = solve_toy_interval(p);
  ExperimentResult res;
  CsvTable table{"toy_pde", {"t", "x", "numeric", "reference", "abs_err", "rel_err"}, {}};
  double worst = 0.0;
  for (std::size_t s = 0; s < out.steps.size(); ++s) {
    const CoeffVec c{JacobiBasis::legendre(), out.snapshots[s]};
    const double t = out.times[s];
    for (std::size_t j = 0; j < G; ++j) {
      const double x = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(G - 1);
      const double numeric = synth(c, x);
      const double reference = toy_reference(p, t, x);
      const double rel = relative_error(numeric, reference);
      table.rows.push_back({t, x, numeric, reference, std::abs(numeric - reference), rel});
      if (!std::isnan(rel)) worst = std::max(worst, rel);
    }
  }
  res.summary.push_back("max relative error over the grid: " + fmt(worst));
  res.tables.push_back(std::move(table));
  return res;
}

ExperimentResult run_disk_wave(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto& blk = cfg.disk_wave;
  DiskWaveParams p;
  p.c0 = blk.c0;
  p.tau = blk.tau;
  p.alpha = cfg.alpha;
  p.K = cfg.K;
  p.L = cfg.L;
  p.dt = cfg.dt;
  p.T = cfg.T;
  p.method = cfg.method;
  p.decimation = blk.decimation;
  p.unscaled_psi_term = blk.unscaled_psi_term;
  if (blk.initial == "dipole") {
    p.initial_displacement = [](double x, double y) {
      const double w = 1.0 - x * x - y * y;
      return 4.0 * y * w * w;
    };
  } else if (blk.initial == "bump") {
    p.initial_displacement = [](double x, double y) {
      return (1.0 - x * x - y * y) * std::exp(-20.0 * ((x - 0.3) * (x - 0.3) + y * y));
    };
  } else {
    p.initial_displacement = [](double, double) { return 0.0; };
  }
  p.initial_velocity = [](double, double) { return 0.0; };

  const std::size_t N = p.step_count();
  std::set<std::size_t> snapshot_steps;
  const std::size_t S = blk.snapshot_count;
  for (std::size_t i = 0; i < S; ++i) snapshot_steps.insert(S == 1 ? N : (i * N + (S - 1) / 2) / (S - 1));
  std::vector<std::pair<double, DiskCoeffs>> snapshots;
  SensorReadout sensors(circle_sensors(blk.sensor_count, blk.sensor_radius), blk.decimation);
  const DiskObserver observer = [&](std::size_t n, double t, const DiskCoeffs& c) {
    sensors.observe(n, t, c);
    if (snapshot_steps.count(n)) snapshots.emplace_back(t, c);
  };
  const SimulationOutput out = solve_disk_wave(p, observer);

  ExperimentResult res;
  const DiskBasisTag basis = DiskBasisTag::weighted(1.0);
  CsvTable field{"disk_field", {"t", "x", "y", "value"}, {}};
  const std::size_t G = blk.grid;
  for (const auto& [t, c] : snapshots) {
    for (std::size_t i = 0; i < G; ++i) {
      const double y = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(G - 1);
      for (std::size_t j = 0; j < G; ++j) {
        const double x = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(G - 1);
        const double v = x * x + y * y <= 1.0 ? disk_synth(c, basis, x, y) : kNaN;
        field.rows.push_back({t, x, y, v});
      }
    }
  }

  CsvTable trace{"disk_sensors", {"t"}, {}};
  for (std::size_t s = 0; s < blk.sensor_count; ++s) trace.header.push_back("s" + std::to_string(s + 1));
  for (std::size_t i = 0; i < sensors.trace().times.size(); ++i) {
    std::vector<double> row{sensors.trace().times[i]};
    const auto& r = sensors.trace().readings[i];
    row.insert(row.end(), r.begin(), r.end());
    trace.rows.push_back(std::move(row));
  }

  CsvTable decay{"disk_coeff_decay", {"degree", "max_abs_coeff"}, {}};
  DiskCoeffs final_coeffs(1.0, p.K);
  std::copy(out.snapshots.back().begin(), out.snapshots.back().end(), final_coeffs.flat().begin());
  const int Ki = static_cast<int>(p.K);
  for (std::size_t l = 0; l <= p.K; ++l) {
    double mx = 0.0;
    for (int m = -static_cast<int>(l); m <= static_cast<int>(l) && m <= Ki; m += 2)
      mx = std::max(mx, std::abs(final_coeffs.coeff(l, m)));
    decay.rows.push_back({static_cast<double>(l), mx});
  }

  CsvTable diag{"disk_diagnostics", {"step", "t", "max_abs_coeff", "boundary_residual"}, {}};
  double bmax = 0.0;
  for (std::size_t i = 0; i < out.steps.size(); ++i) {
    diag.rows.push_back({static_cast<double>(out.steps[i]), out.times[i], out.max_abs_coeff[i],
                         out.boundary_residual[i]});
    bmax = std::max(bmax, out.boundary_residual[i]);
  }

  res.summary.push_back("steps: " + std::to_string(N) + ", final max |coeff|: " + fmt(out.max_abs_coeff.back()) +
                        ", max boundary residual: " + fmt(bmax));
  res.tables.push_back(std::move(field));
  res.tables.push_back(std::move(trace));
  res.tables.push_back(std::move(decay));
  res.tables.push_back(std::move(diag));
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::CaputoDirect: return run_caputo_direct(cfg);
    case ExperimentKind::PsiStability: return run_psi_stability(cfg);
    case ExperimentKind::ToyPde: return run_toy_pde(cfg);
    case ExperimentKind::DiskWave: return run_disk_wave(cfg);
  }
  throw ConfigError("unknown experiment");
}

std::vector<std::filesystem::path> write_result(const ExperimentResult& result, const ExperimentConfig& cfg,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string stamp = config_stamp(cfg);
  std::vector<std::filesystem::path> paths;
  for (const CsvTable& t : result.tables) {
    paths.push_back(dir / (t.name + ".csv"));
    write_csv(paths.back(), t, stamp);
  }
  return paths;
}

}  // namespace fracspec
