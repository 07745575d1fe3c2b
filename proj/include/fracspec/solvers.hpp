#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fracspec/banded.hpp"
#include "fracspec/caputo.hpp"
#include "fracspec/disk.hpp"
#include "fracspec/quadrature.hpp"

namespace fracspec {

/// LU factorization with partial pivoting of a square banded matrix. Fill-in
/// widens the upper band by the lower bandwidth. Border rows are ignored.
class BandedLU {
public:
  BandedLU() = default;
  /// Throws SingularSystemError with the failing pivot index.
  explicit BandedLU(const BandedOp& A);

  std::size_t size() const noexcept { return n_; }
  std::vector<double> solve(std::span<const double> rhs) const;
  void solve_in_place(std::span<double> x) const;

private:
  // Working entry (i, j), stored for i - lower <= j <= i + upper + lower.
  double& w(std::size_t i, std::size_t j) { return lu_[i * width_ + (j + lower_ - i)]; }
  double w(std::size_t i, std::size_t j) const { return lu_[i * width_ + (j + lower_ - i)]; }

  std::size_t n_ = 0;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;  // of U, including fill-in
  std::size_t width_ = 0;
  std::vector<double> lu_;
  std::vector<double> mult_;
  std::vector<std::size_t> piv_;
};

/// Solver for a square bordered-banded system: nb dense rows on top of a
/// banded block. The band part restricted to columns nb.. is factored by
/// BandedLU and the first nb unknowns are recovered from the Schur complement.
/// Factor once, solve many times.
class BorderedBandedSolver {
public:
  explicit BorderedBandedSolver(const BandedOp& op);

  std::vector<double> solve(std::span<const double> rhs) const;

private:
  std::size_t n_ = 0;
  std::size_t nb_ = 0;
  BandedLU band_lu_;
  std::vector<double> border_tail_;  // nb x (n - nb), border columns nb..
  std::vector<double> z_;            // (n - nb) x nb, R2^{-1} R1, column-major
  std::vector<double> schur_;        // nb x nb, LU with pivots in schur_piv_
  std::vector<std::size_t> schur_piv_;
};

/// One-shot solve of op x = rhs.
std::vector<double> bordered_banded_solve(const BandedOp& op, std::span<const double> rhs);

/// Sampled trajectory of a time-stepping run.
struct SimulationOutput {
  std::vector<std::size_t> steps;
  std::vector<double> times;
  std::vector<std::vector<double>> snapshots;  // coefficient vectors at `steps`
  std::vector<double> max_abs_coeff;
  std::vector<double> boundary_residual;
};

/// k df/dx + c D^alpha f = e^x g(t) on [-1, 1] with g = 1 for t > 0, f(0, x) = 0
/// and the Dirichlet value of the reference solution at x = -1.
struct ToyProblemParams {
  double k = 10.0;
  double c = 100.0;
  double alpha = 0.5;
  std::size_t K = 40;
  std::size_t L = 50;
  double dt = 1.0 / 16384.0;
  double T = 1.0;
  QuadMethod method = QuadMethod::BirkSong;
  std::size_t decimation = 100;
  /// If non-empty, snapshots are taken at exactly these steps instead.
  std::vector<std::size_t> snapshot_steps;

  void validate() const;
  std::size_t step_count() const;
};

/// (e^x / k)(1 - E_{alpha,1}(-k t^alpha / c)).
double toy_reference(const ToyProblemParams& p, double t, double x);

/// Snapshots are Legendre coefficients of f; the boundary residual is
/// |f(t, -1) - reference(t, -1)|.
SimulationOutput solve_toy_interval(const ToyProblemParams& params);

/// Step-by-step driver for the interval problem.
class ToySolver {
public:
  explicit ToySolver(const ToyProblemParams& params);

  void step();
  std::size_t step_index() const noexcept { return aux_.step_count(); }
  double time() const noexcept { return static_cast<double>(step_index()) * params_.dt; }
  std::span<const double> coeffs() const noexcept { return f_; }
  const AuxState& aux() const noexcept { return aux_; }
  /// AuxState floats plus the current coefficient vector.
  std::size_t state_float_count() const noexcept { return aux_.state_float_count() + f_.size(); }

private:
  ToyProblemParams params_;
  AuxState aux_;
  BandedOp conversion_;
  std::vector<double> forcing_;
  std::vector<double> f_;
  std::vector<double> work_;
  double sigma_ = 0.0;
  BorderedBandedSolver solver_;
};

/// (1/c0^2) f_tt - Laplacian f + tau D^alpha f = 0 on the unit disk, zero
/// Dirichlet data, solved in the weighted Zernike(1) basis.
struct DiskWaveParams {
  double c0 = 100.0;
  double tau = 1.0;
  double alpha = 0.5;
  std::size_t K = 60;
  std::size_t L = 50;
  double dt = 1.0 / 16384.0;
  double T = 10000.0 / 16384.0;
  QuadMethod method = QuadMethod::BirkSong;
  std::size_t decimation = 100;
  /// Drop the dt factor on the psi term (the scheme as it is often printed).
  bool unscaled_psi_term = false;
  std::size_t boundary_points = 50;
  std::function<double(double, double)> initial_displacement;
  std::function<double(double, double)> initial_velocity;

  void validate() const;
  std::size_t step_count() const;
};

/// Per-step observer: (step, time, coefficients in WeightedZernike(1)).
using DiskObserver = std::function<void(std::size_t, double, const DiskCoeffs&)>;

/// Step-by-step driver for the disk wave scheme.
class DiskWaveSolver {
public:
  DiskWaveSolver(const DiskWaveParams& params, const DiskCoeffs& f0, const DiskCoeffs& v0);

  void step();
  std::size_t step_index() const noexcept { return n_; }
  double time() const noexcept { return static_cast<double>(n_) * params_.dt; }
  const DiskCoeffs& coeffs() const noexcept { return f_; }
  const AuxState& aux() const noexcept { return aux_; }

  /// Left-hand operator of mode m as a banded matrix.
  const BandedOp& lhs(int m) const;
  /// Scalar multiplying C_m on the left-hand side.
  double lhs_conversion_scale() const noexcept { return lhs_scale_; }

  /// AuxState floats plus f^n and f^{n-2}; f^{n-1} lives in the AuxState.
  std::size_t state_float_count() const noexcept {
    return aux_.state_float_count() + f_.size() + f_prev2_.size();
  }

private:
  DiskWaveParams params_;
  std::vector<std::vector<double>> lap_;
  std::vector<BandedOp> conv_;
  std::vector<BandedOp> lhs_;
  std::vector<BandedLU> lu_;
  AuxState aux_;
  DiskCoeffs f_;
  std::vector<double> f_prev2_;
  std::vector<double> work_;
  std::size_t n_ = 0;
  double sigma_ = 0.0;
  double lhs_scale_ = 0.0;
  double rhs_scale_ = 0.0;
  double psi_scale_ = 0.0;
};

/// Runs the scheme to T; snapshots every `decimation` steps and at the end,
/// with the boundary residual max |f| over `boundary_points` boundary points.
/// The observer, if set, sees every step including step 0.
SimulationOutput solve_disk_wave(const DiskWaveParams& params, const DiskObserver& observer = {});

/// Largest |f| over n equispaced points of the unit circle, weighted Zernike(1) basis.
double disk_boundary_residual(const DiskCoeffs& c, std::size_t n);

using SensorPosition = std::pair<double, double>;

/// `count` sensors equispaced in angle on the circle of the given radius.
std::vector<SensorPosition> circle_sensors(std::size_t count, double radius);

struct SensorTrace {
  std::vector<double> times;
  std::vector<std::vector<double>> readings;  // readings[i][p]: sensor p at times[i]
};

/// Collects sensor values every `every` steps; usable as a DiskObserver.
/// Sensors must lie in the closed unit disk (r = 1 reads exactly zero).
class SensorReadout {
public:
  SensorReadout(std::vector<SensorPosition> sensors, std::size_t every);

  void observe(std::size_t step, double t, const DiskCoeffs& c);
  const SensorTrace& trace() const noexcept { return trace_; }
  const std::vector<SensorPosition>& sensors() const noexcept { return sensors_; }

private:
  std::vector<SensorPosition> sensors_;
  std::size_t every_;
  SensorTrace trace_;
};

enum class MemoryScheme { CaputoOnly, Wave };

/// Floats kept across steps: L(2 + K) + 2K for the Caputo term alone, and
/// L(2 + K) + 3K for the wave scheme, whose f^{n-1} is shared with the Caputo state.
std::size_t memory_report(std::size_t K, std::size_t L, MemoryScheme scheme);

}  // namespace fracspec
