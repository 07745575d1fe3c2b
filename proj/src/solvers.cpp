#include "fracspec/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracspec/error.hpp"
#include "fracspec/orthopoly.hpp"
#include "fracspec/specialfns.hpp"

namespace fracspec {

namespace {

std::size_t steps_for(double T, double dt) {
  const double ratio = T / dt;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-6 * std::max(1.0, n))
    throw std::invalid_argument("T must be a positive integer multiple of dt");
  return static_cast<std::size_t>(n);
}

// Dense LU with partial pivoting, in place, for the small Schur complement.
void dense_lu(std::vector<double>& a, std::vector<std::size_t>& piv, std::size_t n,
              std::size_t index_offset) {
  piv.assign(n, 0);
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  const double tiny = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    if (!(std::abs(a[p * n + k]) > tiny))
      throw SingularSystemError(index_offset + k, "bordered system: singular border block");
    piv[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i * n + k] / a[k * n + k];
      a[i * n + k] = m;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= m * a[k * n + j];
    }
  }
}

void dense_lu_solve(const std::vector<double>& a, const std::vector<std::size_t>& piv,
                    std::size_t n, std::span<double> x) {
  for (std::size_t k = 0; k < n; ++k) {
    std::swap(x[k], x[piv[k]]);
    for (std::size_t i = k + 1; i < n; ++i) x[i] -= a[i * n + k] * x[k];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
}

}  // namespace

BandedLU::BandedLU(const BandedOp& A)
    : n_(A.rows()), lower_(A.lower_bandwidth()), upper_(A.upper_bandwidth() + A.lower_bandwidth()) {
  if (A.rows() != A.cols()) throw std::invalid_argument("BandedLU: matrix must be square");
  width_ = lower_ + upper_ + 1;
  lu_.assign(n_ * width_, 0.0);
  mult_.assign(n_ * lower_, 0.0);
  piv_.assign(n_, 0);
  double scale = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > lower_ ? i - lower_ : 0;
    const std::size_t j1 = std::min(n_, i + A.upper_bandwidth() + 1);
    for (std::size_t j = j0; j < j1; ++j) {
      w(i, j) = A(i, j);
      scale = std::max(scale, std::abs(A(i, j)));
    }
  }
  const double tiny = static_cast<double>(n_) * std::numeric_limits<double>::epsilon() * scale;
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t last = std::min(n_ - 1, k + lower_);
    std::size_t p = k;
    for (std::size_t i = k + 1; i <= last; ++i)
      if (std::abs(w(i, k)) > std::abs(w(p, k))) p = i;
    if (!(std::abs(w(p, k)) > tiny)) throw SingularSystemError(k, "banded LU: zero pivot");
    piv_[k] = p;
    const std::size_t jend = std::min(n_ - 1, k + upper_);
    if (p != k)
      for (std::size_t j = k; j <= jend; ++j) std::swap(w(k, j), w(p, j));
    for (std::size_t i = k + 1; i <= last; ++i) {
      const double m = w(i, k) / w(k, k);
      mult_[k * lower_ + (i - k - 1)] = m;
      w(i, k) = 0.0;
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j <= jend; ++j) w(i, j) -= m * w(k, j);
    }
  }
}

void BandedLU::solve_in_place(std::span<double> x) const {
  if (x.size() != n_) throw std::invalid_argument("BandedLU::solve: length mismatch");
  for (std::size_t k = 0; k < n_; ++k) {
    if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
    const std::size_t last = std::min(n_ - 1, k + lower_);
    for (std::size_t i = k + 1; i <= last; ++i) x[i] -= mult_[k * lower_ + (i - k - 1)] * x[k];
  }
  for (std::size_t i = n_; i-- > 0;) {
    double s = x[i];
    const std::size_t jend = std::min(n_ - 1, i + upper_);
    for (std::size_t j = i + 1; j <= jend; ++j) s -= w(i, j) * x[j];
    x[i] = s / w(i, i);
  }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

BorderedBandedSolver::BorderedBandedSolver(const BandedOp& op)
    : n_(op.cols()), nb_(op.border_count()) {
  if (op.total_rows() != n_) throw std::invalid_argument("bordered solve: system must be square");
  const std::size_t nr = n_ - nb_;
  const std::size_t l = op.lower_bandwidth(), u = op.upper_bandwidth();
  // Band rows restricted to the trailing columns: R2(i, j) = R(i, j + nb).
  BandedOp r2(nr, nr, l + nb_, u > nb_ ? u - nb_ : 0);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nr; ++j)
      if (r2.in_band(i, j) && op.in_band(i, j + nb_)) r2.at(i, j) = op(i, j + nb_);
  try {
    band_lu_ = BandedLU(r2);
  } catch (const SingularSystemError& e) {
    throw SingularSystemError(e.pivot() + nb_, "bordered system: singular band block");
  }
  if (nb_ == 0) return;

  z_.assign(nr * nb_, 0.0);
  std::vector<double> col(nr);
  for (std::size_t c = 0; c < nb_; ++c) {
    for (std::size_t i = 0; i < nr; ++i) col[i] = op(i, c);
    band_lu_.solve_in_place(col);
    std::copy(col.begin(), col.end(), z_.begin() + static_cast<std::ptrdiff_t>(c * nr));
  }
  border_tail_.assign(nb_ * nr, 0.0);
  schur_.assign(nb_ * nb_, 0.0);
  for (std::size_t k = 0; k < nb_; ++k) {
    const std::span<const double> row = op.border_row(k);
    std::copy(row.begin() + static_cast<std::ptrdiff_t>(nb_), row.end(),
              border_tail_.begin() + static_cast<std::ptrdiff_t>(k * nr));
    for (std::size_t c = 0; c < nb_; ++c) {
      double s = row[c];
      for (std::size_t j = 0; j < nr; ++j) s -= border_tail_[k * nr + j] * z_[c * nr + j];
      schur_[k * nb_ + c] = s;
    }
  }
  dense_lu(schur_, schur_piv_, nb_, 0);
}

std::vector<double> BorderedBandedSolver::solve(std::span<const double> rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("bordered solve: length mismatch");
  const std::size_t nr = n_ - nb_;
  std::vector<double> x(n_);
  std::span<double> head(x.data(), nb_), tail(x.data() + nb_, nr);
  std::copy(rhs.begin() + static_cast<std::ptrdiff_t>(nb_), rhs.end(), tail.begin());
  band_lu_.solve_in_place(tail);
  if (nb_ == 0) return x;
  for (std::size_t k = 0; k < nb_; ++k) {
    double s = rhs[k];
    for (std::size_t j = 0; j < nr; ++j) s -= border_tail_[k * nr + j] * tail[j];
    head[k] = s;
  }
  dense_lu_solve(schur_, schur_piv_, nb_, head);
  for (std::size_t c = 0; c < nb_; ++c)
    for (std::size_t j = 0; j < nr; ++j) tail[j] -= z_[c * nr + j] * head[c];
  return x;
}

std::vector<double> bordered_banded_solve(const BandedOp& op, std::span<const double> rhs) {
  return BorderedBandedSolver(op).solve(rhs);
}

// ---------------------------------------------------------------------------
// Interval problem

void ToyProblemParams::validate() const {
  if (!(k > 0.0)) throw ConfigError("toy problem: k must be positive");
  if (!(c > 0.0)) throw ConfigError("toy problem: c must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("toy problem: alpha must lie in (0,1)");
  if (K < 2) throw ConfigError("toy problem: K must be at least 2");
  if (L < 1) throw ConfigError("toy problem: L must be at least 1");
  if (!(dt > 0.0)) throw ConfigError("toy problem: dt must be positive");
  if (!(T > 0.0)) throw ConfigError("toy problem: T must be positive");
  if (decimation < 1) throw ConfigError("toy problem: decimation must be at least 1");
  try {
    steps_for(T, dt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("toy problem: ") + e.what());
  }
}

std::size_t ToyProblemParams::step_count() const { return steps_for(T, dt); }

double toy_reference(const ToyProblemParams& p, double t, double x) {
  if (t <= 0.0) return 0.0;
  const double z = -p.k * std::pow(t, p.alpha) / p.c;
  return std::exp(x) / p.k * (1.0 - mittag_leffler(MLParams{p.alpha, 1.0}, z));
}

ToySolver::ToySolver(const ToyProblemParams& params)
    : params_((params.validate(), params)),
      aux_(build_rule(params.method, params.alpha, params.L), params.K, params.dt),
      conversion_(conversion_op(JacobiBasis::legendre(), JacobiBasis{1.0, 1.0}, params.K)),
      forcing_(analyze([](double x) { return std::exp(x); }, JacobiBasis::legendre(), params.K).coeffs),
      f_(params.K, 0.0),
      work_(params.K, 0.0),
      sigma_(aux_.scalar_coeff()),
      solver_([&] {
        const std::size_t K = params.K;
        const BandedOp D = diff_op(0.0, 0.0, K);
        const BandedOp op = D.combine(params.k, conversion_, params.c * sigma_);
        // The last row only carries the truncation tail; the boundary row takes its place on top.
        BandedOp system = op.row_slice(0, K - 1);
        system.add_border_row(eval_row(JacobiBasis::legendre(), -1.0, K));
        return BorderedBandedSolver(system);
      }()) {}

void ToySolver::step() {
  const std::size_t K = params_.K;
  const std::vector<double> hist = aux_.history_term();
  const std::span<const double> prev = aux_.f_prev();
  const double cs = params_.c * sigma_;
  for (std::size_t i = 0; i < K; ++i) work_[i] = forcing_[i] + cs * prev[i] - params_.c * hist[i];
  const std::vector<double> converted = conversion_.apply(work_);
  const double t_next = static_cast<double>(aux_.step_count() + 1) * params_.dt;
  work_[0] = toy_reference(params_, t_next, -1.0);
  std::copy(converted.begin(), converted.end() - 1, work_.begin() + 1);
  f_ = solver_.solve(work_);
  aux_.psi_step(f_);
}

SimulationOutput solve_toy_interval(const ToyProblemParams& params) {
  ToySolver solver(params);
  const std::size_t N = params.step_count();
  std::vector<std::size_t> wanted = params.snapshot_steps;
  std::sort(wanted.begin(), wanted.end());
  SimulationOutput out;
  auto record = [&] {
    const std::span<const double> f = solver.coeffs();
    out.steps.push_back(solver.step_index());
    out.times.push_back(solver.time());
    out.snapshots.emplace_back(f.begin(), f.end());
    double mx = 0.0;
    for (double v : f) mx = std::max(mx, std::abs(v));
    out.max_abs_coeff.push_back(mx);
    const CoeffVec cv{JacobiBasis::legendre(), out.snapshots.back()};
    out.boundary_residual.push_back(std::abs(synth(cv, -1.0) - toy_reference(params, solver.time(), -1.0)));
  };
  auto wants = [&](std::size_t n) {
    if (!wanted.empty()) return std::binary_search(wanted.begin(), wanted.end(), n);
    return n % params.decimation == 0 || n == N;
  };
  if (wants(0)) record();
  for (std::size_t n = 1; n <= N; ++n) {
    solver.step();
    if (wants(n)) record();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Disk wave problem

void DiskWaveParams::validate() const {
  if (!(c0 > 0.0)) throw ConfigError("disk wave: c0 must be positive");
  if (!(tau >= 0.0)) throw ConfigError("disk wave: tau must be non-negative");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("disk wave: alpha must lie in (0,1)");
  if (K < 1) throw ConfigError("disk wave: K must be at least 1");
  if (L < 1) throw ConfigError("disk wave: L must be at least 1");
  if (!(dt > 0.0)) throw ConfigError("disk wave: dt must be positive");
  if (!(T > 0.0)) throw ConfigError("disk wave: T must be positive");
  if (decimation < 1) throw ConfigError("disk wave: decimation must be at least 1");
  if (boundary_points < 1) throw ConfigError("disk wave: boundary_points must be at least 1");
  try {
    steps_for(T, dt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("disk wave: ") + e.what());
  }
}

std::size_t DiskWaveParams::step_count() const { return steps_for(T, dt); }

DiskWaveSolver::DiskWaveSolver(const DiskWaveParams& params, const DiskCoeffs& f0, const DiskCoeffs& v0)
    : params_((params.validate(), params)),
      lap_(disk_laplacian_op(params.K)),
      conv_(disk_conversion_op(params.K)),
      aux_(build_rule(params.method, params.alpha, params.L), f0.size(), params.dt),
      f_(f0),
      f_prev2_(f0.size()),
      work_() {
  if (f0.K() != params.K || v0.K() != params.K || f0.b() != 1.0 || v0.b() != 1.0)
    throw std::invalid_argument("DiskWaveSolver: initial data must be weighted Zernike(1) of degree K");
  const double dt = params.dt;
  const double a = 1.0 / (params.c0 * params.c0 * dt);
  sigma_ = aux_.scalar_coeff();
  lhs_scale_ = a;
  rhs_scale_ = 2.0 * a;
  if (params.tau > 0.0) {
    lhs_scale_ += params.tau * dt * sigma_;
    rhs_scale_ += params.tau * dt * sigma_;
    psi_scale_ = params.unscaled_psi_term ? params.tau : params.tau * dt;
  }
  const int Ki = static_cast<int>(params.K);
  lhs_.reserve(conv_.size());
  lu_.reserve(conv_.size());
  for (int m = -Ki; m <= Ki; ++m) {
    const std::size_t idx = static_cast<std::size_t>(m + Ki);
    const std::size_t Q = lap_[idx].size();
    BandedOp diag(Q, Q, 0, 0);
    for (std::size_t q = 0; q < Q; ++q) diag.at(q, q) = lap_[idx][q];
    lhs_.push_back(conv_[idx].combine(lhs_scale_, diag, -dt));
    try {
      lu_.emplace_back(lhs_.back());
    } catch (const SingularSystemError& e) {
      throw SingularSystemError(e.pivot(), "disk wave: singular system for mode " + std::to_string(m));
    }
  }
  const std::span<const double> f = f0.flat(), v = v0.flat();
  for (std::size_t i = 0; i < f.size(); ++i) f_prev2_[i] = f[i] - dt * v[i];
  aux_.set_initial(f);
  work_.reserve(params.K / 2 + 1);
}

const BandedOp& DiskWaveSolver::lhs(int m) const {
  const int Ki = static_cast<int>(params_.K);
  if (m < -Ki || m > Ki) throw std::out_of_range("DiskWaveSolver::lhs: mode out of range");
  return lhs_[static_cast<std::size_t>(m + Ki)];
}

void DiskWaveSolver::step() {
  const double a = 1.0 / (params_.c0 * params_.c0 * params_.dt);
  std::vector<double> hist;
  if (params_.tau > 0.0) hist = aux_.history_term();
  const std::span<const double> prev = aux_.f_prev();
  const int Ki = static_cast<int>(params_.K);
  for (int m = -Ki; m <= Ki; ++m) {
    const std::size_t idx = static_cast<std::size_t>(m + Ki);
    const std::size_t off = f_.offset(m);
    const std::size_t Q = lap_[idx].size();
    work_.resize(Q);
    for (std::size_t q = 0; q < Q; ++q) {
      double v = rhs_scale_ * prev[off + q] - a * f_prev2_[off + q];
      if (!hist.empty()) v -= psi_scale_ * hist[off + q];
      work_[q] = v;
    }
    std::vector<double> rhs = conv_[idx].apply(work_);
    lu_[idx].solve_in_place(rhs);
    std::copy(rhs.begin(), rhs.end(), f_.block(m).begin());
  }
  std::copy(prev.begin(), prev.end(), f_prev2_.begin());
  aux_.psi_step(f_.flat());
  ++n_;
}

double disk_boundary_residual(const DiskCoeffs& c, std::size_t n) {
  double mx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    mx = std::max(mx, std::abs(disk_synth(c, DiskBasisTag::weighted(1.0), std::cos(theta), std::sin(theta))));
  }
  return mx;
}

SimulationOutput solve_disk_wave(const DiskWaveParams& params, const DiskObserver& observer) {
  params.validate();
  if (!params.initial_displacement) throw ConfigError("disk wave: initial displacement missing");
  const auto zero = [](double, double) { return 0.0; };
  const std::function<double(double, double)> f0 = params.initial_displacement;
  const std::function<double(double, double)> v0 =
      params.initial_velocity ? params.initial_velocity : std::function<double(double, double)>(zero);
  for (std::size_t k = 0; k < params.boundary_points; ++k) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(params.boundary_points);
    const double x = std::cos(theta), y = std::sin(theta);
    if (std::abs(f0(x, y)) > 1e-10 || std::abs(v0(x, y)) > 1e-10)
      throw ConfigError("disk wave: initial data must vanish on the boundary");
  }
  const DiskCoeffs c0 = disk_analyze(f0, DiskBasisTag::weighted(1.0), params.K);
  const DiskCoeffs cv = disk_analyze(v0, DiskBasisTag::weighted(1.0), params.K);
  DiskWaveSolver solver(params, c0, cv);
  const std::size_t N = params.step_count();
  SimulationOutput out;
  auto record = [&] {
    const DiskCoeffs& c = solver.coeffs();
    out.steps.push_back(solver.step_index());
    out.times.push_back(solver.time());
    out.snapshots.emplace_back(c.flat().begin(), c.flat().end());
    out.max_abs_coeff.push_back(c.max_abs());
    out.boundary_residual.push_back(disk_boundary_residual(c, params.boundary_points));
  };
  record();
  if (observer) observer(0, 0.0, solver.coeffs());
  for (std::size_t n = 1; n <= N; ++n) {
    solver.step();
    if (!std::isfinite(solver.coeffs().max_abs()))
      throw NumericalError("disk wave: solution diverged at step " + std::to_string(n));
    if (observer) observer(n, solver.time(), solver.coeffs());
    if (n % params.decimation == 0 || n == N) record();
  }
  return out;
}

std::vector<SensorPosition> circle_sensors(std::size_t count, double radius) {
  std::vector<SensorPosition> out;
  out.reserve(count);
  for (std::size_t p = 0; p < count; ++p) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(count);
    out.emplace_back(radius * std::cos(theta), radius * std::sin(theta));
  }
  return out;
}

SensorReadout::SensorReadout(std::vector<SensorPosition> sensors, std::size_t every)
    : sensors_(std::move(sensors)), every_(every) {
  if (every_ == 0) throw std::invalid_argument("SensorReadout: every must be positive");
  for (const auto& [x, y] : sensors_)
    if (!(x * x + y * y <= 1.0 + 1e-12)) throw std::invalid_argument("SensorReadout: sensor outside the unit disk");
}

void SensorReadout::observe(std::size_t step, double t, const DiskCoeffs& c) {
  if (step % every_ != 0) return;
  std::vector<double> row;
  row.reserve(sensors_.size());
  for (const auto& [x, y] : sensors_) row.push_back(disk_synth(c, DiskBasisTag::weighted(1.0), x, y));
  trace_.times.push_back(t);
  trace_.readings.push_back(std::move(row));
}

std::size_t memory_report(std::size_t K, std::size_t L, MemoryScheme scheme) {
  if (K < 1 || L < 1) throw std::invalid_argument("memory_report: K and L must be positive");
  const std::size_t caputo = L * (2 + K) + 2 * K;
  return scheme == MemoryScheme::CaputoOnly ? caputo : caputo + K;
}

}  // namespace fracspec
