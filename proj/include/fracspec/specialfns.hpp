#pragma once

namespace fracspec {

/// Parameters of the two-parameter Mittag-Leffler function E_{alpha,beta}.
struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Largest |z| accepted by mittag_leffler. The direct series is summed, so
/// accuracy degrades for large negative arguments through cancellation.
inline constexpr double kMittagLefflerMaxArg = 50.0;

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta) by direct summation.
///
/// Terms are added until |term| < 1e-16 (1 + |partial sum|), at most 10000 of
/// them. Throws std::invalid_argument for non-positive parameters or
/// |z| > kMittagLefflerMaxArg, NonConvergenceError if the term cap is reached.
double mittag_leffler(MLParams params, double z);

/// Error function.
double erf(double x);

/// log Gamma(x) for x > 0; throws std::invalid_argument otherwise.
double lgamma(double x);

}  // namespace fracspec
