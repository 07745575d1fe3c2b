#include "fracspec/specialfns.hpp"

#include <cmath>
#include <stdexcept>

#include "fracspec/error.hpp"

namespace fracspec {

namespace {
constexpr int kMaxTerms = 10000;
}

double mittag_leffler(MLParams params, double z) {
  if (!(params.alpha > 0.0) || !(params.beta > 0.0))
    throw std::invalid_argument("mittag_leffler: alpha and beta must be positive");
  if (!(std::abs(z) <= kMittagLefflerMaxArg))
    throw std::invalid_argument("mittag_leffler: |z| outside the supported range");

  if (z == 0.0) return 1.0 / std::tgamma(params.beta);

  // Terms in log form: Gamma overflows long before the series has converged.
  const long double log_abs_z = std::log(std::abs(static_cast<long double>(z)));
  const double peak = std::pow(std::abs(z), 1.0 / params.alpha);
  long double sum = 0.0L;
  for (int k = 0; k < kMaxTerms; ++k) {
    const long double arg = static_cast<long double>(params.alpha) * k + params.beta;
    const long double magnitude = std::exp(k * log_abs_z - std::lgamma(arg));
    const long double term = (z < 0.0 && (k % 2 == 1)) ? -magnitude : magnitude;
    sum += term;
    // Terms shrink monotonically once alpha k > |z|^{1/alpha}.
    const bool past_peak = params.alpha * k > peak;
    if (past_peak && std::abs(term) < 1e-16L * (1.0L + std::abs(sum)))
      return static_cast<double>(sum);
  }
  throw NonConvergenceError("mittag_leffler: series did not converge within 10000 terms");
}

double erf(double x) { return std::erf(x); }

double lgamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("lgamma: argument must be positive");
  return std::lgamma(x);
}

}  // namespace fracspec
