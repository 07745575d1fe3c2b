#include "fracspec/caputo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracspec {

double one_minus_exp_over(double z) {
  if (z == 0.0) return 1.0;
  return -std::expm1(-z) / z;
}

AuxState::AuxState(QuadratureRule rule, std::size_t K, double dt)
    : rule_(std::move(rule)), K_(K), dt_(dt), psi_(rule_.size() * K, 0.0), f_prev_(K, 0.0) {
  if (!(dt > 0.0)) throw std::invalid_argument("AuxState: dt must be positive");
  if (K == 0) throw std::invalid_argument("AuxState: K must be positive");
  if (rule_.size() == 0 || rule_.A.size() != rule_.s.size())
    throw std::invalid_argument("AuxState: malformed quadrature rule");
}

std::span<const double> AuxState::psi_row(std::size_t j) const {
  return std::span<const double>(psi_).subspan(j * K_, K_);
}

void AuxState::check_length(std::span<const double> v) const {
  if (v.size() != K_) throw std::invalid_argument("AuxState: coefficient vector length mismatch");
}

void AuxState::set_initial(std::span<const double> f0) {
  check_length(f0);
  if (n_ != 0) throw std::logic_error("AuxState::set_initial after stepping");
  std::copy(f0.begin(), f0.end(), f_prev_.begin());
}

void AuxState::psi_step(std::span<const double> f_new) {
  check_length(f_new);
  const std::size_t L = rule_.size();
  for (std::size_t j = 0; j < L; ++j) {
    const double z = rule_.s[j] * rule_.s[j] * dt_;
    const double decay = std::exp(-z);
    const double gain = one_minus_exp_over(z);
    double* row = psi_.data() + j * K_;
    for (std::size_t k = 0; k < K_; ++k) row[k] = decay * row[k] + gain * (f_new[k] - f_prev_[k]);
  }
  std::copy(f_new.begin(), f_new.end(), f_prev_.begin());
  ++n_;
}

std::vector<double> AuxState::history_term() const {
  std::vector<double> out(K_, 0.0);
  const std::size_t L = rule_.size();
  for (std::size_t j = 0; j < L; ++j) {
    const double weight = rule_.A[j] * std::exp(-rule_.s[j] * rule_.s[j] * dt_);
    const double* row = psi_.data() + j * K_;
    for (std::size_t k = 0; k < K_; ++k) out[k] += weight * row[k];
  }
  return out;
}

double AuxState::scalar_coeff() const { return caputo_scalar_coeff(rule_, dt_); }

std::vector<double> AuxState::caputo_apply(std::span<const double> f_new) const {
  check_length(f_new);
  std::vector<double> out = history_term();
  const double sigma = scalar_coeff();
  for (std::size_t k = 0; k < K_; ++k) out[k] += sigma * (f_new[k] - f_prev_[k]);
  return out;
}

std::size_t AuxState::state_float_count() const noexcept {
  return psi_.size() + f_prev_.size() + rule_.A.size() + rule_.s.size();
}

std::size_t AuxState::state_bytes() const noexcept {
  return sizeof(double) *
         (psi_.capacity() + f_prev_.capacity() + rule_.A.capacity() + rule_.s.capacity());
}

double caputo_scalar_coeff(const QuadratureRule& rule, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("caputo_scalar_coeff: dt must be positive");
  double sigma = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j)
    sigma += rule.A[j] * one_minus_exp_over(rule.s[j] * rule.s[j] * dt);
  return sigma;
}

std::vector<double> psi_fulldomain_oracle(const QuadratureRule& rule,
                                          const std::function<double(double)>& f_deriv, double t,
                                          std::size_t panels) {
  if (!(t > 0.0)) throw std::invalid_argument("psi_fulldomain_oracle: t must be positive");
  if (panels == 0) throw std::invalid_argument("psi_fulldomain_oracle: need at least one panel");
  static const GaussRule gl = gauss_legendre(16);
  std::vector<double> psi(rule.size(), 0.0);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double rate = rule.s[j] * rule.s[j];
    const double u_max = std::min(t, 50.0 / rate);
    const double width = u_max / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double u0 = width * static_cast<double>(p);
      double panel = 0.0;
      for (std::size_t q = 0; q < gl.size(); ++q) {
        const double u = u0 + 0.5 * width * (gl.nodes[q] + 1.0);
        panel += gl.weights[q] * std::exp(-rate * u) * f_deriv(t - u);
      }
      sum += 0.5 * width * panel;
    }
    psi[j] = sum;
  }
  return psi;
}

double caputo_direct_oracle(const std::function<double(double)>& f_deriv, double alpha, double t) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("caputo_direct_oracle: alpha must lie in (0,1)");
  if (!(t > 0.0)) throw std::invalid_argument("caputo_direct_oracle: t must be positive");
  // u = t - s = t (1 + x)/2, weight (1 + x)^{-alpha}.
  static thread_local double cached_alpha = -1.0;
  static thread_local GaussRule rule;
  if (cached_alpha != alpha) {
    rule = gauss_jacobi(64, 0.0, -alpha);
    cached_alpha = alpha;
  }
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double u = 0.5 * t * (rule.nodes[q] + 1.0);
    sum += rule.weights[q] * f_deriv(t - u);
  }
  return std::pow(0.5 * t, 1.0 - alpha) * sum / std::tgamma(1.0 - alpha);
}

}  // namespace fracspec
