#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracspec/quadrature.hpp"

namespace fracspec {

/// (1 - e^{-z}) / z, accurate for all z >= 0 (limit 1 at z = 0).
double one_minus_exp_over(double z);

/// The complete memory of the history-free Caputo approximation.
///
/// Row j of `psi` holds the coefficients of the auxiliary function
///   psi_j(t) = int_0^t exp(-s_j^2 (t - tau)) f'(tau) dtau
/// in whatever basis the caller works in; `f_prev` holds the coefficients of
/// f at the previous step. Storage is fixed at construction: L*K + K floats
/// plus the 2L rule parameters, whatever the number of steps taken.
///
/// Single writer: psi_step mutates in place.
class AuxState {
public:
  AuxState(QuadratureRule rule, std::size_t K, double dt);

  std::size_t L() const noexcept { return rule_.size(); }
  std::size_t K() const noexcept { return K_; }
  double dt() const noexcept { return dt_; }
  std::size_t step_count() const noexcept { return n_; }
  const QuadratureRule& rule() const noexcept { return rule_; }

  std::span<const double> psi_row(std::size_t j) const;
  std::span<const double> f_prev() const noexcept { return f_prev_; }

  /// Sets f at t = 0. Only allowed before the first step.
  void set_initial(std::span<const double> f0);

  /// psi_j <- e^{-s_j^2 dt} psi_j + (1 - e^{-s_j^2 dt})/(s_j^2 dt) (f_new - f_prev);
  /// then f_prev <- f_new and the step counter advances.
  void psi_step(std::span<const double> f_new);

  /// Caputo derivative at the next step for the candidate f_new, without
  /// mutating the state: history_term() + scalar_coeff() * (f_new - f_prev).
  std::vector<double> caputo_apply(std::span<const double> f_new) const;

  /// sum_j A_j e^{-s_j^2 dt} psi_j (the part independent of f_new).
  std::vector<double> history_term() const;

  /// sum_j A_j (1 - e^{-s_j^2 dt})/(s_j^2 dt).
  double scalar_coeff() const;

  /// Floats held by the state: psi, f_prev and the (A, s) arrays.
  std::size_t state_float_count() const noexcept;
  /// Bytes reserved for those floats (capacity based).
  std::size_t state_bytes() const noexcept;

private:
  void check_length(std::span<const double> v) const;

  QuadratureRule rule_;
  std::size_t K_;
  double dt_;
  std::size_t n_ = 0;
  std::vector<double> psi_;
  std::vector<double> f_prev_;
};

/// The scalar multiplying (f^n - f^{n-1}) in the Caputo approximation.
double caputo_scalar_coeff(const QuadratureRule& rule, double dt);

/// psi_j(t) for every node by composite 16-point Gauss-Legendre quadrature of
/// int_0^t exp(-s_j^2 u) f'(t - u) du. `panels` equal panels cover
/// [0, min(t, 50/s_j^2)]; the kernel is below e^{-50} beyond that.
std::vector<double> psi_fulldomain_oracle(const QuadratureRule& rule,
                                          const std::function<double(double)>& f_deriv, double t,
                                          std::size_t panels);

/// Caputo derivative of order alpha in (0,1) straight from its singular
/// integral, with the (t - s)^{-alpha} factor absorbed into a 64-point
/// Gauss-Jacobi weight.
double caputo_direct_oracle(const std::function<double(double)>& f_deriv, double alpha, double t);

}  // namespace fracspec
