#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fracspec {

/// Weight function of a Gauss rule: e^{-x} on (0,inf) or (1-x)^a (1+x)^b on (-1,1).
struct WeightFamily {
  enum class Kind { Laguerre, Jacobi };

  Kind kind = Kind::Jacobi;
  double a = 0.0;
  double b = 0.0;

  static WeightFamily laguerre() { return {Kind::Laguerre, 0.0, 0.0}; }
  static WeightFamily jacobi(double a, double b) { return {Kind::Jacobi, a, b}; }

  /// Total mass of the weight function.
  double mass() const;
};

/// L-point Gauss rule. Weights are unnormalized (they sum to the weight mass).
///
/// `log_weights` carries the natural logarithm of every weight; for large
/// Laguerre rules the trailing weights underflow double precision while
/// products such as e^{p_j} * weight_j stay representable.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;
  /// nodes[j] + node_tails[j] is node j to extended precision.
  std::vector<double> node_tails;
  WeightFamily family;

  std::size_t size() const noexcept { return nodes.size(); }

  /// Sum of w_j * g(x_j).
  template <typename F>
  double integrate(F&& g) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) sum += weights[j] * g(nodes[j]);
    return sum;
  }
};

GaussRule gauss_laguerre(std::size_t L);
GaussRule gauss_jacobi(std::size_t L, double a, double b);
inline GaussRule gauss_legendre(std::size_t L) { return gauss_jacobi(L, 0.0, 0.0); }

/// Sum-of-exponentials quadrature for the Caputo kernel.
enum class QuadMethod { YuanAgrawal, Diethelm, BirkSong };

std::string_view to_string(QuadMethod method);
/// Accepts "yuan-agrawal", "diethelm", "birk-song" (also with underscores). Throws ConfigError.
QuadMethod parse_quad_method(std::string_view name);

/// Shifted exponent 2*alpha - 2*ceil(alpha) + 1, in (-1, 1) for non-integer alpha.
double shifted_exponent(double alpha);

/// The pairs (A_j, s_j) such that D^alpha f(t) ~ sum_j A_j psi_j(t) where
/// psi_j(t) = int_0^t exp(-s_j^2 (t - tau)) f'(tau) dtau.
struct QuadratureRule {
  QuadMethod method = QuadMethod::BirkSong;
  double alpha = 0.5;
  double alpha_bar = 0.0;
  std::vector<double> A;
  std::vector<double> s;

  std::size_t size() const noexcept { return A.size(); }
};

/// Builds the rule for alpha in (0,1) with L nodes. Throws std::invalid_argument
/// for L == 0 or alpha outside (0,1).
QuadratureRule build_rule(QuadMethod method, double alpha, std::size_t L);

}  // namespace fracspec
