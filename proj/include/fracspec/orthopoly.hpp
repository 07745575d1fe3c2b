#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracspec/banded.hpp"

namespace fracspec {

/// Classical (unnormalized) Jacobi polynomials P_n^{(a,b)} on [-1,1],
/// P_n^{(a,b)}(1) = binomial(n + a, n).
struct JacobiBasis {
  double a = 0.0;
  double b = 0.0;

  static JacobiBasis legendre() { return {0.0, 0.0}; }
  bool operator==(const JacobiBasis&) const = default;
};

/// Truncated expansion sum_n coeffs[n] P_n^{(a,b)}(x).
struct CoeffVec {
  JacobiBasis basis;
  std::vector<double> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
};

/// Recurrence P_{n+1} = (A_n x + B_n) P_n - C_n P_{n-1}.
struct JacobiRecurrence {
  double A;
  double B;
  double C;
};
JacobiRecurrence jacobi_recurrence(JacobiBasis basis, std::size_t n);

/// P_n^{(a,b)}(x) by forward recurrence.
double jacobi_eval(JacobiBasis basis, std::size_t n, double x);

/// Squared norm int_{-1}^{1} P_n(x)^2 (1-x)^a (1+x)^b dx.
double jacobi_norm_sq(JacobiBasis basis, std::size_t n);

/// Derivative operator P^{(a,b)} -> P^{(a+1,b+1)} as a K x K superdiagonal
/// matrix with entry (n-1, n) = (n + a + b + 1)/2.
BandedOp diff_op(double a, double b, std::size_t K);

/// Change of basis P^{from} -> P^{to} (K x K, upper triangular). Each
/// parameter may be raised by 0 or 1; throws std::invalid_argument otherwise.
BandedOp conversion_op(JacobiBasis from, JacobiBasis to, std::size_t K);

/// Coefficients of f by a (K+8)-point Gauss-Jacobi projection.
CoeffVec analyze(const std::function<double(double)>& f, JacobiBasis basis, std::size_t K);

/// Clenshaw evaluation of the expansion at x.
double synth(const CoeffVec& c, double x);

/// Row r with r[n] = P_n(x), n < K, so that dot(r, c) evaluates the expansion at x.
std::vector<double> eval_row(JacobiBasis basis, double x, std::size_t K);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace fracspec
