#pragma once

// Independent reference computations used only by the tests.

#include <cstddef>
#include <vector>

namespace oracle {

struct NodesWeights {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
NodesWeights golub_welsch_laguerre(std::size_t L);
NodesWeights golub_welsch_jacobi(std::size_t L, double a, double b);

/// Moments m_k = int x^k w(x) dx, k = 0..kmax, in 50-digit arithmetic.
std::vector<double> laguerre_moments(std::size_t kmax);
std::vector<double> jacobi_moments(std::size_t kmax, double a, double b);

/// sum_j w_j x_j^k in 50-digit arithmetic.
double quadrature_moment(const std::vector<double>& nodes, const std::vector<double>& weights, std::size_t k);

/// Mittag-Leffler series with `terms` terms in 50-digit arithmetic.
double mittag_leffler_series(double alpha, double beta, double z, std::size_t terms = 200);

/// Maclaurin series of erf in 50-digit arithmetic (|x| <= 6).
double erf_series(double x);

/// Dense solve with partial pivoting; A row-major n x n.
std::vector<double> dense_solve(const std::vector<double>& A, const std::vector<double>& b);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace oracle
