#include "fracspec/orthopoly.hpp"

#include <cmath>
#include <stdexcept>

#include "fracspec/quadrature.hpp"

namespace fracspec {

namespace {

// Parameter increment that must be exactly 0 or 1.
int parameter_step(double from, double to) {
  const double d = to - from;
  if (std::abs(d) < 1e-14) return 0;
  if (std::abs(d - 1.0) < 1e-14) return 1;
  throw std::invalid_argument("conversion_op: each Jacobi parameter may be raised by 0 or 1");
}

// P^{(a,b)} -> P^{(a+1,b)} (raise_a) or P^{(a,b+1)} (otherwise).
BandedOp raise_one(JacobiBasis from, bool raise_a, std::size_t K) {
  const double a = from.a, b = from.b;
  BandedOp op(K, K, 0, 1);
  if (K == 0) return op;
  op.at(0, 0) = 1.0;
  for (std::size_t k = 1; k < K; ++k) {
    const double n = static_cast<double>(k);
    const double denom = 2.0 * n + a + b + 1.0;
    op.at(k, k) = (n + a + b + 1.0) / denom;
    op.at(k - 1, k) = raise_a ? -(n + b) / denom : (n + a) / denom;
  }
  return op;
}

}  // namespace

JacobiRecurrence jacobi_recurrence(JacobiBasis basis, std::size_t n) {
  const double a = basis.a, b = basis.b;
  if (n == 0) return {0.5 * (a + b + 2.0), 0.5 * (a - b), 0.0};
  const double k = static_cast<double>(n);
  const double s = 2.0 * k + a + b;
  const double denom = 2.0 * (k + 1.0) * (k + a + b + 1.0);
  return {
      (s + 1.0) * (s + 2.0) / denom,
      (a * a - b * b) * (s + 1.0) / (denom * s),
      (k + a) * (k + b) * (s + 2.0) / ((k + 1.0) * (k + a + b + 1.0) * s),
  };
}

double jacobi_eval(JacobiBasis basis, std::size_t n, double x) {
  double prev = 0.0, cur = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto [A, B, C] = jacobi_recurrence(basis, k);
    const double next = (A * x + B) * cur - C * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_norm_sq(JacobiBasis basis, std::size_t n) {
  const double a = basis.a, b = basis.b;
  if (n == 0) return WeightFamily::jacobi(a, b).mass();
  const double k = static_cast<double>(n);
  const double log_h = (a + b + 1.0) * std::log(2.0) - std::log(2.0 * k + a + b + 1.0) +
                       std::lgamma(k + a + 1.0) + std::lgamma(k + b + 1.0) -
                       std::lgamma(k + a + b + 1.0) - std::lgamma(k + 1.0);
  return std::exp(log_h);
}

BandedOp diff_op(double a, double b, std::size_t K) {
  BandedOp op(K, K, 0, 1);
  for (std::size_t k = 1; k < K; ++k) op.at(k - 1, k) = 0.5 * (static_cast<double>(k) + a + b + 1.0);
  return op;
}

BandedOp conversion_op(JacobiBasis from, JacobiBasis to, std::size_t K) {
  const int da = parameter_step(from.a, to.a);
  const int db = parameter_step(from.b, to.b);
  BandedOp op = BandedOp::identity(K);
  JacobiBasis current = from;
  if (da == 1) {
    op = raise_one(current, true, K).compose(op);
    current.a += 1.0;
  }
  if (db == 1) {
    op = raise_one(current, false, K).compose(op);
    current.b += 1.0;
  }
  return op;
}

CoeffVec analyze(const std::function<double(double)>& f, JacobiBasis basis, std::size_t K) {
  CoeffVec out{basis, std::vector<double>(K, 0.0)};
  if (K == 0) return out;
  const GaussRule rule = gauss_jacobi(K + 8, basis.a, basis.b);
  // Extended-precision recurrence and accumulation: the rounding of these sums
  // sets the noise floor of the trailing coefficients.
  std::vector<long double> acc(K, 0.0L);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const long double x = static_cast<long double>(rule.nodes[j]) + rule.node_tails[j];
    const long double wf = static_cast<long double>(rule.weights[j]) * f(rule.nodes[j]);
    long double prev = 0.0L, cur = 1.0L;
    acc[0] += wf;
    for (std::size_t n = 0; n + 1 < K; ++n) {
      const auto [A, B, C] = jacobi_recurrence(basis, n);
      const long double next = (A * x + B) * cur - C * prev;
      prev = cur;
      cur = next;
      acc[n + 1] += wf * cur;
    }
  }
  for (std::size_t n = 0; n < K; ++n) out.coeffs[n] = static_cast<double>(acc[n] / jacobi_norm_sq(basis, n));
  return out;
}

double synth(const CoeffVec& c, double x) {
  const std::size_t N = c.coeffs.size();
  if (N == 0) return 0.0;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = N; k-- > 0;) {
    const JacobiRecurrence r = jacobi_recurrence(c.basis, k);
    const double C_next = jacobi_recurrence(c.basis, k + 1).C;
    const double bk = c.coeffs[k] + (r.A * x + r.B) * b1 - C_next * b2;
    b2 = b1;
    b1 = bk;
  }
  return b1;
}

std::vector<double> eval_row(JacobiBasis basis, double x, std::size_t K) {
  std::vector<double> row(K);
  if (K == 0) return row;
  double prev = 0.0, cur = 1.0;
  row[0] = 1.0;
  for (std::size_t k = 0; k + 1 < K; ++k) {
    const auto [A, B, C] = jacobi_recurrence(basis, k);
    const double next = (A * x + B) * cur - C * prev;
    prev = cur;
    cur = next;
    row[k + 1] = cur;
  }
  return row;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace fracspec
