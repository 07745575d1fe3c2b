#include "fracspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fracspec/error.hpp"

namespace fracspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBig = 1e100;
constexpr int kMaxNewton = 100;

// Orthonormal three-term recurrence
//   sqrt(beta[n+1]) p_{n+1} = (x - alpha[n]) p_n - sqrt(beta[n]) p_{n-1},
// with p_0 = 1/sqrt(mu0). alpha has L entries, sqrt_beta has L+1 (index 0 unused).
struct Recurrence {
  std::vector<long double> alpha;
  std::vector<long double> sqrt_beta;
  long double mu0 = 1.0L;
};

long double jacobi_mass(long double a, long double b) {
  return std::exp((a + b + 1.0L) * std::log(2.0L) + std::lgamma(a + 1.0L) + std::lgamma(b + 1.0L) -
                  std::lgamma(a + b + 2.0L));
}

Recurrence laguerre_recurrence(std::size_t L) {
  Recurrence rec;
  rec.alpha.resize(L);
  rec.sqrt_beta.assign(L + 1, 0.0L);
  for (std::size_t n = 0; n < L; ++n) rec.alpha[n] = 2.0L * static_cast<long double>(n) + 1.0L;
  for (std::size_t n = 1; n <= L; ++n) rec.sqrt_beta[n] = static_cast<long double>(n);
  rec.mu0 = 1.0L;
  return rec;
}

Recurrence jacobi_recurrence(std::size_t L, double a_in, double b_in) {
  const long double a = a_in, b = b_in;
  Recurrence rec;
  rec.alpha.resize(L);
  rec.sqrt_beta.assign(L + 1, 0.0L);
  const long double ab = a + b;
  rec.alpha[0] = (b - a) / (ab + 2.0L);
  for (std::size_t k = 1; k < L; ++k) {
    const long double n = static_cast<long double>(k);
    rec.alpha[k] = (b * b - a * a) / ((2.0L * n + ab) * (2.0L * n + ab + 2.0L));
  }
  for (std::size_t k = 1; k <= L; ++k) {
    const long double n = static_cast<long double>(k);
    long double beta = 0.0L;
    if (k == 1) {
      beta = 4.0L * (1.0L + a) * (1.0L + b) / ((2.0L + ab) * (2.0L + ab) * (3.0L + ab));
    } else {
      const long double s = 2.0L * n + ab;
      beta = 4.0L * n * (n + a) * (n + b) * (n + ab) / (s * s * (s + 1.0L) * (s - 1.0L));
    }
    rec.sqrt_beta[k] = std::sqrt(beta);
  }
  rec.mu0 = jacobi_mass(a, b);
  return rec;
}

// Value and derivative of p_L at x, up to a common positive scale factor.
struct PolyValue {
  long double p;
  long double dp;
};

PolyValue eval_degree_L(const Recurrence& rec, long double x) {
  const std::size_t L = rec.alpha.size();
  long double p_prev = 0.0L, p = 1.0L;
  long double d_prev = 0.0L, d = 0.0L;
  for (std::size_t n = 0; n < L; ++n) {
    const long double sb_next = rec.sqrt_beta[n + 1];
    const long double sb = rec.sqrt_beta[n];
    const long double p_next = ((x - rec.alpha[n]) * p - sb * p_prev) / sb_next;
    const long double d_next = (p + (x - rec.alpha[n]) * d - sb * d_prev) / sb_next;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
    if (std::abs(p) > kBig || std::abs(d) > kBig) {
      p_prev /= kBig;
      p /= kBig;
      d_prev /= kBig;
      d /= kBig;
    }
  }
  return {p, d};
}

// log of the Christoffel weight 1 / sum_{k<L} p_k(x)^2, in extended precision.
long double log_christoffel_weight(const Recurrence& rec, long double x) {
  const std::size_t L = rec.alpha.size();
  long double log_scale = -0.5L * std::log(rec.mu0);
  long double p_prev = 0.0L, p = 1.0L;
  long double sum = 1.0L;
  for (std::size_t n = 0; n + 1 < L; ++n) {
    const long double p_next = ((x - rec.alpha[n]) * p - rec.sqrt_beta[n] * p_prev) / rec.sqrt_beta[n + 1];
    p_prev = p;
    p = p_next;
    sum += p * p;
    if (std::abs(p) > kBig) {
      p_prev /= kBig;
      p /= kBig;
      sum /= static_cast<long double>(kBig) * kBig;
      log_scale += std::log(static_cast<long double>(kBig));
    }
  }
  return -(std::log(sum) + 2.0L * log_scale);
}

// Initial guess for the k-th smallest Laguerre root given the roots found so far.
long double laguerre_guess(std::size_t L, std::size_t k, const std::vector<long double>& roots) {
  const double n = static_cast<double>(L);
  if (k == 0) return 3.0 / (1.0 + 2.4 * n);
  if (k == 1) return roots[0] + 15.0 / (1.0 + 2.5 * n);
  const double ai = static_cast<double>(k - 1);
  return roots[k - 1] + (1.0 + 2.55 * ai) / (1.9 * ai) * (roots[k - 1] - roots[k - 2]);
}

double jacobi_guess(std::size_t L, std::size_t k, double a, double b) {
  const double n = static_cast<double>(L);
  const double kk = static_cast<double>(L - k);
  return std::cos(kPi * (kk - 0.25 + 0.5 * a) / (n + 0.5 * (a + b + 1.0)));
}

// Newton iteration on p_L with deflation of the roots already found.
template <typename Guess>
std::vector<long double> find_roots(const Recurrence& rec, Guess&& guess, long double lo, long double hi) {
  const std::size_t L = rec.alpha.size();
  std::vector<long double> roots;
  roots.reserve(L);
  for (std::size_t k = 0; k < L; ++k) {
    long double x = guess(k, roots);
    bool converged = false;
    long double prev_step = std::numeric_limits<long double>::infinity();
    for (int it = 0; it < kMaxNewton; ++it) {
      const auto [p, dp] = eval_degree_L(rec, x);
      if (p == 0.0) {
        converged = true;
        break;
      }
      long double deflate = 0.0L;
      for (long double r : roots) deflate += 1.0L / (x - r);
      const long double ratio = p / dp;
      const long double step = ratio / (1.0L - ratio * deflate);
      long double next = x - step;
      if (next <= lo) next = 0.5 * (x + lo);
      if (next >= hi) next = 0.5 * (x + hi);
      // Either the update reached rounding level, or it stopped shrinking
      // once already tiny (evaluation noise floor of the recurrence).
      const long double scale = std::max(std::abs(x), 1e-3L);
      const long double moved = std::abs(next - x);
      const bool done =
          moved <= 4.0L * std::numeric_limits<long double>::epsilon() * std::max(1.0L, std::abs(x)) ||
          (moved <= 1e-11L * scale && moved >= 0.5L * prev_step);
      prev_step = moved;
      x = next;
      if (done) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NonConvergenceError("Gauss node iteration did not converge");
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  for (std::size_t k = 0; k < L; ++k) {
    if (!(roots[k] > lo && roots[k] < hi) || (k > 0 && !(roots[k] > roots[k - 1])))
      throw NumericalError("Gauss nodes are not distinct and interior");
  }
  return roots;
}

GaussRule assemble(const Recurrence& rec, const std::vector<long double>& nodes, WeightFamily family) {
  GaussRule rule;
  rule.family = family;
  rule.log_weights.resize(nodes.size());
  rule.weights.resize(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const long double lw = log_christoffel_weight(rec, nodes[j]);
    rule.log_weights[j] = static_cast<double>(lw);
    rule.weights[j] = static_cast<double>(std::exp(lw));
  }
  rule.nodes.assign(nodes.begin(), nodes.end());
  rule.node_tails.resize(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j)
    rule.node_tails[j] = static_cast<double>(nodes[j] - static_cast<long double>(rule.nodes[j]));
  return rule;
}

}  // namespace

double WeightFamily::mass() const {
  if (kind == Kind::Laguerre) return 1.0;
  return static_cast<double>(jacobi_mass(a, b));
}

GaussRule gauss_laguerre(std::size_t L) {
  if (L == 0) throw std::invalid_argument("gauss_laguerre: L must be positive");
  const Recurrence rec = laguerre_recurrence(L);
  auto nodes = find_roots(
      rec, [L](std::size_t k, const std::vector<long double>& r) { return laguerre_guess(L, k, r); }, 0.0L,
      std::numeric_limits<long double>::infinity());
  return assemble(rec, nodes, WeightFamily::laguerre());
}

GaussRule gauss_jacobi(std::size_t L, double a, double b) {
  if (L == 0) throw std::invalid_argument("gauss_jacobi: L must be positive");
  if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: need a, b > -1");
  const Recurrence rec = jacobi_recurrence(L, a, b);
  auto nodes = find_roots(
      rec, [=](std::size_t k, const std::vector<long double>&) { return jacobi_guess(L, k, a, b); }, -1.0L,
      1.0L);
  return assemble(rec, nodes, WeightFamily::jacobi(a, b));
}

std::string_view to_string(QuadMethod method) {
  switch (method) {
    case QuadMethod::YuanAgrawal: return "yuan-agrawal";
    case QuadMethod::Diethelm: return "diethelm";
    case QuadMethod::BirkSong: return "birk-song";
  }
  return "unknown";
}

QuadMethod parse_quad_method(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '_', '-');
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  if (key == "yuan-agrawal") return QuadMethod::YuanAgrawal;
  if (key == "diethelm") return QuadMethod::Diethelm;
  if (key == "birk-song") return QuadMethod::BirkSong;
  throw ConfigError("unknown quadrature method '" + std::string(name) + "'");
}

double shifted_exponent(double alpha) { return 2.0 * alpha - 2.0 * std::ceil(alpha) + 1.0; }

QuadratureRule build_rule(QuadMethod method, double alpha, std::size_t L) {
  if (L == 0) throw std::invalid_argument("build_rule: L must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("build_rule: alpha must lie in (0,1)");

  QuadratureRule rule;
  rule.method = method;
  rule.alpha = alpha;
  rule.alpha_bar = shifted_exponent(alpha);
  rule.A.resize(L);
  rule.s.resize(L);

  const double abar = rule.alpha_bar;
  const double sign = (static_cast<long>(std::floor(alpha)) % 2 == 0) ? 1.0 : -1.0;
  const double prefactor = sign * std::sin(kPi * alpha) / kPi;

  switch (method) {
    case QuadMethod::YuanAgrawal: {
      const GaussRule g = gauss_laguerre(L);
      for (std::size_t j = 0; j < L; ++j) {
        const double p = g.nodes[j];
        rule.A[j] = 2.0 * prefactor * std::exp(p + g.log_weights[j] + abar * std::log(p));
        rule.s[j] = p;
      }
      break;
    }
    case QuadMethod::Diethelm: {
      const GaussRule g = gauss_jacobi(L, abar, -abar);
      for (std::size_t j = 0; j < L; ++j) {
        const double p = g.nodes[j];
        rule.A[j] = prefactor * 4.0 * g.weights[j] / ((1.0 + p) * (1.0 + p));
        rule.s[j] = (1.0 - p) / (1.0 + p);
      }
      break;
    }
    case QuadMethod::BirkSong: {
      const GaussRule g = gauss_jacobi(L, 2.0 * abar + 1.0, 1.0 - 2.0 * abar);
      for (std::size_t j = 0; j < L; ++j) {
        const double p = g.nodes[j];
        const double q = (1.0 + p) * (1.0 + p);
        rule.A[j] = prefactor * 8.0 * g.weights[j] / (q * q);
        const double ratio = (1.0 - p) / (1.0 + p);
        rule.s[j] = ratio * ratio;
      }
      break;
    }
  }
  return rule;
}

}  // namespace fracspec
