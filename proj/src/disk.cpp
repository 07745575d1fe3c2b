#include "fracspec/disk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracspec/orthopoly.hpp"
#include "fracspec/quadrature.hpp"

namespace fracspec {

namespace {

std::size_t abs_m(int m) { return static_cast<std::size_t>(m < 0 ? -m : m); }

double log_radial_norm(double b, std::size_t am, std::size_t q) {
  const double h = jacobi_norm_sq(JacobiBasis{b, static_cast<double>(am)}, q);
  return 0.5 * (static_cast<double>(am) + b + 2.0) * std::log(2.0) - 0.5 * std::log(h);
}

// Radius and angle of (x, y); rejects points outside the closed disk.
void to_polar(double x, double y, double& r, double& theta) {
  const double r2 = x * x + y * y;
  if (!(r2 <= 1.0 + 1e-12)) throw std::invalid_argument("disk: point outside the unit disk");
  r = std::sqrt(std::min(r2, 1.0));
  theta = std::atan2(y, x);
}

// Polynomial part of the Laplacian of (1 - u) P_q^{(1,|m|)}(2u - 1) r^{|m|}:
// 4 [(|m| + 1) G'(u) + u G''(u)], the factor r^{|m|} left out.
double laplacian_poly(std::size_t am, std::size_t q, double t) {
  const double mm = static_cast<double>(am);
  const double n = static_cast<double>(q);
  const double u = 0.5 * (1.0 + t);
  const double P = jacobi_eval(JacobiBasis{1.0, mm}, q, t);
  const double dP = q >= 1 ? 0.5 * (n + mm + 2.0) * jacobi_eval(JacobiBasis{2.0, mm + 1.0}, q - 1, t) : 0.0;
  const double d2P = q >= 2 ? 0.25 * (n + mm + 2.0) * (n + mm + 3.0) *
                                  jacobi_eval(JacobiBasis{3.0, mm + 2.0}, q - 2, t)
                            : 0.0;
  const double G1 = -P + 2.0 * (1.0 - u) * dP;
  const double G2 = -4.0 * dP + 4.0 * (1.0 - u) * d2P;
  return 4.0 * ((mm + 1.0) * G1 + u * G2);
}

// Dense projection of mode m: entry (q', q) = int_0^1 (1 - r^2) r^{2|m|} N_q N_q'
// left(q, t) P_q'(t) r dr, t = 2r^2 - 1.
template <typename Left>
std::vector<double> radial_projection(std::size_t K, int m, Left left) {
  const std::size_t am = abs_m(m);
  const std::size_t Q = disk_block_size(K, m);
  std::vector<double> out(Q * Q, 0.0);
  if (Q == 0) return out;
  const double mm = static_cast<double>(am);
  const GaussRule rule = gauss_jacobi(Q + 4, 1.0, mm);
  std::vector<double> logN(Q);
  for (std::size_t q = 0; q < Q; ++q) logN[q] = log_radial_norm(1.0, am, q);
  const double scale = std::pow(2.0, -3.0 - mm);
  std::vector<double> lhs(Q);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    const std::vector<double> P = eval_row(JacobiBasis{1.0, mm}, t, Q);
    for (std::size_t q = 0; q < Q; ++q) lhs[q] = left(q, t, P[q]);
    for (std::size_t qp = 0; qp < Q; ++qp)
      for (std::size_t q = 0; q < Q; ++q) out[qp * Q + q] += rule.weights[i] * lhs[q] * P[qp];
  }
  for (std::size_t qp = 0; qp < Q; ++qp)
    for (std::size_t q = 0; q < Q; ++q) out[qp * Q + q] *= scale * std::exp(logN[q] + logN[qp]);
  return out;
}

}  // namespace

std::size_t disk_block_size(std::size_t K, int m) {
  const std::size_t am = abs_m(m);
  if (am > K) return 0;
  return (K - am) / 2 + 1;
}

DiskCoeffs::DiskCoeffs(double b, std::size_t K) : b_(b), K_(K) {
  if (b < 0.0) throw std::invalid_argument("DiskCoeffs: b must be non-negative");
  const int Ki = static_cast<int>(K);
  offsets_.reserve(2 * K + 2);
  std::size_t total = 0;
  for (int m = -Ki; m <= Ki; ++m) {
    offsets_.push_back(total);
    total += disk_block_size(K, m);
  }
  offsets_.push_back(total);
  data_.assign(total, 0.0);
}

std::size_t DiskCoeffs::offset(int m) const {
  const int Ki = static_cast<int>(K_);
  if (m < -Ki || m > Ki) throw std::out_of_range("DiskCoeffs: mode out of range");
  return offsets_[static_cast<std::size_t>(m + Ki)];
}

std::span<double> DiskCoeffs::block(int m) {
  const std::size_t off = offset(m);
  return std::span<double>(data_).subspan(off, disk_block_size(K_, m));
}

std::span<const double> DiskCoeffs::block(int m) const {
  const std::size_t off = offset(m);
  return std::span<const double>(data_).subspan(off, disk_block_size(K_, m));
}

double DiskCoeffs::coeff(std::size_t l, int m) const {
  const std::size_t am = abs_m(m);
  if (l < am || (l - am) % 2 != 0 || l > K_) throw std::out_of_range("DiskCoeffs: invalid (l, m)");
  return block(m)[(l - am) / 2];
}

double DiskCoeffs::max_abs() const noexcept {
  double mx = 0.0;
  for (double v : data_) mx = std::max(mx, std::abs(v));
  return mx;
}

double zernike_radial_eval(double b, int m, std::size_t q, double r) {
  const std::size_t am = abs_m(m);
  const double t = 2.0 * r * r - 1.0;
  const double P = jacobi_eval(JacobiBasis{b, static_cast<double>(am)}, q, t);
  return std::exp(log_radial_norm(b, am, q)) * std::pow(r, static_cast<double>(am)) * P;
}

std::vector<double> zernike_radial_row(double b, int m, double r, std::size_t count) {
  const std::size_t am = abs_m(m);
  const double mm = static_cast<double>(am);
  const double t = 2.0 * r * r - 1.0;
  std::vector<double> row = eval_row(JacobiBasis{b, mm}, t, count);
  const double rm = std::pow(r, mm);
  // h_{q+1}/h_q in closed form avoids a log-gamma per entry.
  double log_norm = log_radial_norm(b, am, 0);
  for (std::size_t q = 0; q < count; ++q) {
    row[q] *= std::exp(log_norm) * rm;
    const double n = static_cast<double>(q);
    const double ratio = (2.0 * n + b + mm + 1.0) / (2.0 * n + b + mm + 3.0) * (n + b + 1.0) * (n + mm + 1.0) /
                         ((n + b + mm + 1.0) * (n + 1.0));
    log_norm -= 0.5 * std::log(ratio);
  }
  return row;
}

double zernike_angular(int m, double theta) {
  using std::numbers::pi;
  if (m == 0) return std::sqrt(1.0 / (2.0 * pi));
  const double scale = std::sqrt(1.0 / pi);
  return m > 0 ? scale * std::cos(m * theta) : scale * std::sin(-m * theta);
}

double zernike_eval(double b, int m, std::size_t q, double x, double y) {
  double r = 0.0, theta = 0.0;
  to_polar(x, y, r, theta);
  return zernike_radial_eval(b, m, q, r) * zernike_angular(m, theta);
}

DiskCoeffs disk_analyze(const std::function<double(double, double)>& f, double b, std::size_t K) {
  return disk_analyze(f, DiskBasisTag::zernike(b), K);
}

DiskCoeffs disk_analyze(const std::function<double(double, double)>& f, DiskBasisTag basis,
                        std::size_t K) {
  using std::numbers::pi;
  DiskCoeffs out(basis.b, K);
  const int Ki = static_cast<int>(K);
  // For the weighted basis the weight cancels against the division by it.
  const double w = basis.kind == DiskBasisTag::Kind::Zernike ? basis.b : 0.0;
  const GaussRule radial = gauss_jacobi(K + 8, w, 0.0);
  const std::size_t n_theta = 2 * K + 8;
  const double dtheta = 2.0 * pi / static_cast<double>(n_theta);
  std::vector<double> samples(n_theta), angular(2 * K + 1);
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double t = radial.nodes[i];
    const double r = std::sqrt(0.5 * (1.0 + t));
    for (std::size_t k = 0; k < n_theta; ++k) {
      const double theta = dtheta * static_cast<double>(k);
      samples[k] = f(r * std::cos(theta), r * std::sin(theta));
    }
    for (int m = -Ki; m <= Ki; ++m) {
      double s = 0.0;
      for (std::size_t k = 0; k < n_theta; ++k)
        s += samples[k] * zernike_angular(m, dtheta * static_cast<double>(k));
      angular[static_cast<std::size_t>(m + Ki)] = s * dtheta;
    }
    const double wr = radial.weights[i] * std::pow(2.0, -w) * 0.25;
    for (int m = -Ki; m <= Ki; ++m) {
      std::span<double> blk = out.block(m);
      const std::vector<double> R = zernike_radial_row(basis.b, m, r, blk.size());
      const double a = wr * angular[static_cast<std::size_t>(m + Ki)];
      for (std::size_t q = 0; q < blk.size(); ++q) blk[q] += a * R[q];
    }
  }
  return out;
}

double disk_synth(const DiskCoeffs& c, DiskBasisTag basis, double x, double y) {
  double r = 0.0, theta = 0.0;
  to_polar(x, y, r, theta);
  const int Ki = static_cast<int>(c.K());
  double sum = 0.0;
  for (int m = -Ki; m <= Ki; ++m) {
    std::span<const double> blk = c.block(m);
    const std::vector<double> R = zernike_radial_row(c.b(), m, r, blk.size());
    double radial = 0.0;
    for (std::size_t q = 0; q < blk.size(); ++q) radial += blk[q] * R[q];
    sum += radial * zernike_angular(m, theta);
  }
  if (basis.kind == DiskBasisTag::Kind::WeightedZernike)
    sum *= std::pow(1.0 - std::min(x * x + y * y, 1.0), basis.b);
  return sum;
}

double weighted_zernike_laplacian(int m, std::size_t q, double x, double y) {
  double r = 0.0, theta = 0.0;
  to_polar(x, y, r, theta);
  const std::size_t am = abs_m(m);
  const double t = 2.0 * r * r - 1.0;
  return std::exp(log_radial_norm(1.0, am, q)) * std::pow(r, static_cast<double>(am)) *
         laplacian_poly(am, q, t) * zernike_angular(m, theta);
}

std::vector<double> disk_laplacian_projection(std::size_t K, int m) {
  const std::size_t am = abs_m(m);
  return radial_projection(K, m, [am](std::size_t q, double t, double) { return laplacian_poly(am, q, t); });
}

std::vector<double> disk_conversion_projection(std::size_t K, int m) {
  return radial_projection(K, m, [](std::size_t, double t, double P) { return 0.5 * (1.0 - t) * P; });
}

std::vector<std::vector<double>> disk_laplacian_op(std::size_t K) {
  const int Ki = static_cast<int>(K);
  std::vector<std::vector<double>> out;
  out.reserve(2 * K + 1);
  for (int m = -Ki; m <= Ki; ++m) {
    const std::size_t Q = disk_block_size(K, m);
    const std::vector<double> full = disk_laplacian_projection(K, m);
    std::vector<double> diag(Q);
    for (std::size_t q = 0; q < Q; ++q) diag[q] = full[q * Q + q];
    out.push_back(std::move(diag));
  }
  return out;
}

std::vector<BandedOp> disk_conversion_op(std::size_t K) {
  const int Ki = static_cast<int>(K);
  std::vector<BandedOp> out;
  out.reserve(2 * K + 1);
  for (int m = -Ki; m <= Ki; ++m) {
    const std::size_t Q = disk_block_size(K, m);
    const std::vector<double> full = disk_conversion_projection(K, m);
    BandedOp op(Q, Q, 2, 2);
    for (std::size_t i = 0; i < Q; ++i)
      for (std::size_t j = 0; j < Q; ++j)
        if (op.in_band(i, j)) op.at(i, j) = full[i * Q + j];
    out.push_back(std::move(op));
  }
  return out;
}

}  // namespace fracspec
