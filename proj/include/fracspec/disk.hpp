#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracspec/banded.hpp"

namespace fracspec {

/// Basis on the unit disk: Zernike(b) polynomials, orthonormal for the weight
/// (1 - r^2)^b, or the weighted family (1 - r^2)^b Zernike(b).
struct DiskBasisTag {
  enum class Kind { Zernike, WeightedZernike };
  Kind kind = Kind::Zernike;
  double b = 0.0;

  static DiskBasisTag zernike(double b) { return {Kind::Zernike, b}; }
  static DiskBasisTag weighted(double b) { return {Kind::WeightedZernike, b}; }
};

/// Number of radial coefficients of mode m at total degree K: q with 2q + |m| <= K.
std::size_t disk_block_size(std::size_t K, int m);

/// Coefficients of a real field on the disk, split by azimuthal mode.
///
/// Block m (m = -K..K) holds coefficients of the basis functions with radial
/// index q = 0.. and degree l = 2q + |m| <= K. Modes m >= 0 pair with
/// cos(m theta), modes m < 0 with sin(|m| theta).
class DiskCoeffs {
public:
  DiskCoeffs() = default;
  DiskCoeffs(double b, std::size_t K);

  double b() const noexcept { return b_; }
  std::size_t K() const noexcept { return K_; }
  int m_max() const noexcept { return static_cast<int>(K_); }

  std::span<double> block(int m);
  std::span<const double> block(int m) const;

  /// All coefficients, blocks concatenated from m = -K to m = K.
  std::span<double> flat() noexcept { return data_; }
  std::span<const double> flat() const noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }

  /// Offset of block m inside flat().
  std::size_t offset(int m) const;

  /// Coefficient of (l, m), i.e. q = (l - |m|)/2.
  double coeff(std::size_t l, int m) const;

  double max_abs() const noexcept;

private:
  double b_ = 0.0;
  std::size_t K_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<double> data_;
};

/// Orthonormal radial factor r^{|m|} P_q^{(b,|m|)}(2r^2 - 1) times its normalization.
double zernike_radial_eval(double b, int m, std::size_t q, double r);

/// Radial factors for q = 0..count-1 at radius r.
std::vector<double> zernike_radial_row(double b, int m, double r, std::size_t count);

/// Angular factor sqrt((2 - delta_{m0})/(2 pi)) * {cos(m theta), sin(|m| theta)}.
double zernike_angular(int m, double theta);

/// Z_{l,m}^{(b)}(x, y), l = 2q + |m|.
double zernike_eval(double b, int m, std::size_t q, double x, double y);

/// Coefficients of f in Zernike(b) by tensor quadrature (Gauss-Jacobi in
/// t = 2r^2 - 1, trapezoidal in theta).
DiskCoeffs disk_analyze(const std::function<double(double, double)>& f, double b, std::size_t K);

/// As above in the given basis. For WeightedZernike(b) the result c satisfies
/// W c = f, i.e. c are the Zernike(b) coefficients of f / (1 - r^2)^b.
DiskCoeffs disk_analyze(const std::function<double(double, double)>& f, DiskBasisTag basis,
                        std::size_t K);

/// Point evaluation; throws std::invalid_argument outside the closed disk.
double disk_synth(const DiskCoeffs& c, DiskBasisTag basis, double x, double y);

/// Dense Q x Q matrix (row-major, Q = disk_block_size(K, m)) of
/// <Laplacian W_q, Z_q'> for mode m, b = 1: entry (q', q).
std::vector<double> disk_laplacian_projection(std::size_t K, int m);

/// Dense Q x Q matrix of <W_q, Z_q'> for mode m, b = 1: entry (q', q).
std::vector<double> disk_conversion_projection(std::size_t K, int m);

/// Per-mode diagonals D_m of the Laplacian W(1) -> Z(1), indexed by m + K.
std::vector<std::vector<double>> disk_laplacian_op(std::size_t K);

/// Per-mode banded conversion W(1) -> Z(1) (bandwidth 2), indexed by m + K.
std::vector<BandedOp> disk_conversion_op(std::size_t K);

/// Laplacian of W_{l,m}^{(1)} at (x, y) from differentiated radial recurrences.
double weighted_zernike_laplacian(int m, std::size_t q, double x, double y);

}  // namespace fracspec
