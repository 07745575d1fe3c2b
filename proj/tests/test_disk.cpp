#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "fracspec/disk.hpp"
#include "fracspec/quadrature.hpp"

using namespace fracspec;

namespace {

struct DiskPoint {
  double x, y;
};

std::vector<DiskPoint> random_points(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<DiskPoint> pts;
  while (pts.size() < n) {
    const double r = std::sqrt(u(gen)), th = 2 * std::numbers::pi * u(gen);
    pts.push_back({r * std::cos(th), r * std::sin(th)});
  }
  return pts;
}

// Weighted inner product over the disk, weight (1 - r^2)^b: Gauss-Jacobi(b, 0) in
// t = 2r^2 - 1 (r dr = dt/4) and the trapezoid rule in theta.
template <typename F>
double disk_integral(F f, double b, std::size_t nt_rad = 40, std::size_t nth = 64) {
  const GaussRule g = gauss_jacobi(nt_rad, b, 0.0);
  const double scale = std::pow(2.0, -b) / 4.0 * (2 * std::numbers::pi / static_cast<double>(nth));
  double s = 0;
  for (std::size_t i = 0; i < nt_rad; ++i) {
    const double r = std::sqrt(0.5 * (1 + g.nodes[i]));
    for (std::size_t k = 0; k < nth; ++k) {
      const double th = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nth);
      s += g.weights[i] * scale * f(r * std::cos(th), r * std::sin(th));
    }
  }
  return s;
}

}  // namespace

TEST(DiskCoeffs, Layout) {
  DiskCoeffs c(1.0, 6);
  EXPECT_EQ(disk_block_size(6, 0), 4u);
  EXPECT_EQ(disk_block_size(6, -5), 1u);
  EXPECT_EQ(disk_block_size(6, 6), 1u);
  std::size_t total = 0;
  for (int m = -6; m <= 6; ++m) {
    EXPECT_EQ(c.block(m).size(), disk_block_size(6, m));
    EXPECT_EQ(c.offset(m), total);
    total += c.block(m).size();
  }
  EXPECT_EQ(c.size(), total);
  EXPECT_EQ(total, 28u);  // (K+1)(K+2)/2
  c.block(-2)[1] = 0.75;
  EXPECT_EQ(c.coeff(4, -2), 0.75);
  EXPECT_EQ(c.max_abs(), 0.75);
}

TEST(ZernikeRadial, Shapes) {
  const double z0 = zernike_radial_eval(1.0, 0, 0, 0.0);
  for (double r : {0.1, 0.5, 0.9, 1.0}) EXPECT_NEAR(zernike_radial_eval(1.0, 0, 0, r), z0, 1e-14);
  const double a = zernike_radial_eval(0.0, 2, 0, 1e-3), b = zernike_radial_eval(0.0, 2, 0, 2e-3);
  EXPECT_NEAR(b / a, 4.0, 1e-5);
  const auto row = zernike_radial_row(1.0, 3, 0.6, 5);
  for (std::size_t q = 0; q < 5; ++q) EXPECT_NEAR(row[q], zernike_radial_eval(1.0, 3, q, 0.6), 1e-13);
}

TEST(ZernikeRadial, Orthonormality) {
  for (double b : {0.0, 1.0, 2.5}) {
    const std::size_t K = 12;
    for (int m = -static_cast<int>(K); m <= static_cast<int>(K); ++m)
      for (int m2 = m; m2 <= static_cast<int>(K); ++m2)
        for (std::size_t q = 0; 2 * q + static_cast<std::size_t>(std::abs(m)) <= K; ++q)
          for (std::size_t q2 = 0; 2 * q2 + static_cast<std::size_t>(std::abs(m2)) <= K; ++q2) {
            if (m2 == m && q2 < q) continue;
            const double ip = disk_integral(
                [&](double x, double y) { return zernike_eval(b, m, q, x, y) * zernike_eval(b, m2, q2, x, y); }, b);
            const double expect = (m == m2 && q == q2) ? 1.0 : 0.0;
            EXPECT_NEAR(ip, expect, 1e-12) << "b=" << b << " m=" << m << " q=" << q << " m2=" << m2 << " q2=" << q2;
          }
  }
}

TEST(DiskAnalyze, ConstantField) {
  const DiskCoeffs c = disk_analyze([](double, double) { return 1.0; }, 0.0, 8);
  for (int m = -8; m <= 8; ++m)
    for (std::size_t q = 0; q < c.block(m).size(); ++q) {
      if (m == 0 && q == 0)
        EXPECT_NEAR(c.block(m)[q], std::sqrt(std::numbers::pi), 1e-13);
      else
        EXPECT_NEAR(c.block(m)[q], 0.0, 1e-14);
    }
}

TEST(DiskAnalyze, InitialDataIsFinite) {
  const auto f = [](double x, double y) {
    const double w = 1 - x * x - y * y;
    return 4 * y * w * w;
  };
  const DiskCoeffs c = disk_analyze(f, DiskBasisTag::weighted(1.0), 20);
  for (int m = -20; m <= 20; ++m)
    for (std::size_t q = 0; q < c.block(m).size(); ++q) {
      const std::size_t l = 2 * q + static_cast<std::size_t>(std::abs(m));
      if (l > 3) EXPECT_LT(std::abs(c.block(m)[q]), 1e-12) << l << " " << m;
    }
  for (const auto& p : random_points(20, 4)) EXPECT_NEAR(disk_synth(c, DiskBasisTag::weighted(1.0), p.x, p.y), f(p.x, p.y), 1e-13);
}

TEST(DiskAnalyze, RadialFieldHasOnlyModeZero) {
  const DiskCoeffs c = disk_analyze([](double x, double y) { return std::exp(-3 * (x * x + y * y)); }, 1.0, 24);
  for (int m = -24; m <= 24; ++m) {
    if (m == 0) continue;
    for (double v : c.block(m)) EXPECT_LT(std::abs(v), 1e-13);
  }
}

TEST(DiskSynth, RoundTripPolynomial) {
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double a[7][7] = {};
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; i + j <= 6; ++j) a[i][j] = u(gen);
  const auto f = [&](double x, double y) {
    double s = 0;
    for (int i = 0; i <= 6; ++i)
      for (int j = 0; i + j <= 6; ++j) s += a[i][j] * std::pow(x, i) * std::pow(y, j);
    return s;
  };
  for (double b : {0.0, 1.0}) {
    const DiskCoeffs c = disk_analyze(f, b, 6);
    for (const auto& p : random_points(30, 8)) EXPECT_NEAR(disk_synth(c, DiskBasisTag::zernike(b), p.x, p.y), f(p.x, p.y), 1e-11);
  }
}

TEST(DiskSynth, WeightedVanishesOnBoundary) {
  DiskCoeffs c(1.0, 10);
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& v : c.flat()) v = u(gen);
  for (int k = 0; k < 50; ++k) {
    const double th = 2 * std::numbers::pi * k / 50.0;
    EXPECT_LT(std::abs(disk_synth(c, DiskBasisTag::weighted(1.0), std::cos(th), std::sin(th))), 1e-13);
  }
  EXPECT_THROW(disk_synth(c, DiskBasisTag::weighted(1.0), 0.9, 0.5), std::invalid_argument);
}

TEST(DiskSynth, SingleConstantWeighted) {
  DiskCoeffs c(1.0, 4);
  c.block(0)[0] = 1.0;
  const double z0 = zernike_eval(1.0, 0, 0, 0.0, 0.0);
  for (const auto& p : random_points(10, 3)) {
    const double r2 = p.x * p.x + p.y * p.y;
    EXPECT_NEAR(disk_synth(c, DiskBasisTag::weighted(1.0), p.x, p.y), z0 * (1 - r2), 1e-14);
  }
}

TEST(DiskLaplacian, PointwiseAgainstFiniteDifferences) {
  // independent check of the differentiated recurrences
  // five-point stencil with one Richardson step, O(h^4)
  for (int m : {0, 1, -2, 3}) {
    for (std::size_t q : {0u, 1u, 3u}) {
      for (const auto& p : random_points(5, static_cast<unsigned>(10 + q))) {
        if (p.x * p.x + p.y * p.y > 0.8) continue;
        auto W = [&](double x, double y) { return (1 - x * x - y * y) * zernike_eval(1.0, m, q, x, y); };
        auto stencil = [&](double h) {
          return (W(p.x + h, p.y) + W(p.x - h, p.y) + W(p.x, p.y + h) + W(p.x, p.y - h) - 4 * W(p.x, p.y)) / (h * h);
        };
        const double fd = (4 * stencil(1e-3) - stencil(2e-3)) / 3;
        const double lap = weighted_zernike_laplacian(m, q, p.x, p.y);
        EXPECT_NEAR(lap, fd, 1e-6 * std::max(1.0, std::abs(lap)));
      }
    }
  }
}

TEST(DiskLaplacian, DiagonalNegativeAndShaped) {
  const std::size_t K = 12;
  const auto D = disk_laplacian_op(K);
  ASSERT_EQ(D.size(), 2 * K + 1);
  for (int m = -static_cast<int>(K); m <= static_cast<int>(K); ++m) {
    const auto& d = D[static_cast<std::size_t>(m + static_cast<int>(K))];
    EXPECT_EQ(d.size(), disk_block_size(K, m));
    for (double v : d) EXPECT_LT(v, 0.0);
    const auto P = disk_laplacian_projection(K, m);
    const std::size_t Q = d.size();
    for (std::size_t i = 0; i < Q; ++i)
      for (std::size_t j = 0; j < Q; ++j)
        if (i != j) EXPECT_LT(std::abs(P[i * Q + j]), 1e-8) << m << " " << i << " " << j;
  }
}

TEST(DiskConversion, BandedAndPreservesSynthesis) {
  const std::size_t K = 12;
  const auto C = disk_conversion_op(K);
  for (int m = -static_cast<int>(K); m <= static_cast<int>(K); ++m) {
    const auto P = disk_conversion_projection(K, m);
    const std::size_t Q = disk_block_size(K, m);
    for (std::size_t i = 0; i < Q; ++i)
      for (std::size_t j = 0; j < Q; ++j)
        if ((i > j ? i - j : j - i) > 2) EXPECT_LT(std::abs(P[i * Q + j]), 1e-10);
    EXPECT_LE(C[static_cast<std::size_t>(m + static_cast<int>(K))].upper_bandwidth(), 2u);
    EXPECT_LE(C[static_cast<std::size_t>(m + static_cast<int>(K))].lower_bandwidth(), 2u);
  }
  DiskCoeffs w(1.0, K);
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // the top entry of each block is W of degree K + 2, outside the Z(K) space
  for (int m = -static_cast<int>(K); m <= static_cast<int>(K); ++m) {
    auto blk = w.block(m);
    for (std::size_t q = 0; q + 1 < blk.size(); ++q) blk[q] = u(gen);
  }
  DiskCoeffs z(1.0, K);
  for (int m = -static_cast<int>(K); m <= static_cast<int>(K); ++m) {
    const auto y = C[static_cast<std::size_t>(m + static_cast<int>(K))].apply(w.block(m));
    std::copy(y.begin(), y.end(), z.block(m).begin());
  }
  for (const auto& p : random_points(30, 21))
    EXPECT_NEAR(disk_synth(z, DiskBasisTag::zernike(1.0), p.x, p.y), disk_synth(w, DiskBasisTag::weighted(1.0), p.x, p.y),
                1e-11);
}

TEST(DiskConversion, ConstantImage) {
  const std::size_t K = 6;
  const auto C = disk_conversion_op(K);
  std::vector<double> e0(disk_block_size(K, 0), 0.0);
  e0[0] = 1.0;
  const auto y = C[K].apply(e0);
  const double z0 = zernike_eval(1.0, 0, 0, 0.0, 0.0);
  const DiskCoeffs ref = disk_analyze([&](double x, double yy) { return z0 * (1 - x * x - yy * yy); }, 1.0, K);
  for (std::size_t q = 0; q < y.size(); ++q) EXPECT_NEAR(y[q], ref.block(0)[q], 1e-13);
}

TEST(DiskOperators, ModeDecoupling) {
  // cross-mode projections of the Laplacian image and of W itself vanish
  const double b = 1.0;
  for (int m : {0, 2, -3})
    for (int m2 : {1, -2, 4}) {
      const double lap = disk_integral([&](double x, double y) { return weighted_zernike_laplacian(m, 1, x, y) * zernike_eval(b, m2, 1, x, y); }, b);
      const double conv = disk_integral(
          [&](double x, double y) { return (1 - x * x - y * y) * zernike_eval(b, m, 1, x, y) * zernike_eval(b, m2, 0, x, y); }, b);
      EXPECT_LT(std::abs(lap), 1e-10);
      EXPECT_LT(std::abs(conv), 1e-10);
    }
}

TEST(DiskAnalyze, GaussianBumpDecays) {
  const DiskCoeffs c = disk_analyze([](double x, double y) { return std::exp(-8 * ((x - 0.2) * (x - 0.2) + y * y)); }, 1.0, 40);
  std::size_t last = 0;
  for (int m = -40; m <= 40; ++m)
    for (std::size_t q = 0; q < c.block(m).size(); ++q)
      if (std::abs(c.block(m)[q]) >= 1e-10) last = std::max(last, 2 * q + static_cast<std::size_t>(std::abs(m)));
  std::cout << "gaussian bump: last degree with |c| >= 1e-10 is " << last << "\n";
  EXPECT_LT(last, 40u);
}
