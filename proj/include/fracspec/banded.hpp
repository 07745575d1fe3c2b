#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracspec {

/// Banded matrix with optional dense rows stacked on top of the band.
///
/// The band part has `rows()` rows; entry (i, j) of the band part may be
/// nonzero only for -lower <= j - i <= upper. Border rows (dense, `cols()`
/// entries each) are prepended, so the full operator has
/// `border_count() + rows()` rows. Border rows typically hold point
/// evaluation functionals for boundary conditions.
class BandedOp {
public:
  BandedOp() = default;
  BandedOp(std::size_t rows, std::size_t cols, std::size_t lower, std::size_t upper);

  static BandedOp identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t lower_bandwidth() const noexcept { return lower_; }
  std::size_t upper_bandwidth() const noexcept { return upper_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept;

  /// Entry (i, j) of the band part; zero outside the band.
  double operator()(std::size_t i, std::size_t j) const;
  /// Mutable access inside the band; throws std::out_of_range outside it.
  double& at(std::size_t i, std::size_t j);

  std::size_t border_count() const noexcept { return border_.size(); }
  std::span<const double> border_row(std::size_t k) const { return border_[k]; }
  void add_border_row(std::vector<double> row);

  std::size_t total_rows() const noexcept { return border_.size() + rows_; }

  /// Full operator applied to x: border rows first, then the band rows.
  std::vector<double> apply(std::span<const double> x) const;

  /// Product this * rhs of the band parts (border rows are not carried over).
  BandedOp compose(const BandedOp& rhs) const;

  /// scale_self * this + scale_other * other, band parts only; shapes must match.
  BandedOp combine(double scale_self, const BandedOp& other, double scale_other) const;

  /// Band rows [first, first + count) as a new operator with the same bandwidths
  /// measured from the new row indices shifted by `first`.
  BandedOp row_slice(std::size_t first, std::size_t count) const;

  /// Row-major dense copy of the full operator (border rows first).
  std::vector<double> dense() const;

private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return i * (lower_ + upper_ + 1) + (j + lower_ - i);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  std::vector<double> band_;
  std::vector<std::vector<double>> border_;
};

}  // namespace fracspec
