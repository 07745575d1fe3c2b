#include "fracspec/banded.hpp"

#include <algorithm>
#include <stdexcept>

namespace fracspec {

BandedOp::BandedOp(std::size_t rows, std::size_t cols, std::size_t lower, std::size_t upper)
    : rows_(rows), cols_(cols), lower_(lower), upper_(upper), band_(rows * (lower + upper + 1), 0.0) {}

BandedOp BandedOp::identity(std::size_t n) {
  BandedOp op(n, n, 0, 0);
  for (std::size_t i = 0; i < n; ++i) op.at(i, i) = 1.0;
  return op;
}

bool BandedOp::in_band(std::size_t i, std::size_t j) const noexcept {
  if (i >= rows_ || j >= cols_) return false;
  return j + lower_ >= i && j <= i + upper_;
}

double BandedOp::operator()(std::size_t i, std::size_t j) const {
  return in_band(i, j) ? band_[index(i, j)] : 0.0;
}

double& BandedOp::at(std::size_t i, std::size_t j) {
  if (!in_band(i, j)) throw std::out_of_range("BandedOp::at: entry outside the declared band");
  return band_[index(i, j)];
}

void BandedOp::add_border_row(std::vector<double> row) {
  if (row.size() != cols_) throw std::invalid_argument("BandedOp: border row length mismatch");
  border_.push_back(std::move(row));
}

std::vector<double> BandedOp::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw std::invalid_argument("BandedOp::apply: length mismatch");
  std::vector<double> y(total_rows(), 0.0);
  for (std::size_t k = 0; k < border_.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += border_[k][j] * x[j];
    y[k] = s;
  }
  const std::size_t off = border_.size();
  for (std::size_t i = 0; i < rows_; ++i) {
    const std::size_t j0 = i > lower_ ? i - lower_ : 0;
    const std::size_t j1 = std::min(cols_, i + upper_ + 1);
    double s = 0.0;
    for (std::size_t j = j0; j < j1; ++j) s += band_[index(i, j)] * x[j];
    y[off + i] = s;
  }
  return y;
}

BandedOp BandedOp::compose(const BandedOp& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("BandedOp::compose: shape mismatch");
  BandedOp out(rows_, rhs.cols_, lower_ + rhs.lower_, upper_ + rhs.upper_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const std::size_t k0 = i > lower_ ? i - lower_ : 0;
    const std::size_t k1 = std::min(cols_, i + upper_ + 1);
    for (std::size_t k = k0; k < k1; ++k) {
      const double left = band_[index(i, k)];
      if (left == 0.0) continue;
      const std::size_t j0 = k > rhs.lower_ ? k - rhs.lower_ : 0;
      const std::size_t j1 = std::min(rhs.cols_, k + rhs.upper_ + 1);
      for (std::size_t j = j0; j < j1; ++j) out.at(i, j) += left * rhs(k, j);
    }
  }
  return out;
}

BandedOp BandedOp::combine(double scale_self, const BandedOp& other, double scale_other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("BandedOp::combine: shape mismatch");
  BandedOp out(rows_, cols_, std::max(lower_, other.lower_), std::max(upper_, other.upper_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (in_band(i, j)) out.at(i, j) += scale_self * (*this)(i, j);
      if (other.in_band(i, j)) out.at(i, j) += scale_other * other(i, j);
    }
  }
  return out;
}

BandedOp BandedOp::row_slice(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw std::out_of_range("BandedOp::row_slice: rows out of range");
  BandedOp out(count, cols_, lower_ > first ? lower_ - first : 0, upper_ + first);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (in_band(first + i, j)) out.at(i, j) = (*this)(first + i, j);
    }
  }
  return out;
}

std::vector<double> BandedOp::dense() const {
  std::vector<double> out(total_rows() * cols_, 0.0);
  for (std::size_t k = 0; k < border_.size(); ++k)
    std::copy(border_[k].begin(), border_[k].end(), out.begin() + static_cast<std::ptrdiff_t>(k * cols_));
  const std::size_t off = border_.size();
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[(off + i) * cols_ + j] = (*this)(i, j);
  return out;
}

}  // namespace fracspec
