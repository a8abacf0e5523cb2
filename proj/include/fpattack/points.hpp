#ifndef FPATTACK_POINTS_HPP
#define FPATTACK_POINTS_HPP

#include <span>
#include <vector>

#include "fpattack/sign_matrix.hpp"

namespace fpattack {

// Read-only real-valued point set (rows are points).  Backed either by a
// dense row-major array or by a sign matrix with a scalar row scale and an
// optional tail of all-zero points; the latter lets mechanisms consume a
// padded codebook at full width without an 8-byte-per-entry copy.
class PointSet {
 public:
  static PointSet dense(long rows, long cols, std::vector<double> row_major);
  static PointSet scaled_signs(const SignMatrix& m, double scale, long extra_zero_rows = 0);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  double at(long i, long j) const {
    if (signs_ != nullptr) {
      if (i >= signs_->rows()) return 0.0;
      return scale_ * static_cast<double>(signs_->at(i, j));
    }
    return dense_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)];
  }

  // acc[j] += sum over rows of at(i, j); specialized per backend.
  void add_column_sums(std::span<double> acc) const;
  // out[i] = sum_j at(i, j) * v[j]
  void multiply(std::span<const double> v, std::span<double> out) const;
  // out[j] = sum_i at(i, j) * u[i]
  void multiply_transposed(std::span<const double> u, std::span<double> out) const;

  std::vector<double> point(long i) const;

 private:
  PointSet() = default;
  long rows_ = 0;
  long cols_ = 0;
  const SignMatrix* signs_ = nullptr;
  double scale_ = 1.0;
  std::vector<double> dense_;
};

}  // namespace fpattack

#endif
