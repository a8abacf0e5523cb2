#include "fpattack/points.hpp"

#include <stdexcept>

namespace fpattack {

PointSet PointSet::dense(long rows, long cols, std::vector<double> row_major) {
  if (rows < 0 || cols < 0 ||
      row_major.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw std::invalid_argument("PointSet::dense: size mismatch");
  }
  PointSet p;
  p.rows_ = rows;
  p.cols_ = cols;
  p.dense_ = std::move(row_major);
  return p;
}

PointSet PointSet::scaled_signs(const SignMatrix& m, double scale, long extra_zero_rows) {
  if (extra_zero_rows < 0) throw std::invalid_argument("PointSet: extra_zero_rows must be >= 0");
  PointSet p;
  p.rows_ = m.rows() + extra_zero_rows;
  p.cols_ = m.cols();
  p.signs_ = &m;
  p.scale_ = scale;
  return p;
}

void PointSet::add_column_sums(std::span<double> acc) const {
  if (acc.size() != static_cast<std::size_t>(cols_)) {
    throw std::invalid_argument("PointSet::add_column_sums: length mismatch");
  }
  if (signs_ != nullptr) {
    const long n = signs_->rows();
    for (long j = 0; j < cols_; ++j) {
      const auto col = signs_->column(j);
      long s = 0;
      for (long i = 0; i < n; ++i) s += col[static_cast<std::size_t>(i)];
      acc[static_cast<std::size_t>(j)] += scale_ * static_cast<double>(s);
    }
    return;
  }
  for (long i = 0; i < rows_; ++i) {
    const double* row = dense_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_);
    for (long j = 0; j < cols_; ++j) acc[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j)];
  }
}

void PointSet::multiply(std::span<const double> v, std::span<double> out) const {
  if (v.size() != static_cast<std::size_t>(cols_) || out.size() != static_cast<std::size_t>(rows_)) {
    throw std::invalid_argument("PointSet::multiply: length mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  if (signs_ != nullptr) {
    const long n = signs_->rows();
    for (long j = 0; j < cols_; ++j) {
      const double vj = v[static_cast<std::size_t>(j)];
      if (vj == 0.0) continue;
      const auto col = signs_->column(j);
      for (long i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] += vj * static_cast<double>(col[static_cast<std::size_t>(i)]);
      }
    }
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] *= scale_;
    return;
  }
  for (long i = 0; i < rows_; ++i) {
    const double* row = dense_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_);
    double s = 0.0;
    for (long j = 0; j < cols_; ++j) s += row[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
}

void PointSet::multiply_transposed(std::span<const double> u, std::span<double> out) const {
  if (u.size() != static_cast<std::size_t>(rows_) || out.size() != static_cast<std::size_t>(cols_)) {
    throw std::invalid_argument("PointSet::multiply_transposed: length mismatch");
  }
  if (signs_ != nullptr) {
    const long n = signs_->rows();
    for (long j = 0; j < cols_; ++j) {
      const auto col = signs_->column(j);
      double s = 0.0;
      for (long i = 0; i < n; ++i) {
        s += static_cast<double>(col[static_cast<std::size_t>(i)]) * u[static_cast<std::size_t>(i)];
      }
      out[static_cast<std::size_t>(j)] = scale_ * s;
    }
    return;
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (long i = 0; i < rows_; ++i) {
    const double ui = u[static_cast<std::size_t>(i)];
    if (ui == 0.0) continue;
    const double* row = dense_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_);
    for (long j = 0; j < cols_; ++j) out[static_cast<std::size_t>(j)] += ui * row[static_cast<std::size_t>(j)];
  }
}

std::vector<double> PointSet::point(long i) const {
  std::vector<double> out(static_cast<std::size_t>(cols_));
  for (long j = 0; j < cols_; ++j) out[static_cast<std::size_t>(j)] = at(i, j);
  return out;
}

}  // namespace fpattack
