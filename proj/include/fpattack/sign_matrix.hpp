#ifndef FPATTACK_SIGN_MATRIX_HPP
#define FPATTACK_SIGN_MATRIX_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace fpattack {

// Dense {-1,+1} matrix, column-major (columns contiguous).  Column-major
// because nearly every bulk operation here walks columns: per-column bias
// sampling, marked-column scans, column permutations, column means.
class SignMatrix {
 public:
  SignMatrix() = default;
  SignMatrix(long rows, long cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), std::int8_t{1}) {}

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  std::int8_t at(long i, long j) const { return a_[idx(i, j)]; }
  std::int8_t& at(long i, long j) { return a_[idx(i, j)]; }

  std::span<const std::int8_t> column(long j) const {
    return {a_.data() + idx(0, j), static_cast<std::size_t>(rows_)};
  }
  std::span<std::int8_t> column(long j) {
    return {a_.data() + idx(0, j), static_cast<std::size_t>(rows_)};
  }

  std::vector<std::int8_t> row(long i) const {
    std::vector<std::int8_t> out(static_cast<std::size_t>(cols_));
    for (long j = 0; j < cols_; ++j) out[static_cast<std::size_t>(j)] = at(i, j);
    return out;
  }

  bool operator==(const SignMatrix&) const = default;

 private:
  std::size_t idx(long i, long j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(rows_) + static_cast<std::size_t>(i);
  }
  long rows_ = 0;
  long cols_ = 0;
  std::vector<std::int8_t> a_;
};

}  // namespace fpattack

#endif
