#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hybrid {

/// Dense matrix over an exact field (GaussRat or ParamScalar): row reduction
/// and kernel computation, fully deterministic pivot choice.
template <class F>
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// In-place reduced row echelon form. Returns the rank.
  std::size_t rref() {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
      std::size_t pivot = rows_;
      for (std::size_t r = rank; r < rows_; ++r) {
        if (!at(r, col).is_zero()) {
          pivot = r;
          break;
        }
      }
      if (pivot == rows_) continue;
      if (pivot != rank)
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(pivot, c), at(rank, c));
      F inv = at(rank, col).inverse();
      for (std::size_t c = col; c < cols_; ++c) at(rank, c) = at(rank, c) * inv;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == rank || at(r, col).is_zero()) continue;
        F factor = at(r, col);
        for (std::size_t c = col; c < cols_; ++c)
          at(r, c) = at(r, c) - factor * at(rank, c);
      }
      ++rank;
    }
    return rank;
  }

  /// Kernel basis of the linear map x -> A x, one vector per free column,
  /// in reduced echelon form with pivot entry 1 at the free column.
  std::vector<std::vector<F>> nullspace() const {
    DenseMatrix<F> work = *this;
    std::size_t rank = work.rref();
    // locate pivot columns
    std::vector<std::size_t> pivot_col(rank);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t r = 0, c = 0; r < rank; ++r) {
      while (c < cols_ && work.at(r, c).is_zero()) ++c;
      if (c == cols_) throw std::logic_error("DenseMatrix: malformed echelon form");
      pivot_col[r] = c;
      is_pivot[c] = true;
    }
    std::vector<std::vector<F>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<F> v(cols_, F(0));
      v[free] = F(1);
      for (std::size_t r = 0; r < rank; ++r)
        v[pivot_col[r]] = F(0) - work.at(r, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::size_t rank() const {
    DenseMatrix<F> work = *this;
    return work.rref();
  }

 private:
  std::size_t rows_, cols_;
  std::vector<F> data_;
};

}  // namespace hybrid
