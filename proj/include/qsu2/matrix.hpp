#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qsu2/errors.hpp"

namespace qsu2 {

/// Small dense row-major matrix over an arbitrary coefficient type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& one, const T& zero = T{}) {
    Matrix m(n, n, zero);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = f((*this)(r, c));
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Product over any pair of types with a multiplication into an additive R.
template <class A, class B>
auto matmul(const Matrix<A>& x, const Matrix<B>& y) {
  using R = decltype(std::declval<const A&>() * std::declval<const B&>());
  if (x.cols() != y.rows()) throw DimensionError("matmul: inner dimensions differ");
  Matrix<R> out(x.rows(), y.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < y.cols(); ++c) {
      R acc{};
      for (std::size_t k = 0; k < x.cols(); ++k) acc = acc + x(r, k) * y(k, c);
      out(r, c) = acc;
    }
  return out;
}

/// Rank by Gaussian elimination over an exact field.
/// The field type needs is_zero(), operator-, operator*, operator/.
template <class F>
std::size_t exact_rank(Matrix<F> m) {
  std::size_t rank = 0;
  const std::size_t R = m.rows(), C = m.cols();
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t piv = R;
    for (std::size_t r = rank; r < R; ++r)
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv == R) continue;
    if (piv != rank)
      for (std::size_t c = col; c < C; ++c) std::swap(m(piv, c), m(rank, c));
    F inv = F(1) / m(rank, col);
    for (std::size_t r = rank + 1; r < R; ++r) {
      if (m(r, col).is_zero()) continue;
      F f = m(r, col) * inv;
      for (std::size_t c = col; c < C; ++c)
        if (!m(rank, c).is_zero()) m(r, c) = m(r, c) - f * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

}  // namespace qsu2
