#pragma once

#include <vector>

#include "qsu2/half_int.hpp"
#include "qsu2/matrix.hpp"
#include "qsu2/scalar.hpp"

namespace qsu2 {

/// [x]_q = (q^x - q^-x) / (q - q^-1), returned as the Laurent polynomial
/// q^(x-1) + q^(x-3) + ... + q^(1-x).
inline Scalar qnum(int x) {
  if (x < 0) return -qnum(-x);
  std::vector<GaussRat> c(static_cast<std::size_t>(x > 0 ? 2 * x - 1 : 0));
  for (int k = 0; k < x; ++k) c[static_cast<std::size_t>(2 * k)] = GaussRat(1);
  return Scalar(LaurentPoly(1 - x, std::move(c)));
}

/// Diagonal of the q-trace weight at level l: q^(-2j) for j = -l, ..., l.
inline std::vector<Scalar> q_weight(HalfInt l) {
  std::vector<Scalar> w;
  w.reserve(static_cast<std::size_t>(l.dim()));
  for (int k = 0; k < l.dim(); ++k) w.push_back(Scalar::q_pow(-weight(l, k).twice()));
  return w;
}

/// Tr(D_q A) with D_q = q_weight(l).
inline Scalar q_trace(const Matrix<Scalar>& a, HalfInt l) {
  auto n = static_cast<std::size_t>(l.dim());
  if (a.rows() != n || a.cols() != n) throw DimensionError("q_trace: block is not (2l+1)x(2l+1)");
  Scalar acc;
  for (std::size_t k = 0; k < n; ++k)
    if (!a(k, k).is_zero()) acc += Scalar::q_pow(-weight(l, static_cast<int>(k)).twice()) * a(k, k);
  return acc;
}

}  // namespace qsu2
