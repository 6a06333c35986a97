#pragma once

// q-Fourier transform on O(SU_q(2)).
//
// The true coefficient is fhat(l)_mn = h(f t_nm*) = sqrt(rho_n / rho_m) h(f raw_nm*).
// Blocks store the reduced value h(f raw_nm*); the radicand rho_n / rho_m is
// implied by the position, so inversion and Plancherel pair the square roots
// and stay in the exact field.

#include <map>
#include <utility>

#include "qsu2/corep.hpp"

namespace qsu2 {

struct FourierCoeffs {
  std::map<HalfInt, Matrix<Scalar>> blocks;  // reduced entries
  HalfInt max_level;

  /// Squared prefactor of entry (m, n) at level l.
  static Scalar radicand(HalfInt l, int m, int n) { return corep(l).ratio(n, m); }

  /// fhat(l)_mn evaluated at q0, prefactor included.
  std::complex<double> numeric(HalfInt l, int m, int n, double q0) const {
    const auto& b = blocks.at(l);
    return eval(b(static_cast<std::size_t>(m), static_cast<std::size_t>(n)), q0) *
           corep(l).prefactor(n, m, q0);
  }

  bool is_zero() const {
    for (const auto& [l, b] : blocks)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          if (!b(r, c).is_zero()) return false;
    return true;
  }
};

inline FourierCoeffs transform(const AlgElem& f, HalfInt L) {
  FourierCoeffs F;
  F.max_level = L;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    const auto& M = corep(l);
    const auto D = static_cast<std::size_t>(M.dim());
    Matrix<Scalar> b(D, D);
    for (std::size_t m = 0; m < D; ++m)
      for (std::size_t n = 0; n < D; ++n) b(m, n) = haar_product(f, M.raw_star(n, m));
    F.blocks.emplace(l, std::move(b));
  }
  return F;
}

inline FourierCoeffs transform(const AlgElem& f) { return transform(f, level_bound(f)); }

/// f = sum_l [2l+1]_q Tr(D_q fhat(l) T^l), i.e.
/// f = sum_l [2l+1]_q sum_ij q^(-2j) (rho_i / rho_j) Ft_ji raw_ij.
inline AlgElem inverse(const FourierCoeffs& F) {
  AlgElem f;
  for (const auto& [l, b] : F.blocks) {
    const auto& M = corep(l);
    const Scalar dimq = qnum(l.dim());
    for (int i = 0; i < M.dim(); ++i)
      for (int j = 0; j < M.dim(); ++j) {
        const Scalar& v = b(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
        if (v.is_zero()) continue;
        Scalar c = dimq * Scalar::q_pow(-weight(l, j).twice()) * M.ratio(i, j) * v;
        f += M(i, j).scaled(c);
      }
  }
  return f;
}

/// (h(f g*), sum_l [2l+1]_q Tr_q(fhat(l) ghat(l)*)).
inline std::pair<Scalar, Scalar> plancherel_pair(const AlgElem& f, const AlgElem& g, HalfInt L) {
  Scalar lhs = haar_product(f, star(g));
  FourierCoeffs F = transform(f, L), G = transform(g, L);
  Scalar rhs;
  for (const auto& [l, fb] : F.blocks) {
    const auto& gb = G.blocks.at(l);
    const auto& M = corep(l);
    Scalar acc;
    // Tr(D_q A B*) = sum_j q^(-2j) sum_i A_ji conj(B_ji); the two prefactors
    // sqrt(rho_i / rho_j) multiply to rho_i / rho_j.
    for (int j = 0; j < M.dim(); ++j)
      for (int i = 0; i < M.dim(); ++i) {
        const auto J = static_cast<std::size_t>(j), I = static_cast<std::size_t>(i);
        if (fb(J, I).is_zero() || gb(J, I).is_zero()) continue;
        acc += Scalar::q_pow(-weight(l, j).twice()) * M.ratio(i, j) * fb(J, I) * gb(J, I).conj();
      }
    rhs += qnum(l.dim()) * acc;
  }
  return {lhs, rhs};
}

inline std::pair<Scalar, Scalar> plancherel_pair(const AlgElem& f, const AlgElem& g) {
  return plancherel_pair(f, g, std::max(level_bound(f), level_bound(g)));
}

/// Tr^0(f) = fhat(0) = h(f).
inline Scalar nc_integral(const AlgElem& f) { return haar(f); }

}  // namespace qsu2
