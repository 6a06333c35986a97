#pragma once

// Composition Formula II: principal symbol of T_beta o T_sigma for sigma
// algebra-valued of Fourier order m and beta scalar.
//
// Since T_beta f = f_(1) phi(f_(2)) with phi(raw_cb) = beta_raw_cb, and
// sum_a raw_as S^-1(raw_ea) = delta_se, the symbol in the raw gauge is
//
//   gamma_eb(l) = sum_c sum_(u,v) s^uv_cb sum_w sum_p
//                 Ct(m, l, p; w, v, e, c) beta_raw(p)_(w+e, v+c) raw^m_uw
//
// where sigma_cb = sum_(u,v) s^uv_cb raw^m_uv and Ct are the raw
// Clebsch-Gordan coefficients. Every p in |l-m| .. l+m contributes.
//
// Values that involve beta in the raw gauge carry square roots of rho
// ratios, so everything here is numeric at a fixed q0 and kept as
// coordinates in the raw Peter-Weyl basis, which stays well conditioned.

#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "qsu2/psido.hpp"

namespace qsu2 {

using NumCoords = std::map<RawKey, std::complex<double>>;

inline void axpy(NumCoords& y, std::complex<double> a, const NumCoords& x) {
  for (const auto& [k, v] : x) y[k] += a * v;
}

inline NumCoords numeric_coords(const std::map<RawKey, Scalar>& c, double q0) {
  NumCoords out;
  for (const auto& [k, v] : c) out[k] = eval(v, q0);
  return out;
}

inline double max_abs(const NumCoords& c) {
  double m = 0;
  for (const auto& [k, v] : c) m = std::max(m, std::abs(v));
  return m;
}

inline NumCoords restrict_level(const NumCoords& c, HalfInt l) {
  NumCoords out;
  for (const auto& [k, v] : c)
    if (k.l == l) out[k] = v;
  return out;
}

inline NumCoords difference(const NumCoords& a, const NumCoords& b) {
  NumCoords out = a;
  axpy(out, -1.0, b);
  return out;
}

/// Exact raw coordinates of raw_x S^-1(raw^l_ea), cached.
inline const std::map<RawKey, Scalar>& product_with_antipode(const RawKey& x, HalfInt l, int e, int a) {
  using Key = std::tuple<RawKey, HalfInt, int, int>;
  static std::mutex mu;
  static std::map<Key, std::map<RawKey, Scalar>> cache;
  Key key{x, l, e, a};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  HalfInt lo = x.l > l ? x.l - l : l - x.l;
  auto coords = raw_expand(corep(x.l)(x.i, x.j) * antipode_inverse(corep(l)(e, a)), lo, x.l + l);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(coords)).first->second;
}

/// Operator given on raw basis elements, numerically.
using NumOp = std::function<NumCoords(const RawKey&)>;

inline NumCoords apply_num(const NumOp& op, const NumCoords& f) {
  NumCoords out;
  for (const auto& [k, v] : f) axpy(out, v, op(k));
  return out;
}

/// Numeric symbol (raw gauge) of any operator: gamma_eb = sum_a T(raw_ab) S^-1(raw_ea).
using NumSymbolBlock = Matrix<NumCoords>;

inline std::map<HalfInt, NumSymbolBlock> numeric_symbol_of(const NumOp& op, HalfInt L, double q0) {
  std::map<HalfInt, NumSymbolBlock> out;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    const int d = l.dim();
    NumSymbolBlock G(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        NumCoords img = op({l, a, b});
        for (int e = 0; e < d; ++e)
          for (const auto& [x, v] : img)
            axpy(G(static_cast<std::size_t>(e), static_cast<std::size_t>(b)), v,
                 numeric_coords(product_with_antipode(x, l, e, a), q0));
      }
    out.emplace(l, std::move(G));
  }
  return out;
}

/// T_beta on raw basis elements: raw^p_xy -> sum_d beta_raw(p)_dy raw^p_xd.
inline NumOp scalar_num_op(const Symbol& beta, double q0) {
  return [beta, q0](const RawKey& k) {
    auto B = beta.raw_numeric_block(k.l, q0);
    NumCoords out;
    for (int d = 0; d < k.l.dim(); ++d) {
      auto v = B(static_cast<std::size_t>(d), static_cast<std::size_t>(k.j));
      if (v != 0.0) out[{k.l, k.i, d}] += v;
    }
    return out;
  };
}

/// An algebra-valued (or surd-free scalar) symbol on raw basis elements.
inline NumOp algebra_num_op(const Symbol& sigma, double q0) {
  return [sigma, q0](const RawKey& k) { return numeric_coords(raw_expand(raw_action(sigma, k.l, k.i, k.j)), q0); };
}

inline NumOp compose(const NumOp& outer, const NumOp& inner_op) {
  return [outer, inner_op](const RawKey& k) { return apply_num(outer, inner_op(k)); };
}

enum class PrincipalVariant {
  all_levels,   // sum over the whole Clebsch-Gordan band
  top_only,     // only p = l + m, as in the printed derivation
};

/// Principal symbol of T_beta o T_sigma by the Clebsch-Gordan formula above.
/// sigma must have entries supported on the single level m.
inline std::map<HalfInt, NumSymbolBlock> principal_symbol_compose(const Symbol& sigma, HalfInt m, const Symbol& beta,
                                                                  HalfInt L, double q0,
                                                                  PrincipalVariant variant = PrincipalVariant::all_levels) {
  if (!beta.is_scalar()) throw KindError("principal_symbol_compose: beta must be scalar-valued");
  std::map<HalfInt, NumSymbolBlock> out;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    const int d = l.dim();
    auto S = sigma.algebra_block(l);
    NumSymbolBlock G(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    std::map<HalfInt, Matrix<std::complex<double>>> braw;
    auto beta_raw = [&](HalfInt p) -> const Matrix<std::complex<double>>& {
      auto it = braw.find(p);
      if (it == braw.end()) it = braw.emplace(p, beta.raw_numeric_block(p, q0)).first;
      return it->second;
    };
    for (int c = 0; c < d; ++c)
      for (int b = 0; b < d; ++b) {
        const AlgElem& entry = S(static_cast<std::size_t>(c), static_cast<std::size_t>(b));
        if (entry.is_zero()) continue;
        for (const auto& [uv, s] : raw_expand(entry)) {
          if (uv.l != m) throw KindError("principal_symbol_compose: sigma entry outside level " + m.str());
          HalfInt v = weight(m, uv.j);
          std::complex<double> sv = eval(s, q0);
          for (int e = 0; e < d; ++e)
            for (int wslot = 0; wslot < m.dim(); ++wslot) {
              HalfInt w = weight(m, wslot);
              auto row = clebsch_gordan(m, l, w, v, weight(l, e), weight(l, c));
              std::complex<double> acc = 0;
              for (const auto& ce : row.entries) {
                if (variant == PrincipalVariant::top_only && ce.p != l + m) continue;
                const auto& B = beta_raw(ce.p);
                int x = slot(ce.p, w + weight(l, e)), y = slot(ce.p, v + weight(l, c));
                acc += eval(ce.reduced, q0) * B(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
              }
              if (acc != 0.0) G(static_cast<std::size_t>(e), static_cast<std::size_t>(b))[{m, uv.i, wslot}] += sv * acc;
            }
        }
      }
    out.emplace(l, std::move(G));
  }
  return out;
}

/// Symbol of T_sigma o T_beta (beta applied first): sigma beta_raw, blockwise.
inline std::map<HalfInt, NumSymbolBlock> outer_symbol_compose(const Symbol& sigma, const Symbol& beta, HalfInt L,
                                                              double q0) {
  std::map<HalfInt, NumSymbolBlock> out;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    const auto d = static_cast<std::size_t>(l.dim());
    auto S = sigma.algebra_block(l);
    auto B = beta.raw_numeric_block(l, q0);
    NumSymbolBlock G(d, d);
    for (std::size_t e = 0; e < d; ++e)
      for (std::size_t c = 0; c < d; ++c) {
        if (S(e, c).is_zero()) continue;
        NumCoords sc = numeric_coords(raw_expand(S(e, c)), q0);
        for (std::size_t b = 0; b < d; ++b)
          if (B(c, b) != 0.0) axpy(G(e, b), B(c, b), sc);
      }
    out.emplace(l, std::move(G));
  }
  return out;
}

/// Largest level-m discrepancy between two numeric symbols, and the largest
/// entry component outside level m in `a`.
struct SymbolComparison {
  double top_residual = 0;
  double off_level = 0;
};

inline SymbolComparison compare_top(const std::map<HalfInt, NumSymbolBlock>& a,
                                    const std::map<HalfInt, NumSymbolBlock>& b, HalfInt m) {
  SymbolComparison r;
  for (const auto& [l, A] : a) {
    const auto& B = b.at(l);
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) {
        NumCoords top = restrict_level(A(i, j), m);
        r.top_residual = std::max(r.top_residual, max_abs(difference(top, restrict_level(B(i, j), m))));
        r.off_level = std::max(r.off_level, max_abs(difference(A(i, j), top)));
      }
  }
  return r;
}

}  // namespace qsu2
