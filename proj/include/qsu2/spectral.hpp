#pragma once

// Spectral checks on finite truncations of ⊕_{l<=L} H^l.
//
// Ranks are computed exactly over Q(i) at a rational q0. Evaluating at a
// point can only lower the rank of a matrix over Q(i)(q), so callers that
// want the generic rank compare two points.

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

#include "qsu2/psido.hpp"

namespace qsu2 {

/// Coordinates of ⊕_{l<=L} H^l in a fixed order.
struct TruncatedBlockOperator {
  HalfInt L;
  std::vector<RawKey> index;
  std::map<RawKey, std::size_t> position;
  Matrix<GaussRat> matrix;  // evaluated at q0, column k = image of basis k

  static std::vector<RawKey> keys(HalfInt L) {
    std::vector<RawKey> out;
    for (int tw = 0; tw <= L.twice(); ++tw) {
      HalfInt l = HalfInt::from_twice(tw);
      for (int i = 0; i < l.dim(); ++i)
        for (int j = 0; j < l.dim(); ++j) out.push_back({l, i, j});
    }
    return out;
  }

  static std::size_t dimension(HalfInt L) {
    std::size_t n = 0;
    for (int tw = 0; tw <= L.twice(); ++tw) n += static_cast<std::size_t>((tw + 1) * (tw + 1));
    return n;
  }

  std::size_t dim() const { return index.size(); }
  std::size_t rank() const { return exact_rank(matrix); }
};

/// Assemble from column images given as coordinate maps. Throws
/// ConsistencyError if an image leaves the truncation.
template <class ImageFn>
TruncatedBlockOperator assemble(HalfInt L, const GaussRat& q0, ImageFn&& image) {
  TruncatedBlockOperator T;
  T.L = L;
  T.index = TruncatedBlockOperator::keys(L);
  for (std::size_t k = 0; k < T.index.size(); ++k) T.position[T.index[k]] = k;
  T.matrix = Matrix<GaussRat>(T.index.size(), T.index.size());
  for (std::size_t col = 0; col < T.index.size(); ++col) {
    for (const auto& [key, c] : image(T.index[col])) {
      auto it = T.position.find(key);
      if (it == T.position.end()) throw ConsistencyError("operator image leaves the truncation at level " + key.l.str());
      T.matrix(it->second, col) = eval_exact(c, q0);
    }
  }
  return T;
}

/// Scalar symbol through the definition path, in unitary coordinates.
inline TruncatedBlockOperator assemble_scalar(const Symbol& sigma, HalfInt L, const GaussRat& q0) {
  return assemble(L, q0, [&](const RawKey& k) { return apply(sigma, PwVector::basis(k.l, k.i, k.j)).coords(); });
}

// ---------------------------------------------------------------------------
// Finite rank

struct RankReport {
  std::size_t brute = 0;       // rank of the assembled matrix at L
  std::size_t brute_next = 0;  // same at L + 1/2
  std::size_t blockwise = 0;   // sum_l (2l+1) rank sigma(l)
  bool stable() const { return brute == brute_next; }
};

inline std::size_t block_rank(const Matrix<Scalar>& S, const GaussRat& q0) {
  return exact_rank(S.map([&](const Scalar& s) { return eval_exact(s, q0); }));
}

inline RankReport rank_of(const Symbol& sigma, HalfInt L, const GaussRat& q0 = GaussRat(mpq_class(1, 2))) {
  if (!sigma.is_scalar()) throw KindError("rank_of: scalar-valued symbol expected");
  RankReport r;
  r.brute = assemble_scalar(sigma, L, q0).rank();
  r.brute_next = assemble_scalar(sigma, L + kHalf, q0).rank();
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    r.blockwise += static_cast<std::size_t>(l.dim()) * block_rank(sigma.scalar_block(l), q0);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Compactness

/// h(t_ij t_ij*) at q0 for every (i, j) at level l.
inline Matrix<double> norm_weights(HalfInt l, double q0) {
  auto d = static_cast<std::size_t>(l.dim());
  Matrix<double> W(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      W(i, j) = eval(basis_pairing(l, static_cast<int>(i), static_cast<int>(j), static_cast<int>(i), static_cast<int>(j)), q0).real();
  return W;
}

inline Eigen::MatrixXcd numeric_block(const Symbol& sigma, HalfInt l, double q0) {
  auto S = sigma.scalar_block(l);
  Eigen::MatrixXcd M(l.dim(), l.dim());
  for (int r = 0; r < l.dim(); ++r)
    for (int c = 0; c < l.dim(); ++c) M(r, c) = eval(S(static_cast<std::size_t>(r), static_cast<std::size_t>(c)), q0);
  return M;
}

inline double op_norm(const Eigen::MatrixXcd& M) {
  if (M.size() == 0) return 0;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(M).singularValues()(0);
}

struct CompactnessReport {
  double lhs = 0;           // max ratio |T f|^2 / |f|^2 over the trials
  double rhs = 0;           // sup_{n<l<=L} |sigma(l)|_op^2
  double rhs_weighted = 0;  // sup of |W^1/2 sigma W^-1/2|_op^2, the sharp bound
  bool holds() const { return lhs <= rhs * (1 + 1e-12) + 1e-15; }
  bool holds_weighted() const { return lhs <= rhs_weighted * (1 + 1e-12) + 1e-15; }
};

/// T_{sigma - g_n sigma} on random f supported in n < l <= L. Uses the closed
/// form T(t_ab) = sum_c sigma_cb t_ac in unitary coordinates and the diagonal
/// Haar norm of the basis.
inline CompactnessReport compactness_gap(const Symbol& sigma, HalfInt n, HalfInt L, double q0, int trials,
                                         std::mt19937_64& rng) {
  if (!sigma.is_scalar()) throw KindError("compactness_gap: scalar-valued symbol expected");
  CompactnessReport r;
  std::map<HalfInt, Eigen::MatrixXcd> blocks;
  std::map<HalfInt, Matrix<double>> weights;
  for (int tw = n.twice() + 1; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    auto B = numeric_block(sigma, l, q0);
    auto W = norm_weights(l, q0);
    double nrm = op_norm(B);
    r.rhs = std::max(r.rhs, nrm * nrm);
    // Rows of f are independent; the norm weight of t_ac depends on c only.
    Eigen::VectorXd w(l.dim());
    for (int c = 0; c < l.dim(); ++c) w(c) = std::sqrt(W(0, static_cast<std::size_t>(c)));
    Eigen::MatrixXcd Bw = w.asDiagonal() * B * w.cwiseInverse().asDiagonal();
    double nw = op_norm(Bw);
    r.rhs_weighted = std::max(r.rhs_weighted, nw * nw);
    blocks.emplace(l, std::move(B));
    weights.emplace(l, std::move(W));
  }
  if (blocks.empty()) return r;
  std::normal_distribution<double> g;
  for (int t = 0; t < trials; ++t) {
    double num = 0, den = 0;
    for (const auto& [l, B] : blocks) {
      const auto& W = weights.at(l);
      const int d = l.dim();
      Eigen::MatrixXcd X(d, d);  // X(a, b) = coefficient of t_ab
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) X(a, b) = {g(rng), g(rng)};
      Eigen::MatrixXcd Y = X * B.transpose();  // Y(a, c) = sum_b sigma_cb X(a, b)
      for (int a = 0; a < d; ++a)
        for (int c = 0; c < d; ++c) {
          double wt = W(static_cast<std::size_t>(a), static_cast<std::size_t>(c));
          num += std::norm(Y(a, c)) * wt;
          den += std::norm(X(a, c)) * wt;
        }
    }
    r.lhs = std::max(r.lhs, num / den);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Eigenvalues from row sums

struct EigenCheck {
  Scalar lambda;
  bool residual_zero = false;
  int multiplicity = 0;  // number of rows i whose vector passed
};

/// apply(sigma, sum_j t_ij) = lambda sum_j t_ij for every i, exactly.
inline EigenCheck row_sum_eigencheck(const Symbol& sigma, HalfInt l) {
  auto S = sigma.scalar_block(l);
  const auto d = static_cast<std::size_t>(l.dim());
  EigenCheck r;
  for (std::size_t i = 0; i < d; ++i) {
    Scalar s;
    for (std::size_t j = 0; j < d; ++j) s += S(i, j);
    if (i == 0)
      r.lambda = s;
    else if (!(s == r.lambda))
      throw ConsistencyError("row_sum_eigencheck: row sums of sigma(" + l.str() + ") differ");
  }
  r.residual_zero = true;
  for (int i = 0; i < l.dim(); ++i) {
    PwVector v;
    for (int j = 0; j < l.dim(); ++j) v.add({l, i, j}, Scalar(1));
    bool ok = (apply(sigma, v) - v.scaled(r.lambda)).is_zero();
    r.residual_zero = r.residual_zero && ok;
    if (ok) ++r.multiplicity;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Fredholm index

/// sigma(l) = t^m_rs I for l < N and I for l >= N, in the raw gauge.
inline Symbol switch_symbol(HalfInt N, HalfInt m, HalfInt r, HalfInt s) {
  AlgElem t = corep(m)(slot(m, r), slot(m, s));
  return Symbol::algebra_rule([N, t](HalfInt l) {
    auto d = static_cast<std::size_t>(l.dim());
    return Matrix<AlgElem>::identity(d, l < N ? t : AlgElem(Scalar(1)));
  });
}

struct FredholmReport {
  HalfInt N, m;
  HalfInt L;                 // primary truncation
  std::size_t dim = 0;
  std::size_t dim_ker = 0;
  std::size_t dim_coker = 0;
  long oracle = 0;           // dim ker - dim coker
  std::size_t dim_ker_next = 0;  // at L + 1/2
  long oracle_next = 0;
  bool points_agree = true;  // rank identical at the two rational points
  long sum_formula = 0;
  mpq_class closed_form;
  bool reproducible() const { return oracle == oracle_next && dim_ker == dim_ker_next; }
  bool agree_sum() const { return oracle == sum_formula; }
  bool agree_closed() const { return mpq_class(oracle) == closed_form; }
};

/// sum_{l=N}^{N+m} (2l+1)^2 in half-integer steps.
inline long index_sum_formula(HalfInt N, HalfInt m) {
  long s = 0;
  for (int j = N.twice() + 1; j <= N.twice() + m.twice() + 1; ++j) s += static_cast<long>(j) * j;
  return s;
}

/// (4/3) m^2 (m-1) + 4N(2N + Nm - 1).
inline mpq_class index_closed_form(HalfInt N, HalfInt m) {
  mpq_class M(m.twice(), 2), n(N.twice(), 2);
  mpq_class v = mpq_class(4, 3) * M * M * (M - 1) + 4 * n * (2 * n + n * M - 1);
  v.canonicalize();
  return v;
}

inline TruncatedBlockOperator assemble_algebra(const Symbol& sigma, HalfInt L, const GaussRat& q0) {
  auto fo_reach = HalfInt(0);
  for (int tw = 0; tw <= L.twice(); ++tw) {
    auto S = sigma.raw_algebra_block(HalfInt::from_twice(tw));
    for (std::size_t i = 0; i < S.rows(); ++i)
      for (std::size_t j = 0; j < S.cols(); ++j) fo_reach = std::max(fo_reach, level_bound(S(i, j)));
  }
  return assemble(L, q0, [&](const RawKey& k) {
    HalfInt lo = k.l > fo_reach ? k.l - fo_reach : HalfInt(0);
    return raw_expand(raw_action(sigma, k.l, k.i, k.j), lo, k.l + fo_reach);
  });
}

/// The switching entry defaults to t^m_{-m,-m} = a^(2m).
inline FredholmReport fredholm_index(HalfInt N, HalfInt m, std::optional<HalfInt> L = std::nullopt,
                                     std::optional<std::pair<HalfInt, HalfInt>> rs = std::nullopt) {
  FredholmReport rep;
  rep.N = N;
  rep.m = m;
  rep.L = L.value_or(N + m + HalfInt(2));
  auto [r, s] = rs.value_or(std::pair{-m, -m});
  Symbol sigma = switch_symbol(N, m, r, s);
  const GaussRat q1(mpq_class(1, 2)), q2(mpq_class(1, 3));
  auto T = assemble_algebra(sigma, rep.L, q1);
  rep.dim = T.dim();
  std::size_t rank = T.rank();
  rep.points_agree = assemble_algebra(sigma, rep.L, q2).rank() == rank;
  rep.dim_ker = rep.dim - rank;
  rep.dim_coker = rep.dim - rank;
  rep.oracle = static_cast<long>(rep.dim_ker) - static_cast<long>(rep.dim_coker);
  auto T2 = assemble_algebra(sigma, rep.L + kHalf, q1);
  std::size_t rank2 = T2.rank();
  rep.dim_ker_next = T2.dim() - rank2;
  rep.oracle_next = static_cast<long>(rep.dim_ker_next) - static_cast<long>(T2.dim() - rank2);
  rep.sum_formula = index_sum_formula(N, m);
  rep.closed_form = index_closed_form(N, m);
  return rep;
}

}  // namespace qsu2
