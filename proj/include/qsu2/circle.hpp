#pragma once

// Woronowicz's representation pi_nu on L^2(S^1) as periodic operators.
//
// Basis order: e_{2k} = e^{-ik theta}, e_{2k-1} = e^{ik theta}. A periodic
// symbol A(n) e^{is(n) theta} acts on frequency n as multiplication by A(n)
// and a shift to n + s(n), so every operator is an exact matrix on the
// truncated basis e_0 .. e_{2K}.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qsu2/psido.hpp"

namespace qsu2::circle {

using cplx = std::complex<double>;

inline int freq_of(int idx) { return idx % 2 == 0 ? -idx / 2 : (idx + 1) / 2; }
inline int index_of(int freq) { return freq <= 0 ? -2 * freq : 2 * freq - 1; }

struct SymbolValue {
  cplx amplitude;
  int shift = 0;  // exponent k of the phase e^{ik theta}
};

struct PeriodicSymbol {
  std::function<SymbolValue(int)> rule;
  cplx nu{1, 0};
  double q0 = 0.5;
  SymbolValue operator()(int n) const { return rule(n); }
};

inline void check_params(cplx nu, double q0) {
  if (std::abs(std::abs(nu) - 1) > 1e-12) throw Error("circle symbol: |nu| must be 1");
  if (!(q0 > 0 && q0 < 1)) throw Error("circle symbol: q0 must lie in (0, 1)");
}

/// sigma_c(n) = q^{-2n} nu for n <= 0 and q^{2n-1} nu for n > 0.
inline PeriodicSymbol symbol_c(cplx nu, double q0) {
  check_params(nu, q0);
  return {[nu, q0](int n) -> SymbolValue {
            return {nu * std::pow(q0, n <= 0 ? -2 * n : 2 * n - 1), 0};
          },
          nu, q0};
}

enum class PhaseVariant {
  corrected,  // e^{-(2n-1) i theta} for n > 0, lands on e_{2n-2}
  printed,    // e^{-(2n+1) i theta} for n > 0, lands on e_{2n+2}
};

/// sigma_a(n): sqrt(1 - q^{2(2n-1)}) with the n > 0 phase, sqrt(1 - q^{-4n})
/// e^{-2n i theta} for n < 0, and 0 at n = 0. nu does not enter.
inline PeriodicSymbol symbol_a(cplx nu, double q0, PhaseVariant variant = PhaseVariant::corrected) {
  check_params(nu, q0);
  return {[q0, variant](int n) -> SymbolValue {
            if (n == 0) return {0, 0};
            if (n < 0) return {std::sqrt(1 - std::pow(q0, -4 * n)), -2 * n};
            int shift = variant == PhaseVariant::corrected ? -(2 * n - 1) : -(2 * n + 1);
            return {std::sqrt(1 - std::pow(q0, 2 * (2 * n - 1))), shift};
          },
          nu, q0};
}

struct PeriodicResult {
  std::map<int, cplx> coeffs;  // frequency -> coefficient
  bool boundary_loss = false;  // some output frequency left |n| <= K
};

inline PeriodicResult apply_periodic(const PeriodicSymbol& s, const std::map<int, cplx>& coeffs, int K) {
  PeriodicResult r;
  for (const auto& [n, c] : coeffs) {
    if (std::abs(n) > K) throw DimensionError("apply_periodic: input frequency beyond the cutoff");
    auto v = s(n);
    if (v.amplitude == cplx(0)) continue;
    int out = n + v.shift;
    if (std::abs(out) > K) {
      r.boundary_loss = true;
      continue;
    }
    r.coeffs[out] += c * v.amplitude;
  }
  return r;
}

/// Matrix on e_0 .. e_{2K}. Column j is the image of e_j; `lost[j]` marks
/// columns whose image left the truncation.
struct TruncatedOperator {
  int K = 0;
  Eigen::MatrixXcd matrix;
  std::vector<bool> lost;

  int size() const { return 2 * K + 1; }
  /// Columns 0 .. 2K-2 are interior.
  int interior_end() const { return 2 * K - 2; }

  TruncatedOperator adjoint() const { return {K, matrix.adjoint(), std::vector<bool>(lost.size(), false)}; }
};

inline TruncatedOperator truncate(const PeriodicSymbol& s, int K) {
  TruncatedOperator T{K, Eigen::MatrixXcd::Zero(2 * K + 1, 2 * K + 1), std::vector<bool>(static_cast<std::size_t>(2 * K + 1), false)};
  for (int j = 0; j <= 2 * K; ++j) {
    auto r = apply_periodic(s, {{freq_of(j), 1.0}}, K);
    T.lost[static_cast<std::size_t>(j)] = r.boundary_loss;
    for (const auto& [n, c] : r.coeffs) T.matrix(index_of(n), j) += c;
  }
  return T;
}

/// Largest column norm of M over the interior columns.
inline double interior_residual(const Eigen::MatrixXcd& M, int K) {
  double m = 0;
  for (int j = 0; j <= 2 * K - 2; ++j) m = std::max(m, M.col(j).norm());
  return m;
}

struct ResidualLine {
  std::string relation;
  double max_residual = 0;
  int K = 0;
  double q0 = 0;
  std::pair<int, int> interior_range;
};

/// pi(a), pi(c) and their adjoints as truncated matrices.
struct Represented {
  Eigen::MatrixXcd a, c, as, cs;
  int K;
};

inline Represented represent(double q0, cplx nu, int K, PhaseVariant variant = PhaseVariant::corrected) {
  auto A = truncate(symbol_a(nu, q0, variant), K);
  auto C = truncate(symbol_c(nu, q0), K);
  return {A.matrix, C.matrix, A.matrix.adjoint(), C.matrix.adjoint(), K};
}

/// Target action pi(a) e_n = sqrt(1 - q^{2n}) e_{n-1}, pi(c) e_n = q^n nu e_n,
/// and the adjoint actions, compared column by column.
inline std::vector<ResidualLine> woronowicz_residuals(double q0, cplx nu, int K,
                                                      PhaseVariant variant = PhaseVariant::corrected) {
  if (K < 8) throw DimensionError("woronowicz_residuals: K >= 8 required");
  auto R = represent(q0, nu, K, variant);
  const int n = 2 * K + 1;
  Eigen::MatrixXcd Ea = Eigen::MatrixXcd::Zero(n, n), Ec = Ea, Eas = Ea, Ecs = Ea;
  for (int j = 0; j < n; ++j) {
    if (j >= 1) Ea(j - 1, j) = std::sqrt(1 - std::pow(q0, 2 * j));
    Ec(j, j) = std::pow(q0, j) * nu;
    Ecs(j, j) = std::pow(q0, j) * std::conj(nu);
    if (j + 1 < n) Eas(j + 1, j) = std::sqrt(1 - std::pow(q0, 2 * j + 2));
  }
  std::pair<int, int> range{0, 2 * K - 2};
  return {
      {"pi(a)", interior_residual(R.a - Ea, K), K, q0, range},
      {"pi(c)", interior_residual(R.c - Ec, K), K, q0, range},
      {"pi(a*)", interior_residual(R.as - Eas, K), K, q0, range},
      {"pi(c*)", interior_residual(R.cs - Ecs, K), K, q0, range},
  };
}

/// The seven defining relations on the represented operators.
inline std::vector<ResidualLine> relation_residuals(double q0, cplx nu, int K,
                                                    PhaseVariant variant = PhaseVariant::corrected) {
  auto R = represent(q0, nu, K, variant);
  const auto I = Eigen::MatrixXcd::Identity(2 * K + 1, 2 * K + 1);
  const double q = q0;
  std::pair<int, int> range{0, 2 * K - 2};
  auto line = [&](std::string name, const Eigen::MatrixXcd& M) {
    return ResidualLine{std::move(name), interior_residual(M, K), K, q0, range};
  };
  return {
      line("ac = q ca", R.a * R.c - q * R.c * R.a),
      line("ac* = q c*a", R.a * R.cs - q * R.cs * R.a),
      line("ca* = q a*c", R.c * R.as - q * R.as * R.c),
      line("c*a* = q a*c*", R.cs * R.as - q * R.as * R.cs),
      line("c*c = cc*", R.cs * R.c - R.c * R.cs),
      line("aa* + q^2 c*c = 1", R.a * R.as + q * q * R.cs * R.c - I),
      line("a*a + c*c = 1", R.as * R.a + R.cs * R.c - I),
  };
}

// ---------------------------------------------------------------------------
// X_z products

using Block2 = std::array<Eigen::MatrixXcd, 4>;  // (1,1), (1,2), (2,1), (2,2)

/// X_z = [[pi_z(a), -q pi_z(c*)], [pi_z(c), pi_z(a*)]].
inline Block2 su_matrix(cplx z, double q0, int K) {
  auto R = represent(q0, z, K);
  return {R.a, -q0 * R.cs, R.c, R.as};
}

inline Block2 block_product(const Block2& x, const Block2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

/// The stated entries: X11 = pi_{zz'}(a) applied to
/// sqrt(1-q^{2n}) e_{n-1} - conj(z) z' q^{2n+1} / sqrt(1-q^{2n+2}) e_{n+1},
/// X21 = pi_{zz'}(c) applied to sqrt(1-q^{2n}) conj(z') e_{n-1} + sqrt(1-q^{2n+2}) conj(z) / q e_{n+1},
/// and the matrix [[X11, -X21*], [X21, X11*]].
inline Block2 su_matrix_product_stated(cplx z, cplx zp, double q0, int K) {
  auto R = represent(q0, z * zp, K);
  const int n = 2 * K + 1;
  Eigen::MatrixXcd V11 = Eigen::MatrixXcd::Zero(n, n), V21 = V11;
  for (int j = 0; j < n; ++j) {
    if (j >= 1) {
      V11(j - 1, j) = std::sqrt(1 - std::pow(q0, 2 * j));
      V21(j - 1, j) = std::sqrt(1 - std::pow(q0, 2 * j)) * std::conj(zp);
    }
    if (j + 1 < n) {
      V11(j + 1, j) = -std::conj(z) * zp * std::pow(q0, 2 * j + 1) / std::sqrt(1 - std::pow(q0, 2 * j + 2));
      V21(j + 1, j) = std::sqrt(1 - std::pow(q0, 2 * j + 2)) * std::conj(z) / q0;
    }
  }
  Eigen::MatrixXcd X11 = R.a * V11, X21 = R.c * V21;
  return {X11, -X21.adjoint(), X21, X11.adjoint()};
}

struct XProductReport {
  Block2 direct, stated;
  std::array<double, 4> residual{};  // per block, interior columns
  std::array<double, 4> magnitude{};  // interior size of each direct block
};

inline XProductReport su_matrix_product(cplx z, cplx zp, double q0, int K) {
  XProductReport r;
  r.direct = block_product(su_matrix(z, q0, K), su_matrix(zp, q0, K));
  r.stated = su_matrix_product_stated(z, zp, q0, K);
  for (std::size_t b = 0; b < 4; ++b) {
    r.residual[b] = interior_residual(r.direct[b] - r.stated[b], K);
    r.magnitude[b] = interior_residual(r.direct[b], K);
  }
  return r;
}

/// Residual of the (1,2) block against -q^2 X21*, the form the direct product takes.
inline double x12_scaled_residual(cplx z, cplx zp, double q0, int K) {
  auto r = su_matrix_product(z, zp, q0, K);
  Eigen::MatrixXcd alt = q0 * q0 * r.stated[1];
  return interior_residual(r.direct[1] - alt, K);
}

// ---------------------------------------------------------------------------
// Demonstration for the transcendence remark

/// |P(pi(c)) e_1| for P(x) = sum_k r_k x^k at nu, which vanishes when P(q0) = 0
/// and nu = 1.
inline double transcendence_demo(const std::vector<double>& r, double q0, cplx nu, int K = 8) {
  auto C = truncate(symbol_c(nu, q0), K).matrix;
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(C.rows(), C.cols()), pw = Eigen::MatrixXcd::Identity(C.rows(), C.cols());
  for (double rk : r) {
    P += rk * pw;
    pw = pw * C;
  }
  return P.col(1).norm();
}

// ---------------------------------------------------------------------------
// Regular representation against psido operators

/// phi_v(t_ij) = lambda t_ij; returns lambda after checking the eigen-relation
/// on the raw element.
inline Scalar regular_eigenvalue(const Scalar& v, HalfInt l, int i, int j) {
  const AlgElem& t = corep(l)(i, j);
  AlgElem img = regular_rep(v, t);
  Scalar lambda = raw_coordinate(img, l, i, j);
  if (!(img == t.scaled(lambda))) throw ConsistencyError("regular_rep: t_ij is not an eigenvector");
  return lambda;
}

inline PwVector regular_rep(const Scalar& v, const PwVector& f) {
  PwVector out;
  for (const auto& [k, c] : f.coords()) out.add(k, c * regular_eigenvalue(v, k.l, k.i, k.j));
  return out;
}

struct InvarianceReport {
  bool commutes = true;
  std::vector<RawKey> failing;  // basis elements where T phi_v != phi_v T
  bool prediction_matches = true;  // failures exactly where sigma_cb != 0 and v^(b-c) != 1
};

/// T_sigma phi_v = phi_v T_sigma on every basis element up to L.
inline InvarianceReport regular_invariance(const Symbol& sigma, const Scalar& v, HalfInt L) {
  InvarianceReport r;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    auto S = sigma.scalar_block(l);
    for (int i = 0; i < l.dim(); ++i)
      for (int j = 0; j < l.dim(); ++j) {
        auto e = PwVector::basis(l, i, j);
        bool ok = apply(sigma, regular_rep(v, e)) == regular_rep(v, apply(sigma, e));
        bool predicted = true;
        for (int c = 0; c < l.dim(); ++c)
          if (!S(static_cast<std::size_t>(c), static_cast<std::size_t>(j)).is_zero() &&
              !(v.pow(std::abs(j - c)) == Scalar(1)))
            predicted = false;
        if (!ok) {
          r.commutes = false;
          r.failing.push_back({l, i, j});
        }
        if (ok != predicted) r.prediction_matches = false;
      }
  }
  return r;
}

}  // namespace qsu2::circle
