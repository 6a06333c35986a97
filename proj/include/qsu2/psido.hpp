#pragma once

// Global pseudo-differential operators T_sigma on SU_q(2).
//
// Conventions (see README, "Conventions"):
//  * apply = sum_l [2l+1]_q Tr(sigma(l) D_q fhat(l) T^l). On basis elements
//    this gives T(t_ab) = sum_c sigma_cb t_ac, the neutral symbol acts as the
//    identity, and row sums of sigma(l) are eigenvalues.
//  * Scalar symbols live in the unitary basis t^l_ij and act on PwVector
//    coordinates. Algebra-valued symbols live in the raw basis ("raw gauge"):
//    T(raw_ab) = sum_c sigma_cb raw_ac, entries multiplying from the left.
//    The two agree on diagonal symbols; otherwise sigma_raw = D^-1 sigma D
//    with D = diag(sqrt(rho)).

#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qsu2/fourier.hpp"

namespace qsu2 {

enum class SymbolKind { scalar, algebra };

enum class TraceConvention {
  weighted_coefficients,  // Tr(sigma D_q fhat T); the default
  weighted_output,        // Tr(D_q sigma fhat T), i.e. F^-1(sigma F f)
  plain,                  // Tr(sigma fhat T)
};

class Symbol {
 public:
  using ScalarBlock = Matrix<Scalar>;
  using AlgBlock = Matrix<AlgElem>;
  using ScalarRule = std::function<ScalarBlock(HalfInt)>;
  using AlgRule = std::function<AlgBlock(HalfInt)>;

  static Symbol scalar(std::map<HalfInt, ScalarBlock> blocks, std::optional<HalfInt> bound = std::nullopt) {
    Symbol s;
    s.kind_ = SymbolKind::scalar;
    for (auto& [l, b] : blocks) check_dim(l, b);
    s.sblocks_ = std::move(blocks);
    s.bound_ = bound;
    return s;
  }
  static Symbol scalar_rule(ScalarRule rule, std::optional<HalfInt> bound = std::nullopt) {
    Symbol s;
    s.kind_ = SymbolKind::scalar;
    s.srule_ = std::move(rule);
    s.bound_ = bound;
    return s;
  }
  static Symbol algebra(std::map<HalfInt, AlgBlock> blocks, std::optional<HalfInt> bound = std::nullopt) {
    Symbol s;
    s.kind_ = SymbolKind::algebra;
    for (auto& [l, b] : blocks) check_dim(l, b);
    s.ablocks_ = std::move(blocks);
    s.bound_ = bound;
    return s;
  }
  static Symbol algebra_rule(AlgRule rule, std::optional<HalfInt> bound = std::nullopt) {
    Symbol s;
    s.kind_ = SymbolKind::algebra;
    s.arule_ = std::move(rule);
    s.bound_ = bound;
    return s;
  }

  static Symbol neutral() {
    return scalar_rule([](HalfInt l) {
      auto d = static_cast<std::size_t>(l.dim());
      return ScalarBlock::identity(d, Scalar(1));
    });
  }
  /// lambda(l) I.
  static Symbol diagonal(std::function<Scalar(HalfInt)> lambda) {
    return scalar_rule([lambda = std::move(lambda)](HalfInt l) {
      auto d = static_cast<std::size_t>(l.dim());
      return ScalarBlock::identity(d, lambda(l));
    });
  }
  /// g I: the symbol of left multiplication by g.
  static Symbol multiplication(const AlgElem& g) {
    return algebra_rule([g](HalfInt l) {
      auto d = static_cast<std::size_t>(l.dim());
      return AlgBlock::identity(d, g);
    });
  }

  SymbolKind kind() const { return kind_; }
  bool is_scalar() const { return kind_ == SymbolKind::scalar; }
  std::optional<HalfInt> support_bound() const { return bound_; }

  ScalarBlock scalar_block(HalfInt l) const {
    if (kind_ != SymbolKind::scalar) throw KindError("scalar_block on an algebra-valued symbol");
    auto d = static_cast<std::size_t>(l.dim());
    if (bound_ && l > *bound_) return ScalarBlock(d, d);
    if (auto it = sblocks_.find(l); it != sblocks_.end()) return it->second;
    if (srule_) {
      auto b = srule_(l);
      check_dim(l, b);
      return b;
    }
    if (bound_) return ScalarBlock(d, d);
    throw Error("symbol has no block at level " + l.str());
  }

  /// Block with algebra entries. Scalar symbols are converted to the raw
  /// gauge, which throws SurdError when that needs an irrational factor.
  AlgBlock algebra_block(HalfInt l) const;

  AlgBlock raw_algebra_block(HalfInt l) const {
    if (kind_ != SymbolKind::algebra) throw KindError("raw_algebra_block on a scalar symbol");
    auto d = static_cast<std::size_t>(l.dim());
    if (bound_ && l > *bound_) return AlgBlock(d, d);
    if (auto it = ablocks_.find(l); it != ablocks_.end()) return it->second;
    if (arule_) {
      auto b = arule_(l);
      check_dim(l, b);
      return b;
    }
    if (bound_) return AlgBlock(d, d);
    throw Error("symbol has no block at level " + l.str());
  }

  /// Raw-gauge block at q0 (scalar symbols only; never surd-limited).
  Matrix<std::complex<double>> raw_numeric_block(HalfInt l, double q0) const;

  /// Same symbol with all blocks above N set to zero.
  Symbol truncated(HalfInt N) const {
    Symbol s = *this;
    s.bound_ = bound_ ? std::min(*bound_, N) : N;
    return s;
  }

  /// sigma - g_n sigma: zero on levels l <= n.
  Symbol tail_above(HalfInt n) const {
    Symbol self = *this;
    if (kind_ == SymbolKind::scalar)
      return scalar_rule(
          [self, n](HalfInt l) {
            auto d = static_cast<std::size_t>(l.dim());
            return l <= n ? ScalarBlock(d, d) : self.scalar_block(l);
          },
          bound_);
    return algebra_rule(
        [self, n](HalfInt l) {
          auto d = static_cast<std::size_t>(l.dim());
          return l <= n ? AlgBlock(d, d) : self.raw_algebra_block(l);
        },
        bound_);
  }

  const std::map<HalfInt, ScalarBlock>& explicit_scalar_blocks() const { return sblocks_; }
  const std::map<HalfInt, AlgBlock>& explicit_algebra_blocks() const { return ablocks_; }

 private:
  template <class B>
  static void check_dim(HalfInt l, const B& b) {
    auto d = static_cast<std::size_t>(l.dim());
    if (b.rows() != d || b.cols() != d) throw DimensionError("symbol block at level " + l.str() + " is not (2l+1)x(2l+1)");
  }

  SymbolKind kind_ = SymbolKind::scalar;
  std::map<HalfInt, ScalarBlock> sblocks_;
  std::map<HalfInt, AlgBlock> ablocks_;
  ScalarRule srule_;
  AlgRule arule_;
  std::optional<HalfInt> bound_;
};

inline Symbol::AlgBlock Symbol::algebra_block(HalfInt l) const {
  if (kind_ == SymbolKind::algebra) return raw_algebra_block(l);
  auto s = scalar_block(l);
  const auto& M = corep(l);
  auto d = static_cast<std::size_t>(l.dim());
  AlgBlock out(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t b = 0; b < d; ++b) {
      if (s(c, b).is_zero()) continue;
      // sigma_raw_cb = sigma_cb sqrt(rho_b / rho_c)
      if (!(M.rho[b] == M.rho[c])) throw SurdError("scalar symbol needs sqrt(rho_b/rho_c) in the raw basis");
      out(c, b) = AlgElem(s(c, b));
    }
  return out;
}

inline Matrix<std::complex<double>> Symbol::raw_numeric_block(HalfInt l, double q0) const {
  auto s = scalar_block(l);
  const auto& M = corep(l);
  auto d = static_cast<std::size_t>(l.dim());
  Matrix<std::complex<double>> out(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t b = 0; b < d; ++b)
      if (!s(c, b).is_zero())
        out(c, b) = eval(s(c, b), q0) * M.prefactor(static_cast<int>(b), static_cast<int>(c), q0);
  return out;
}

// ---------------------------------------------------------------------------
// Vectors in the unitary Peter-Weyl basis.

/// Finite combination sum x_k t_k of unitary basis elements.
class PwVector {
 public:
  using Map = std::map<RawKey, Scalar>;

  static PwVector basis(HalfInt l, int i, int j, const Scalar& c = Scalar(1)) {
    PwVector v;
    v.add({l, i, j}, c);
    return v;
  }

  const Map& coords() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(const RawKey& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Scalar() : it->second;
  }

  void add(const RawKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = c_.try_emplace(k, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }
  PwVector& operator+=(const PwVector& o) {
    for (const auto& [k, c] : o.c_) add(k, c);
    return *this;
  }
  friend PwVector operator+(PwVector a, const PwVector& b) { return a += b; }
  friend PwVector operator-(PwVector a, const PwVector& b) {
    for (const auto& [k, c] : b.c_) a.add(k, -c);
    return a;
  }
  PwVector scaled(const Scalar& s) const {
    PwVector v;
    for (const auto& [k, c] : c_) v.add(k, c * s);
    return v;
  }
  friend bool operator==(const PwVector& a, const PwVector& b) { return a.c_ == b.c_; }

  std::set<HalfInt> levels() const {
    std::set<HalfInt> s;
    for (const auto& [k, c] : c_) s.insert(k.l);
    return s;
  }

  /// The element as an AlgElem. Exact only when every prefactor is 1.
  AlgElem to_alg() const {
    AlgElem f;
    for (const auto& [k, c] : c_) {
      const auto& M = corep(k.l);
      if (!M.ratio(k.i, k.j).is_one()) throw SurdError("PwVector::to_alg: basis element has an irrational prefactor");
      f += M(k.i, k.j).scaled(c);
    }
    return f;
  }

  NumericElem to_numeric(double q0) const {
    NumericElem f;
    for (const auto& [k, c] : c_) {
      const auto& M = corep(k.l);
      f += eval(M(k.i, k.j), q0).scaled(eval(c, q0) * M.prefactor(k.i, k.j, q0));
    }
    return f;
  }

 private:
  Map c_;
};

/// h(raw_x raw_y*) over one level, indexed by flattened positions i*d + j.
/// Computed once; throws SurdError if an off-diagonal entry is nonzero, since
/// then the square-root prefactors would not pair up.
inline const Matrix<Scalar>& orthogonality_table(HalfInt l) {
  static std::mutex mu;
  static std::map<HalfInt, Matrix<Scalar>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(l); it != cache.end()) return it->second;
  const auto& M = corep(l);
  const int d = M.dim();
  auto n = static_cast<std::size_t>(d * d);
  Matrix<Scalar> T(n, n);
  for (int x = 0; x < d * d; ++x)
    for (int y = 0; y < d * d; ++y) {
      Scalar h = haar_product(M(x / d, x % d), M.raw_star(static_cast<std::size_t>(y / d), static_cast<std::size_t>(y % d)));
      if (x != y && !h.is_zero()) throw SurdError("unpaired square-root prefactor: basis not orthogonal at level " + l.str());
      T(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = h;
    }
  return cache.emplace(l, std::move(T)).first->second;
}

/// h(t_x t_y*) through the Haar table, prefactors paired.
inline Scalar basis_pairing(HalfInt l, int xi, int xj, int yi, int yj) {
  const int d = l.dim();
  const auto& T = orthogonality_table(l);
  const Scalar& h = T(static_cast<std::size_t>(xi * d + xj), static_cast<std::size_t>(yi * d + yj));
  if (h.is_zero()) return h;
  return corep(l).ratio(xi, xj) * h;
}

/// <y, x> = h(x y*).
inline Scalar inner(const PwVector& y, const PwVector& x) {
  Scalar s;
  for (const auto& [kx, cx] : x.coords())
    for (const auto& [ky, cy] : y.coords()) {
      if (kx.l != ky.l) continue;
      Scalar h = basis_pairing(kx.l, kx.i, kx.j, ky.i, ky.j);
      if (!h.is_zero()) s += cx * cy.conj() * h;
    }
  return s;
}

inline Scalar norm2(const PwVector& f) { return inner(f, f); }

/// Fourier block fhat(l)_mn = h(f t_nm*) of a PwVector.
inline Matrix<Scalar> fourier_block(const PwVector& f, HalfInt l) {
  auto d = static_cast<std::size_t>(l.dim());
  Matrix<Scalar> F(d, d);
  for (const auto& [k, c] : f.coords()) {
    if (k.l != l) continue;
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t n = 0; n < d; ++n) {
        Scalar h = basis_pairing(l, k.i, k.j, static_cast<int>(n), static_cast<int>(m));
        if (!h.is_zero()) F(m, n) += c * h;
      }
  }
  return F;
}

// ---------------------------------------------------------------------------
// Application

/// Definition-based application of a scalar symbol to a PwVector.
inline PwVector apply(const Symbol& sigma, const PwVector& f,
                      TraceConvention conv = TraceConvention::weighted_coefficients) {
  PwVector out;
  for (HalfInt l : f.levels()) {
    auto S = sigma.scalar_block(l);
    auto F = fourier_block(f, l);
    const auto d = static_cast<std::size_t>(l.dim());
    std::vector<Scalar> w = q_weight(l);
    Matrix<Scalar> A;
    switch (conv) {
      case TraceConvention::weighted_coefficients: {
        Matrix<Scalar> DF(d, d);
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) DF(r, c) = w[r] * F(r, c);
        A = matmul(S, DF);
        break;
      }
      case TraceConvention::weighted_output: {
        A = matmul(S, F);
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) A(r, c) = w[r] * A(r, c);
        break;
      }
      case TraceConvention::plain:
        A = matmul(S, F);
        break;
    }
    // Tr(A T) = sum_{c,a} A_ca t_ac
    Scalar dimq = qnum(l.dim());
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t a = 0; a < d; ++a)
        if (!A(c, a).is_zero()) out.add({l, static_cast<int>(a), static_cast<int>(c)}, dimq * A(c, a));
  }
  return out;
}

/// Closed form on a basis element: T(t^l_ij) = sum_c sigma_cj t^l_ic.
inline PwVector basis_action(const Symbol& sigma, HalfInt l, int i, int j) {
  auto S = sigma.scalar_block(l);
  PwVector out;
  for (int c = 0; c < l.dim(); ++c) out.add({l, i, c}, S(static_cast<std::size_t>(c), static_cast<std::size_t>(j)));
  return out;
}

/// The printed layout T(t_ij) = sum_k sigma_{l-k, j} t_{i, k-l}, read with
/// rows in our order -l..l. Differs from basis_action by reversing rows.
inline PwVector basis_action_printed(const Symbol& sigma, HalfInt l, int i, int j) {
  auto S = sigma.scalar_block(l);
  PwVector out;
  const int d = l.dim();
  for (int k = 0; k < d; ++k) {
    int row = d - 1 - k;  // weight l - k
    out.add({l, i, k}, S(static_cast<std::size_t>(row), static_cast<std::size_t>(j)));
  }
  return out;
}

/// Application of an algebra-valued (raw gauge) symbol, or a surd-free
/// scalar symbol, to an exact element.
inline AlgElem apply(const Symbol& sigma, const AlgElem& f) {
  FourierCoeffs F = transform(f);
  AlgElem out;
  for (const auto& [l, b] : F.blocks) {
    const auto& M = corep(l);
    const int d = M.dim();
    auto S = sigma.algebra_block(l);
    Scalar dimq = qnum(d);
    for (int a = 0; a < d; ++a)
      for (int bb = 0; bb < d; ++bb) {
        const Scalar& v = b(static_cast<std::size_t>(bb), static_cast<std::size_t>(a));
        if (v.is_zero()) continue;
        // coefficient of raw_ab, then T(raw_ab) = sum_c sigma_cb raw_ac
        Scalar coef = dimq * Scalar::q_pow(-weight(l, bb).twice()) * M.ratio(a, bb) * v;
        for (int c = 0; c < d; ++c) {
          const AlgElem& s = S(static_cast<std::size_t>(c), static_cast<std::size_t>(bb));
          if (s.is_zero()) continue;
          out += (s * M(a, c)).scaled(coef);
        }
      }
  }
  return out;
}

/// Image of raw^l_ab under a symbol (raw gauge); exact.
inline AlgElem raw_action(const Symbol& sigma, HalfInt l, int a, int b) {
  auto S = sigma.algebra_block(l);
  const auto& M = corep(l);
  AlgElem out;
  for (int c = 0; c < l.dim(); ++c) {
    const AlgElem& s = S(static_cast<std::size_t>(c), static_cast<std::size_t>(b));
    if (!s.is_zero()) out += s * M(a, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symbol extraction

using BasisOp = std::function<PwVector(HalfInt, int, int)>;
using AlgOp = std::function<AlgElem(const AlgElem&)>;

/// sigma_cb(l) = [2l+1]_q q^(-2c) h(T(t_ab) t_ac*), for every row a. Throws
/// ConsistencyError if the rows disagree (op has no scalar symbol).
inline Symbol symbol_of(const BasisOp& op, HalfInt L) {
  std::map<HalfInt, Matrix<Scalar>> blocks;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    const int d = l.dim();
    Scalar dimq = qnum(d);
    Matrix<Scalar> S(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        PwVector img = op(l, a, b);
        for (const auto& [k, c] : img.coords())
          if (k.l != l || k.i != a) throw ConsistencyError("symbol_of: operator leaves span{t_a.} at level " + l.str());
        for (int c = 0; c < d; ++c) {
          Scalar v = dimq * Scalar::q_pow(-weight(l, c).twice()) * inner(PwVector::basis(l, a, c), img);
          auto& slotv = S(static_cast<std::size_t>(c), static_cast<std::size_t>(b));
          if (a == 0)
            slotv = v;
          else if (!(slotv == v))
            throw ConsistencyError("symbol_of: rows give different symbols at level " + l.str());
        }
      }
    blocks.emplace(l, std::move(S));
  }
  return Symbol::scalar(std::move(blocks), L);
}

/// Algebra-valued symbol (raw gauge) of any linear operator:
/// sigma_cb = sum_a T(raw_ab) S^-1(raw_ca), using sum_a raw_aj S^-1(raw_ca) = delta_jc.
inline Symbol symbol_of_alg(const AlgOp& op, HalfInt L) {
  std::map<HalfInt, Matrix<AlgElem>> blocks;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    const auto& M = corep(l);
    const int d = M.dim();
    std::vector<AlgElem> img(static_cast<std::size_t>(d * d));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) img[static_cast<std::size_t>(a * d + b)] = op(M(a, b));
    Matrix<AlgElem> S(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c)
      for (int a = 0; a < d; ++a) {
        AlgElem sinv = antipode_inverse(M(c, a));
        for (int b = 0; b < d; ++b) S(static_cast<std::size_t>(c), static_cast<std::size_t>(b)) += img[static_cast<std::size_t>(a * d + b)] * sinv;
      }
    blocks.emplace(l, std::move(S));
  }
  return Symbol::algebra(std::move(blocks), L);
}

/// Operator of an algebra-valued symbol as an AlgOp.
inline AlgOp as_op(const Symbol& sigma) {
  return [sigma](const AlgElem& f) { return apply(sigma, f); };
}

inline BasisOp as_basis_op(const Symbol& sigma, TraceConvention conv = TraceConvention::weighted_coefficients) {
  return [sigma, conv](HalfInt l, int i, int j) { return apply(sigma, PwVector::basis(l, i, j), conv); };
}

/// Apply a basis-defined operator to a general PwVector by linearity.
inline PwVector apply_op(const BasisOp& op, const PwVector& f) {
  PwVector out;
  for (const auto& [k, c] : f.coords()) out += op(k.l, k.i, k.j).scaled(c);
  return out;
}

// ---------------------------------------------------------------------------
// Composition

/// Composition Formula I: blockwise product. sigma_A may be algebra-valued
/// (raw gauge), sigma_B must be scalar.
inline Symbol compose_scalar(const Symbol& A, const Symbol& B) {
  if (!B.is_scalar()) throw KindError("compose_scalar: right factor must be scalar-valued");
  std::optional<HalfInt> bound;
  if (A.support_bound() && B.support_bound()) bound = std::min(*A.support_bound(), *B.support_bound());
  else if (A.support_bound()) bound = A.support_bound();
  else bound = B.support_bound();
  if (A.is_scalar())
    return Symbol::scalar_rule([A, B](HalfInt l) { return matmul(A.scalar_block(l), B.scalar_block(l)); }, bound);
  return Symbol::algebra_rule(
      [A, B](HalfInt l) {
        auto b = B.algebra_block(l);
        return matmul(A.raw_algebra_block(l), b);
      },
      bound);
}

// ---------------------------------------------------------------------------
// Fourier order

struct FourierOrder {
  bool homogeneous = false;       // every nonzero entry spans one t^m element
  bool single_level = false;      // all entries supported on one level m
  std::optional<HalfInt> order;   // max support level (principal order)
  std::set<HalfInt> levels;       // union of entry supports
  // psi(l)(i, j) -> (r, s) weights of the spanning t^m_rs, homogeneous case
  std::map<HalfInt, std::map<std::pair<int, int>, std::pair<HalfInt, HalfInt>>> psi;
};

inline FourierOrder fourier_order(const Symbol& sigma, HalfInt L) {
  FourierOrder fo;
  if (sigma.is_scalar()) {
    fo.homogeneous = fo.single_level = true;
    fo.order = HalfInt(0);
    fo.levels = {HalfInt(0)};
    return fo;
  }
  bool homog = true;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    auto S = sigma.raw_algebra_block(l);
    for (int i = 0; i < l.dim(); ++i)
      for (int j = 0; j < l.dim(); ++j) {
        const AlgElem& e = S(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (e.is_zero()) continue;
        auto coords = raw_expand(e);
        for (const auto& [k, c] : coords) fo.levels.insert(k.l);
        if (coords.size() != 1) {
          homog = false;
          continue;
        }
        const auto& k = coords.begin()->first;
        fo.psi[l][{i, j}] = {weight(k.l, k.i), weight(k.l, k.j)};
      }
  }
  if (fo.levels.empty()) fo.levels.insert(HalfInt(0));
  fo.single_level = fo.levels.size() == 1;
  fo.homogeneous = homog && fo.single_level;
  fo.order = *fo.levels.rbegin();
  if (!fo.homogeneous) fo.psi.clear();
  return fo;
}

// ---------------------------------------------------------------------------
// Adjoint

/// beta = (T_sigma)* for a scalar symbol: beta_bs = q^(-2b) conj(sigma_sb) q^(2s).
inline Symbol adjoint_scalar(const Symbol& sigma) {
  return Symbol::scalar_rule(
      [sigma](HalfInt l) {
        auto S = sigma.scalar_block(l);
        auto d = static_cast<std::size_t>(l.dim());
        Matrix<Scalar> B(d, d);
        for (std::size_t b = 0; b < d; ++b)
          for (std::size_t s = 0; s < d; ++s)
            if (!S(s, b).is_zero())
              B(b, s) = Scalar::q_pow(-weight(l, static_cast<int>(b)).twice() + weight(l, static_cast<int>(s)).twice()) *
                        S(s, b).conj();
        return B;
      },
      sigma.support_bound());
}

/// Adjoint by solving <T raw_x, raw_y> = <raw_x, T* raw_y> over the
/// orthogonal raw basis: T* raw_y = sum_x <T raw_x, raw_y> / g_x raw_x.
/// `reach` bounds how far T moves levels (the Fourier order of sigma).
inline AlgOp adjoint_op(const AlgOp& T, HalfInt reach) {
  return [T, reach](const AlgElem& g) {
    AlgElem out;
    auto gc = raw_expand(g);
    HalfInt top = HalfInt(0);
    for (const auto& [k, c] : gc) top = std::max(top, k.l);
    top += reach;
    for (int tw = 0; tw <= top.twice(); ++tw) {
      HalfInt l = HalfInt::from_twice(tw);
      const auto& M = corep(l);
      for (int i = 0; i < M.dim(); ++i)
        for (int j = 0; j < M.dim(); ++j) {
          AlgElem Tx = T(M(i, j));
          Scalar p = haar_product(g, star(Tx));  // <T raw_x, g> = h(g (T raw_x)*)
          if (p.is_zero()) continue;
          out += M(i, j).scaled(p / M.gram(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        }
    }
    return out;
  };
}

/// Adjoint symbol through level L. Scalar symbols use the closed form,
/// algebra-valued ones the linear-system route followed by symbol_of_alg.
inline Symbol adjoint(const Symbol& sigma, HalfInt L) {
  if (sigma.is_scalar()) return adjoint_scalar(sigma);
  auto fo = fourier_order(sigma, L);
  return symbol_of_alg(adjoint_op(as_op(sigma), fo.order.value_or(HalfInt(0))), L);
}

// ---------------------------------------------------------------------------
// Grading

struct CompositionOrder {
  FourierOrder order;
  HalfInt bound;  // k1 + k2
  bool within_bound = false;
};

/// fourier_order(symbol_of(T_sigma o T_beta)) against k1 + k2. Negative orders
/// need a witness: a symbol w with T_w o T_x = T_x o T_w = Id on the basis to L.
inline bool verify_inverse_witness(const Symbol& x, const Symbol& w, HalfInt L) {
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    const auto& M = corep(l);
    for (int i = 0; i < M.dim(); ++i)
      for (int j = 0; j < M.dim(); ++j) {
        const AlgElem& t = M(i, j);
        if (!(apply(w, apply(x, t)) == t) || !(apply(x, apply(w, t)) == t)) return false;
      }
  }
  return true;
}

inline CompositionOrder order_of_composition(const Symbol& sigma, HalfInt k1, const Symbol& beta, HalfInt k2,
                                             HalfInt L) {
  AlgOp comp = [sigma, beta](const AlgElem& f) { return apply(sigma, apply(beta, f)); };
  CompositionOrder r;
  r.order = fourier_order(symbol_of_alg(comp, L), L);
  r.bound = k1 + k2;
  r.within_bound = r.order.order.value_or(HalfInt(0)) <= r.bound;
  return r;
}

}  // namespace qsu2
