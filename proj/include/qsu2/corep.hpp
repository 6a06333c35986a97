#pragma once

// Irreducible corepresentations T^l built from the quantum-plane coaction
// R(x) = x (x) a + y (x) c,  R(y) = x (x) (-q c*) + y (x) a*.
//
// Index convention: the basis vector x^(2l-k) y^k has weight j = k - l, and
// block position k. raw(k', k) is the coefficient of x^(2l-k') y^k' in
// R(x^(2l-k) y^k). The unitary entries are t_ij = sqrt(rho_i / rho_j) raw_ij;
// only the squared ratios are ever stored.

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "qsu2/algebra.hpp"
#include "qsu2/half_int.hpp"
#include "qsu2/matrix.hpp"
#include "qsu2/qnumbers.hpp"

namespace qsu2 {

/// Polynomial in x, y with x y = q y x, kept as x^i y^j.
class QPlanePoly {
 public:
  using Key = std::pair<int, int>;

  static QPlanePoly x() { return mono(1, 0); }
  static QPlanePoly y() { return mono(0, 1); }
  static QPlanePoly mono(int i, int j, const Scalar& c = Scalar(1)) {
    QPlanePoly p;
    p.add_term({i, j}, c);
    return p;
  }

  const std::map<Key, Scalar>& terms() const { return terms_; }

  void add_term(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = terms_.try_emplace(k, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  // x^i1 y^j1 x^i2 y^j2 = q^(-j1 i2) x^(i1+i2) y^(j1+j2)
  friend QPlanePoly operator*(const QPlanePoly& a, const QPlanePoly& b) {
    QPlanePoly out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        out.add_term({ka.first + kb.first, ka.second + kb.second},
                     ca * cb * Scalar::q_pow(-ka.second * kb.first));
    return out;
  }
  friend QPlanePoly operator+(QPlanePoly a, const QPlanePoly& b) {
    for (const auto& [k, c] : b.terms_) a.add_term(k, c);
    return a;
  }
  friend bool operator==(const QPlanePoly& a, const QPlanePoly& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Key, Scalar> terms_;
};

struct CorepMatrix {
  HalfInt l;
  Matrix<AlgElem> raw;
  Matrix<AlgElem> raw_star;  // star(raw(i, j)), entrywise
  Matrix<Scalar> gram;       // h(raw_ij raw_ij*)
  std::vector<Scalar> rho;   // rho[k], rho[0] = 1
  int pattern = 0;           // c in [2l+1]^-1 q^(c j); 0 until unitarized

  int dim() const { return l.dim(); }

  /// Squared prefactor of t_ij over raw_ij.
  Scalar ratio(int i, int j) const { return rho[static_cast<std::size_t>(i)] / rho[static_cast<std::size_t>(j)]; }
  double prefactor(int i, int j, double q0) const { return std::sqrt(eval(ratio(i, j), q0).real()); }

  const AlgElem& operator()(int i, int j) const {
    return raw(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
};

/// Expands R(x^(2l-k) y^k) for every k and reads off the coefficient matrix.
inline CorepMatrix coaction_matrix(HalfInt l) {
  const int n = l.twice();
  const std::size_t d = static_cast<std::size_t>(n + 1);
  CorepMatrix M;
  M.l = l;
  M.raw = Matrix<AlgElem>(d, d);

  // images of the generators: (x-power, y-power) -> algebra factor
  const AlgElem img_x[2] = {gen::a(), gen::c()};
  const AlgElem img_y[2] = {gen::c_star().scaled(-Scalar::q()), gen::a_star()};

  for (int k = 0; k <= n; ++k) {
    std::map<std::pair<int, int>, AlgElem> acc;
    acc[{0, 0}] = gen::one();
    for (int step = 0; step < n; ++step) {
      const AlgElem* img = step < n - k ? img_x : img_y;
      std::map<std::pair<int, int>, AlgElem> next;
      for (const auto& [key, f] : acc) {
        auto [p, r] = key;
        // (x^p y^r (x) f)(x (x) g) = q^-r x^(p+1) y^r (x) f g
        next[{p + 1, r}] += (f * img[0]).scaled(Scalar::q_pow(-r));
        next[{p, r + 1}] += f * img[1];
      }
      acc = std::move(next);
    }
    for (const auto& [key, f] : acc) M.raw(static_cast<std::size_t>(key.second), static_cast<std::size_t>(k)) = f;
  }
  M.raw_star = M.raw.map([](const AlgElem& f) { return star(f); });
  return M;
}

/// Fills gram, rho and pattern from exact Haar values. Throws
/// ConsistencyError if the Gram data does not factor as
/// (rho_j / rho_i) [2l+1]^-1 q^(c j) for one c in {2, -2}.
inline void unitarize(CorepMatrix& M) {
  const int d = M.dim();
  const auto D = static_cast<std::size_t>(d);
  M.gram = Matrix<Scalar>(D, D);
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) M.gram(i, j) = haar_product(M.raw(i, j), M.raw_star(i, j));

  // column j = -l fixes rho_i = g_{-l,-l} / g_{i,-l}
  M.rho.assign(D, Scalar(1));
  for (std::size_t i = 1; i < D; ++i) {
    if (M.gram(i, 0).is_zero()) throw ConsistencyError("unitarize: vanishing Gram entry");
    M.rho[i] = M.gram(0, 0) / M.gram(i, 0);
  }
  const Scalar dimq = qnum(d);
  for (int c : {2, -2}) {
    bool ok = true;
    for (std::size_t i = 0; i < D && ok; ++i)
      for (std::size_t j = 0; j < D && ok; ++j) {
        Scalar want = Scalar::q_pow(c * weight(M.l, static_cast<int>(j)).twice() / 2) / dimq;
        ok = M.ratio(static_cast<int>(i), static_cast<int>(j)) * M.gram(i, j) == want;
      }
    if (ok) {
      M.pattern = c;
      return;
    }
  }
  throw ConsistencyError("unitarize: Gram data has no q^(+-2j) pattern at l = " + M.l.str());
}

/// Exact unitarity: sum_k rho_k raw_ki* raw_kj = delta_ij rho_i.
inline bool unitary_exact(const CorepMatrix& M) {
  const auto D = static_cast<std::size_t>(M.dim());
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) {
      AlgElem s;
      for (std::size_t k = 0; k < D; ++k) s += (M.raw_star(k, i) * M.raw(k, j)).scaled(M.rho[k]);
      if (!(s == (i == j ? AlgElem(M.rho[i]) : AlgElem()))) return false;
    }
  return true;
}

/// max over (i, j) of the coefficients of (T*T - I)_ij at q0, with the
/// square-root prefactors evaluated numerically. Computed in BigComplex:
/// at l = 3, q0 = 0.3 the monomial coefficients cancel over ~10 digits.
inline double unitarity_residual(const CorepMatrix& M, double q0) {
  const int d = M.dim();
  const mpq_class qx(q0);
  const GaussRat qg(qx);
  double worst = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::map<Monomial, BigComplex> s;
      for (int k = 0; k < d; ++k) {
        mpf_class pre = sqrt_big(M.ratio(k, i) * M.ratio(k, j), qx);
        AlgElem prod = M.raw_star(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) * M(k, j);
        for (const auto& [mo, c] : prod.terms()) s[mo] += BigComplex(eval_exact(c, qg)) * pre;
      }
      if (i == j) s[Monomial{}] += BigComplex(GaussRat(-1));
      for (const auto& [mo, v] : s) worst = std::max(worst, v.abs());
    }
  return worst;
}

/// Corepresentation matrices for all levels up to a cap, built lazily and
/// then shared read-only.
class PeterWeyl {
 public:
  const CorepMatrix& level(HalfInt l) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = levels_.find(l);
    if (it != levels_.end()) return *it->second;
    auto M = std::make_unique<CorepMatrix>(coaction_matrix(l));
    unitarize(*M);
    return *levels_.emplace(l, std::move(M)).first->second;
  }

  /// Installs a precomputed level (cache loading). A level already built is
  /// kept, so references handed out earlier stay valid.
  void install(CorepMatrix M) {
    std::lock_guard<std::mutex> lock(mu_);
    HalfInt l = M.l;
    levels_.try_emplace(l, std::make_unique<CorepMatrix>(std::move(M)));
  }

  std::vector<HalfInt> built() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<HalfInt> out;
    for (const auto& [l, m] : levels_) out.push_back(l);
    return out;
  }

 private:
  mutable std::mutex mu_;
  std::map<HalfInt, std::unique_ptr<CorepMatrix>> levels_;
};

inline PeterWeyl& peter_weyl() {
  static PeterWeyl pw;
  return pw;
}

inline const CorepMatrix& corep(HalfInt l) { return peter_weyl().level(l); }

/// One element t^l_ij of the Peter-Weyl basis: raw entry plus the squared
/// prefactor rho_i / rho_j.
struct BasisElement {
  HalfInt l;
  HalfInt i, j;
  AlgElem raw;
  Scalar ratio;
};

inline std::vector<BasisElement> peter_weyl_basis(HalfInt L) {
  std::vector<BasisElement> out;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    const auto& M = corep(l);
    for (int i = 0; i < M.dim(); ++i)
      for (int j = 0; j < M.dim(); ++j) out.push_back({l, weight(l, i), weight(l, j), M(i, j), M.ratio(i, j)});
  }
  return out;
}

/// Coordinate of f against raw^l_ij: h(f raw_ij*) / h(raw_ij raw_ij*).
inline Scalar raw_coordinate(const AlgElem& f, HalfInt l, int i, int j) {
  const auto& M = corep(l);
  auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
  Scalar h = haar_product(f, M.raw_star(I, J));
  return h.is_zero() ? h : h / M.gram(I, J);
}

/// Level bound of an element: every monomial of degree d lies in levels <= d/2.
inline HalfInt level_bound(const AlgElem& f) { return HalfInt::from_twice(f.degree()); }

/// Expansion of f in the raw basis: (l, i, j) -> coefficient.
struct RawKey {
  HalfInt l;
  int i, j;  // block positions
  auto operator<=>(const RawKey&) const = default;
};

/// Expansion restricted to levels lo..hi (callers that know the band).
inline std::map<RawKey, Scalar> raw_expand(const AlgElem& f, HalfInt lo, HalfInt hi) {
  std::map<RawKey, Scalar> out;
  hi = std::min(hi, level_bound(f));
  for (int tw = lo.twice(); tw <= hi.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    for (int i = 0; i <= tw; ++i)
      for (int j = 0; j <= tw; ++j) {
        Scalar c = raw_coordinate(f, l, i, j);
        if (!c.is_zero()) out[{l, i, j}] = c;
      }
  }
  return out;
}

inline std::map<RawKey, Scalar> raw_expand(const AlgElem& f) { return raw_expand(f, HalfInt(0), level_bound(f)); }

inline AlgElem raw_combine(const std::map<RawKey, Scalar>& coords) {
  AlgElem f;
  for (const auto& [k, c] : coords) f += corep(k.l)(k.i, k.j).scaled(c);
  return f;
}

/// Clebsch-Gordan data for t^m_rs t^n_ij = sum_p C t^p_{r+i, s+j}.
/// Exactly: raw^m_rs raw^n_ij = sum_p Ct raw^p_{..}; then
/// C = Ct * sqrt(radicand) with radicand = ratio^m_rs ratio^n_ij / ratio^p.
struct CGEntry {
  HalfInt p;
  Scalar reduced;
  Scalar radicand;
  double value(double q0) const { return eval(reduced, q0).real() * std::sqrt(eval(radicand, q0).real()); }
  std::complex<double> numeric(double q0) const { return eval(reduced, q0) * std::sqrt(eval(radicand, q0).real()); }
};

struct CGRow {
  HalfInt m, n, r, s, i, j;
  std::vector<CGEntry> entries;  // p = |n-m| .. n+m with nonzero reduced value
  bool index_rule_holds = true;  // no weight outside (r+i, s+j)
  bool band_holds = true;        // no level outside |n-m| .. n+m
};

inline CGRow clebsch_gordan(HalfInt m, HalfInt n, HalfInt r, HalfInt s, HalfInt i, HalfInt j) {
  using Key = std::array<int, 6>;
  static std::mutex mu;
  static std::map<Key, CGRow> cache;
  Key key{m.twice(), n.twice(), r.twice(), s.twice(), i.twice(), j.twice()};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  CGRow row{m, n, r, s, i, j, {}, true, true};
  const auto& Mm = corep(m);
  const auto& Mn = corep(n);
  AlgElem prod = Mm(slot(m, r), slot(m, s)) * Mn(slot(n, i), slot(n, j));
  HalfInt lo = m > n ? m - n : n - m;
  HalfInt tr = r + i, ts = s + j;
  for (const auto& [key, c] : raw_expand(prod)) {
    HalfInt wi = weight(key.l, key.i), wj = weight(key.l, key.j);
    if (key.l < lo || key.l > m + n || ((key.l.twice() - lo.twice()) % 2 != 0)) row.band_holds = false;
    if (wi != tr || wj != ts) {
      row.index_rule_holds = false;
      continue;
    }
    const auto& Mp = corep(key.l);
    Scalar rad = Mm.ratio(slot(m, r), slot(m, s)) * Mn.ratio(slot(n, i), slot(n, j)) / Mp.ratio(key.i, key.j);
    row.entries.push_back({key.l, c, rad});
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, row);
  return row;
}

}  // namespace qsu2
