#pragma once

// The polynomial *-Hopf algebra O(SU_q(2)) generated by a, c.
//
// Normal form: a^k c^n (c*)^m or (a*)^k c^n (c*)^m. Products are reduced with
// the oriented rules
//   c a -> q^-1 a c,  c* a -> q^-1 a c*,  c a* -> q a* c,  c* a* -> q a* c*,
//   c* c -> c c*,     a a* -> 1 - q^2 c* c,  a* a -> 1 - c* c,
// which strictly lower the a-degree and therefore terminate.

#include <complex>
#include <compare>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "qsu2/scalar.hpp"

namespace qsu2 {

struct Monomial {
  bool astar = false;  // a-part is (a*)^k rather than a^k
  int k = 0;
  int n = 0;  // power of c
  int m = 0;  // power of c*

  static Monomial make(bool astar, int k, int n, int m) {
    return Monomial{k == 0 ? false : astar, k, n, m};
  }
  int degree() const { return k + n + m; }
  auto operator<=>(const Monomial&) const = default;

  std::string str() const {
    if (k == 0 && n == 0 && m == 0) return "1";
    std::string s;
    auto put = [&](const char* g, int e) {
      if (e == 0) return;
      if (!s.empty()) s += "*";
      s += g;
      if (e > 1) s += "^" + std::to_string(e);
    };
    put(astar ? "a'" : "a", k);
    put("c", n);
    put("c'", m);
    return s;
  }
};

inline bool coef_is_zero(const Scalar& s) { return s.is_zero(); }
inline bool coef_is_zero(const std::complex<double>& s) { return s == 0.0; }

/// Finite linear combination of normal-form monomials.
template <class S>
class BasicElem {
 public:
  using Coef = S;
  using Terms = std::map<Monomial, S>;

  BasicElem() = default;
  BasicElem(const S& c) { add_term(Monomial{}, c); }  // NOLINT: scalars embed as c*1
  BasicElem(long c) : BasicElem(S(c)) {}              // NOLINT

  static BasicElem mono(const Monomial& mo, const S& c = S(1)) {
    BasicElem e;
    e.add_term(mo, c);
    return e;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coeff(const Monomial& mo) const {
    auto it = terms_.find(mo);
    return it == terms_.end() ? S{} : it->second;
  }

  void add_term(const Monomial& mo, const S& c) {
    if (coef_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(mo, c);
    if (!inserted) {
      it->second = it->second + c;
      if (coef_is_zero(it->second)) terms_.erase(it);
    }
  }

  int degree() const {
    int d = 0;
    for (const auto& [mo, c] : terms_) d = std::max(d, mo.degree());
    return d;
  }

  BasicElem operator-() const {
    BasicElem r;
    for (const auto& [mo, c] : terms_) r.terms_.emplace(mo, -c);
    return r;
  }
  BasicElem& operator+=(const BasicElem& o) {
    for (const auto& [mo, c] : o.terms_) add_term(mo, c);
    return *this;
  }
  BasicElem& operator-=(const BasicElem& o) {
    for (const auto& [mo, c] : o.terms_) add_term(mo, -c);
    return *this;
  }
  friend BasicElem operator+(BasicElem a, const BasicElem& b) { return a += b; }
  friend BasicElem operator-(BasicElem a, const BasicElem& b) { return a -= b; }

  BasicElem scaled(const S& s) const {
    BasicElem r;
    if (coef_is_zero(s)) return r;
    for (const auto& [mo, c] : terms_) r.add_term(mo, c * s);
    return r;
  }
  friend BasicElem operator*(const S& s, const BasicElem& e) { return e.scaled(s); }

  friend bool operator==(const BasicElem& a, const BasicElem& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mo, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << coef_str(c) << ")";
      if (mo.degree() > 0) os << "*" << mo.str();
    }
    return os.str();
  }

 private:
  static std::string coef_str(const Scalar& c) { return c.str(); }
  static std::string coef_str(const std::complex<double>& c) {
    std::ostringstream os;
    os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    return os.str();
  }

  Terms terms_;
};

using AlgElem = BasicElem<Scalar>;
using NumericElem = BasicElem<std::complex<double>>;

template <class S>
std::ostream& operator<<(std::ostream& os, const BasicElem<S>& e) {
  return os << e.str();
}

namespace gen {
inline AlgElem one() { return AlgElem(Scalar(1)); }
inline AlgElem a() { return AlgElem::mono(Monomial::make(false, 1, 0, 0)); }
inline AlgElem a_star() { return AlgElem::mono(Monomial::make(true, 1, 0, 0)); }
inline AlgElem c() { return AlgElem::mono(Monomial::make(false, 0, 1, 0)); }
inline AlgElem c_star() { return AlgElem::mono(Monomial::make(false, 0, 0, 1)); }
}  // namespace gen

/// Numeric image of an exact element at q = q0.
inline NumericElem eval(const AlgElem& f, double q0) {
  NumericElem r;
  for (const auto& [mo, c] : f.terms()) r.add_term(mo, eval(c, q0));
  return r;
}

inline double max_abs(const NumericElem& f) {
  double m = 0;
  for (const auto& [mo, c] : f.terms()) m = std::max(m, std::abs(c));
  return m;
}

namespace detail {

// Normal form of X1^k1 X2^k2 where X in {a, a*}: returns the surviving
// a-part (branch, power) and the polynomial in zeta = c c*, sitting to the
// right of the a-part, as a coefficient list indexed by zeta power.
struct APartProduct {
  bool astar;
  int k;
  std::vector<Scalar> zeta_poly;
};

inline APartProduct a_part_product(bool star1, int k1, bool star2, int k2) {
  if (k1 == 0) return {star2, k2, {Scalar(1)}};
  if (k2 == 0) return {star1, k1, {Scalar(1)}};
  if (star1 == star2) return {star1, k1 + k2, {Scalar(1)}};
  const int s = std::min(k1, k2);
  std::vector<Scalar> poly{Scalar(1)};
  for (int t = 0; t < s; ++t) {
    // a^k1 a*^k2  : factor (1 - q^(2(k2-t)) zeta)
    // a*^k1 a^k2  : factor (1 - q^(-2(k2-1-t)) zeta)
    int e = star1 ? -2 * (k2 - 1 - t) : 2 * (k2 - t);
    Scalar f = -Scalar::q_pow(e);
    std::vector<Scalar> next(poly.size() + 1);
    for (std::size_t r = 0; r < poly.size(); ++r) {
      next[r] += poly[r];
      next[r + 1] += poly[r] * f;
    }
    poly = std::move(next);
  }
  if (k1 > k2) return {star1, k1 - k2, std::move(poly)};
  if (k2 > k1) return {star2, k2 - k1, std::move(poly)};
  return {false, 0, std::move(poly)};
}

}  // namespace detail

inline AlgElem multiply(const Monomial& x, const Monomial& y) {
  // c^n1 c*^m1 X2^k2 = q^(-+(n1+m1) k2) X2^k2 c^n1 c*^m1
  int shift = (x.n + x.m) * y.k;
  Scalar pre = Scalar::q_pow(y.astar ? shift : -shift);
  auto ap = detail::a_part_product(x.astar, x.k, y.astar, y.k);
  AlgElem out;
  for (std::size_t r = 0; r < ap.zeta_poly.size(); ++r) {
    if (ap.zeta_poly[r].is_zero()) continue;
    int rr = static_cast<int>(r);
    out.add_term(Monomial::make(ap.astar, ap.k, x.n + y.n + rr, x.m + y.m + rr), pre * ap.zeta_poly[r]);
  }
  return out;
}

inline AlgElem multiply(const AlgElem& f, const AlgElem& g) {
  AlgElem out;
  for (const auto& [mx, cx] : f.terms())
    for (const auto& [my, cy] : g.terms()) {
      Scalar c = cx * cy;
      AlgElem prod = multiply(mx, my);
      for (const auto& [mo, cm] : prod.terms()) out.add_term(mo, c * cm);
    }
  return out;
}

inline AlgElem operator*(const AlgElem& f, const AlgElem& g) { return multiply(f, g); }

inline AlgElem power(const AlgElem& f, int e) {
  AlgElem r = gen::one();
  for (int k = 0; k < e; ++k) r = r * f;
  return r;
}

/// Involution: conjugate-linear anti-automorphism, a <-> a*, c <-> c*.
inline AlgElem star(const AlgElem& f) {
  AlgElem out;
  for (const auto& [mo, c] : f.terms()) {
    // (X^k c^n c*^m)* = c^m c*^n (X*)^k = q^(+-(n+m)k) (X*)^k c^m c*^n
    int shift = (mo.n + mo.m) * mo.k;
    bool new_star = !mo.astar;
    Scalar pre = Scalar::q_pow(new_star ? shift : -shift);
    out.add_term(Monomial::make(new_star, mo.k, mo.m, mo.n), c.conj() * pre);
  }
  return out;
}

/// Algebra homomorphism with eps(a) = eps(a*) = 1, eps(c) = eps(c*) = 0.
inline Scalar counit(const AlgElem& f) {
  Scalar s;
  for (const auto& [mo, c] : f.terms())
    if (mo.n == 0 && mo.m == 0) s += c;
  return s;
}

namespace detail {

// Anti-homomorphism determined by generator images.
inline AlgElem anti_hom(const AlgElem& f, const AlgElem& img_a, const AlgElem& img_as,
                        const AlgElem& img_c, const AlgElem& img_cs) {
  AlgElem out;
  for (const auto& [mo, c] : f.terms()) {
    // S(X^k c^n c*^m) = S(c*)^m S(c)^n S(X)^k
    AlgElem t = power(img_cs, mo.m) * power(img_c, mo.n) * power(mo.astar ? img_as : img_a, mo.k);
    out += t.scaled(c);
  }
  return out;
}

}  // namespace detail

/// Antipode S, the anti-homomorphism fixed by the Hopf axioms:
/// S(a) = a*, S(a*) = a, S(c) = -q c, S(c*) = -q^-1 c*.
inline AlgElem antipode(const AlgElem& f) {
  return detail::anti_hom(f, gen::a_star(), gen::a(), gen::c().scaled(-Scalar::q()),
                          gen::c_star().scaled(-Scalar::q_pow(-1)));
}

/// S^-1: S^-1(a) = a*, S^-1(a*) = a, S^-1(c) = -q^-1 c, S^-1(c*) = -q c*.
inline AlgElem antipode_inverse(const AlgElem& f) {
  return detail::anti_hom(f, gen::a_star(), gen::a(), gen::c().scaled(-Scalar::q_pow(-1)),
                          gen::c_star().scaled(-Scalar::q()));
}

/// The anti-homomorphism with the generator values as printed in the source
/// literature (S(c) = -q c*, S(c*) = -q^-1 c). Kept only so tests can show it
/// violates the antipode axiom.
inline AlgElem antipode_as_printed(const AlgElem& f) {
  return detail::anti_hom(f, gen::a_star(), gen::a(), gen::c_star().scaled(-Scalar::q()),
                          gen::c().scaled(-Scalar::q_pow(-1)));
}

/// Element of A (x) A.
class TensorElem {
 public:
  using Key = std::pair<Monomial, Monomial>;
  using Terms = std::map<Key, Scalar>;

  static TensorElem pure(const AlgElem& x, const AlgElem& y) {
    TensorElem t;
    for (const auto& [mx, cx] : x.terms())
      for (const auto& [my, cy] : y.terms()) t.add_term({mx, my}, cx * cy);
    return t;
  }
  static TensorElem one() { return pure(gen::one(), gen::one()); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TensorElem& operator+=(const TensorElem& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  friend TensorElem operator+(TensorElem a, const TensorElem& b) { return a += b; }
  friend TensorElem operator-(TensorElem a, const TensorElem& b) {
    for (const auto& [k, c] : b.terms_) a.add_term(k, -c);
    return a;
  }
  friend bool operator==(const TensorElem& a, const TensorElem& b) { return a.terms_ == b.terms_; }

  friend TensorElem operator*(const TensorElem& x, const TensorElem& y) {
    TensorElem out;
    for (const auto& [kx, cx] : x.terms_)
      for (const auto& [ky, cy] : y.terms_) {
        AlgElem left = multiply(kx.first, ky.first);
        AlgElem right = multiply(kx.second, ky.second);
        Scalar c = cx * cy;
        for (const auto& [ml, cl] : left.terms())
          for (const auto& [mr, cr] : right.terms()) out.add_term({ml, mr}, c * cl * cr);
      }
    return out;
  }

  /// Applies linear maps to each tensor factor and multiplies the results.
  template <class FL, class FR>
  AlgElem contract(FL&& left, FR&& right) const {
    AlgElem out;
    for (const auto& [k, c] : terms_) out += (left(AlgElem::mono(k.first)) * right(AlgElem::mono(k.second))).scaled(c);
    return out;
  }

 private:
  Terms terms_;
};

namespace detail {

inline TensorElem power(const TensorElem& t, int e) {
  TensorElem r = TensorElem::one();
  for (int k = 0; k < e; ++k) r = r * t;
  return r;
}

inline const TensorElem& delta_generator(int which) {
  // 0: a, 1: a*, 2: c, 3: c*
  static const TensorElem table[4] = {
      // Delta(a) = a(x)a - q c*(x)c
      TensorElem::pure(gen::a(), gen::a()) + TensorElem::pure(gen::c_star().scaled(-Scalar::q()), gen::c()),
      // Delta(a*) = a*(x)a* - q c(x)c*
      TensorElem::pure(gen::a_star(), gen::a_star()) +
          TensorElem::pure(gen::c().scaled(-Scalar::q()), gen::c_star()),
      // Delta(c) = c(x)a + a*(x)c
      TensorElem::pure(gen::c(), gen::a()) + TensorElem::pure(gen::a_star(), gen::c()),
      // Delta(c*) = c*(x)a* + a(x)c*
      TensorElem::pure(gen::c_star(), gen::a_star()) + TensorElem::pure(gen::a(), gen::c_star()),
  };
  return table[which];
}

}  // namespace detail

/// Coproduct: the *-homomorphism A -> A (x) A fixed by
/// Delta(a) = a(x)a - q c*(x)c and Delta(c) = c(x)a + a*(x)c.
inline TensorElem coproduct(const AlgElem& f) {
  TensorElem out;
  for (const auto& [mo, c] : f.terms()) {
    TensorElem t = detail::power(detail::delta_generator(mo.astar ? 1 : 0), mo.k) *
                   detail::power(detail::delta_generator(2), mo.n) *
                   detail::power(detail::delta_generator(3), mo.m);
    for (const auto& [k, tc] : t.terms()) out.add_term(k, tc * c);
  }
  return out;
}

/// h((c c*)^n) = (1 - q^2) / (1 - q^(2n+2)); zero on every other monomial.
inline Scalar haar(const Monomial& mo) {
  if (mo.k != 0 || mo.n != mo.m) return {};
  if (mo.n == 0) return 1;
  LaurentPoly num(0, {GaussRat(1), GaussRat(0), GaussRat(-1)});
  std::vector<GaussRat> d(static_cast<std::size_t>(2 * mo.n + 3));
  d.front() = 1;
  d.back() = -1;
  return Scalar(num, LaurentPoly(0, std::move(d)));
}

inline Scalar haar(const AlgElem& f) {
  Scalar s;
  for (const auto& [mo, c] : f.terms()) {
    Scalar h = haar(mo);
    if (!h.is_zero()) s += c * h;
  }
  return s;
}

/// h(f g) without forming the full product: only pairs whose a-parts cancel
/// and whose c, c* counts balance can contribute.
inline Scalar haar_product(const AlgElem& f, const AlgElem& g) {
  Scalar s;
  for (const auto& [mx, cx] : f.terms())
    for (const auto& [my, cy] : g.terms()) {
      if (mx.k != my.k || (mx.k != 0 && mx.astar == my.astar)) continue;
      if (mx.n + my.n != mx.m + my.m) continue;
      s += cx * cy * haar(multiply(mx, my));
    }
  return s;
}

/// <y, x> = h(x y*); linear in x, conjugate-linear in y.
inline Scalar inner(const AlgElem& y, const AlgElem& x) { return haar_product(x, star(y)); }

/// ||f||^2 = h(f f*).
inline Scalar norm2(const AlgElem& f) { return inner(f, f); }

/// (id (x) h) and (h (x) id) applied to a tensor.
inline AlgElem id_tensor_haar(const TensorElem& t) {
  AlgElem out;
  for (const auto& [k, c] : t.terms()) {
    Scalar h = haar(k.second);
    if (!h.is_zero()) out.add_term(k.first, c * h);
  }
  return out;
}
inline AlgElem haar_tensor_id(const TensorElem& t) {
  AlgElem out;
  for (const auto& [k, c] : t.terms()) {
    Scalar h = haar(k.first);
    if (!h.is_zero()) out.add_term(k.second, c * h);
  }
  return out;
}

/// (eps (x) id) and (id (x) eps).
inline AlgElem counit_tensor_id(const TensorElem& t) {
  AlgElem out;
  for (const auto& [k, c] : t.terms())
    if (k.first.n == 0 && k.first.m == 0) out.add_term(k.second, c);
  return out;
}
inline AlgElem id_tensor_counit(const TensorElem& t) {
  AlgElem out;
  for (const auto& [k, c] : t.terms())
    if (k.second.n == 0 && k.second.m == 0) out.add_term(k.first, c);
  return out;
}

/// Modular automorphism of the Haar state: h(x y) = h(y theta(x)), with
/// theta(a) = q^-2 a, theta(a*) = q^2 a*, theta(c) = c, theta(c*) = c*.
inline AlgElem modular(const AlgElem& f) {
  AlgElem out;
  for (const auto& [mo, c] : f.terms()) out.add_term(mo, c * Scalar::q_pow(mo.astar ? 2 * mo.k : -2 * mo.k));
  return out;
}

/// Regular representation phi_v: c -> v c, c* -> conj(v) c*, a and a* fixed.
inline AlgElem regular_rep(const Scalar& v, const AlgElem& f) {
  Scalar vb = v.conj();
  AlgElem out;
  for (const auto& [mo, c] : f.terms()) out.add_term(mo, c * v.pow(mo.n) * vb.pow(mo.m));
  return out;
}

}  // namespace qsu2
