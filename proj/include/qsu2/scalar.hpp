#pragma once

// Exact scalars: rational functions in a formal real parameter q with
// Gaussian-rational coefficients. Laurent polynomials are stored densely by
// exponent; rational functions are kept in a canonical reduced form so that
// equality is coefficient-wise.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qsu2/errors.hpp"

namespace qsu2 {

/// Element of Q(i).
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long v) : re_(v) {}  // NOLINT: implicit from integers is intended
  GaussRat(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRat i() { return GaussRat(0, 1); }

  /// Parses "p/r", "p", or a decimal such as "0.25".
  static GaussRat parse_rational(const std::string& s) {
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos) {
      // exact decimal expansion
      auto dot = s.find('.');
      std::string digits = s;
      long scale = 0;
      if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        scale = static_cast<long>(s.size() - dot - 1);
      }
      mpz_class num(digits, 10);
      mpz_class den = 1;
      for (long k = 0; k < scale; ++k) den *= 10;
      return GaussRat(mpq_class(num, den));
    }
    mpq_class v(s, 10);
    v.canonicalize();
    return GaussRat(v);
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRat conj() const { return GaussRat(re_, -im_); }

  GaussRat operator-() const { return GaussRat(-re_, -im_); }
  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    if (o.is_zero()) throw Error("division by zero in Q(i)");
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ /= o.re_;
      return *this;
    }
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }
  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<long double> to_complex() const {
    return {static_cast<long double>(re_.get_d()), static_cast<long double>(im_.get_d())};
  }

  std::string str() const {
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) return (im_ == 1 ? std::string("i") : im_.get_str() + "*i");
    return "(" + re_.get_str() + (sgn(im_) > 0 ? "+" : "-") + mpq_class(abs(im_)).get_str() +
           "*i)";
  }

 private:
  mpq_class re_;
  mpq_class im_;
};

/// Laurent polynomial in q over Q(i). Invariant: no zero coefficient at
/// either end; the zero polynomial has no coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(GaussRat c, int exponent = 0) {  // NOLINT
    if (!c.is_zero()) {
      lo_ = exponent;
      c_.push_back(std::move(c));
    }
  }
  LaurentPoly(int lo, std::vector<GaussRat> coeffs) : lo_(lo), c_(std::move(coeffs)) { trim(); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return lo_ == 0 && c_.size() == 1 && c_[0].is_one(); }
  bool is_constant() const { return c_.size() == 1 && lo_ == 0; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  const std::vector<GaussRat>& coeffs() const { return c_; }

  GaussRat coeff(int e) const {
    if (e < lo_ || e > hi()) return {};
    return c_[static_cast<std::size_t>(e - lo_)];
  }
  const GaussRat& leading() const { return c_.back(); }

  LaurentPoly shifted(int by) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) r.lo_ += by;
    return r;
  }

  LaurentPoly conj() const {
    LaurentPoly r = *this;
    for (auto& c : r.c_) c = c.conj();
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int nlo = std::min(lo_, o.lo_);
    int nhi = std::max(hi(), o.hi());
    if (nlo < lo_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - nlo), GaussRat{});
      lo_ = nlo;
    }
    c_.resize(static_cast<std::size_t>(nhi - lo_ + 1));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[static_cast<std::size_t>(o.lo_ - lo_) + k] += o.c_[k];
    trim();
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussRat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t x = 0; x < a.c_.size(); ++x) {
      if (a.c_[x].is_zero()) continue;
      for (std::size_t y = 0; y < b.c_.size(); ++y) r[x + y] += a.c_[x] * b.c_[y];
    }
    return LaurentPoly(a.lo_ + b.lo_, std::move(r));
  }
  LaurentPoly scaled(const GaussRat& s) const {
    if (s.is_zero()) return {};
    LaurentPoly r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.lo_ == b.lo_ && a.c_ == b.c_;
  }

  /// Division with remainder for ordinary polynomials (both lo() >= 0 is not
  /// required; exponents are taken literally, divisor must be nonzero).
  static std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    LaurentPoly rem = a;
    std::vector<GaussRat> quot;
    int qlo = 0;
    if (rem.is_zero() || rem.hi() < b.hi()) return {LaurentPoly{}, rem};
    // Work on the "degree" above b.lo(): quotient exponents range from
    // rem.lo()-b.lo() upward, but for polynomial division we only cancel the
    // top until deg(rem) < deg(b) measured from the common base b.lo().
    int base = std::min(rem.lo_, b.lo_);
    LaurentPoly ra = rem.shifted(-base);
    LaurentPoly rb = b.shifted(-base);
    int db = rb.hi();
    qlo = 0;
    int qhi = ra.hi() - db;
    quot.assign(static_cast<std::size_t>(qhi + 1), GaussRat{});
    GaussRat inv_lead = GaussRat(1) / rb.leading();
    while (!ra.is_zero() && ra.hi() >= db) {
      int e = ra.hi() - db;
      GaussRat f = ra.leading() * inv_lead;
      quot[static_cast<std::size_t>(e)] = f;
      ra -= (rb * LaurentPoly(f, e));
    }
    return {LaurentPoly(qlo, std::move(quot)), ra.shifted(base)};
  }

  /// Monic gcd of two polynomials whose lowest exponent is 0.
  static LaurentPoly gcd(LaurentPoly a, LaurentPoly b) {
    while (!b.is_zero()) {
      LaurentPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
      if (!b.is_zero()) b = b.monic();
    }
    if (a.is_zero()) return a;
    return a.monic();
  }

  LaurentPoly monic() const { return scaled(GaussRat(1) / leading()); }

  template <class T>
  std::complex<T> eval(T q0) const {
    std::complex<T> acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) {
      auto c = c_[k].to_complex();
      acc = acc * q0 + std::complex<T>(static_cast<T>(c.real()), static_cast<T>(c.imag()));
    }
    return acc * std::pow(q0, static_cast<T>(lo_));
  }

  /// Sum of |c_k| |q0|^e, the scale used for relative zero tests.
  long double magnitude(long double q0) const {
    long double s = 0;
    for (std::size_t k = 0; k < c_.size(); ++k)
      s += std::abs(c_[k].to_complex()) * std::pow(std::abs(q0), static_cast<long double>(lo_ + static_cast<int>(k)));
    return s;
  }

  GaussRat eval_exact(const GaussRat& q0) const {
    if (is_zero()) return {};
    GaussRat acc;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * q0 + c_[k];
    GaussRat p = 1;
    GaussRat base = lo_ >= 0 ? q0 : GaussRat(1) / q0;
    for (int e = 0; e < std::abs(lo_); ++e) p *= base;
    return acc * p;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      const GaussRat& c = c_[k];
      if (c.is_zero()) continue;
      int e = lo_ + static_cast<int>(k);
      std::string cs = c.str();
      bool neg = c.is_real() && sgn(c.re()) < 0;
      if (neg) cs = (-c).str();
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      bool unit = (neg ? (-c).is_one() : c.is_one());
      if (e == 0) {
        os << cs;
      } else {
        if (!unit) os << cs << "*";
        os << "q";
        if (e != 1) os << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
      }
    }
    return os.str();
  }

 private:
  void trim() {
    std::size_t first = 0;
    while (first < c_.size() && c_[first].is_zero()) ++first;
    if (first == c_.size()) {
      c_.clear();
      lo_ = 0;
      return;
    }
    std::size_t last = c_.size();
    while (last > first && c_[last - 1].is_zero()) --last;
    if (first > 0 || last < c_.size()) {
      c_ = std::vector<GaussRat>(c_.begin() + static_cast<std::ptrdiff_t>(first),
                                 c_.begin() + static_cast<std::ptrdiff_t>(last));
      lo_ += static_cast<int>(first);
    }
  }

  int lo_ = 0;
  std::vector<GaussRat> c_;
};

/// Element of Q(i)(q). Canonical form: the denominator has lowest exponent 0,
/// leading coefficient 1, and no common factor with the numerator.
class Scalar {
 public:
  Scalar() : den_(GaussRat(1)) {}
  Scalar(long v) : num_(GaussRat(v)), den_(GaussRat(1)) {}  // NOLINT
  Scalar(GaussRat v) : num_(std::move(v)), den_(GaussRat(1)) {}  // NOLINT
  Scalar(LaurentPoly p) : num_(std::move(p)), den_(GaussRat(1)) {}  // NOLINT
  Scalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("zero denominator");
    normalize();
  }

  static Scalar q() { return Scalar(LaurentPoly(GaussRat(1), 1)); }
  static Scalar q_pow(int e) { return Scalar(LaurentPoly(GaussRat(1), e)); }
  static Scalar i() { return Scalar(GaussRat::i()); }
  static Scalar rational(long p, long r) { return Scalar(GaussRat(mpq_class(p, r))); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  /// Idempotent; public so property tests can exercise it.
  void normalize() {
    if (num_.is_zero()) {
      den_ = LaurentPoly(GaussRat(1));
      return;
    }
    if (den_.is_one()) return;
    int dl = den_.lo();
    if (dl != 0) {
      num_ = num_.shifted(-dl);
      den_ = den_.shifted(-dl);
    }
    if (den_.is_constant()) {
      num_ = num_.scaled(GaussRat(1) / den_.coeffs()[0]);
      den_ = LaurentPoly(GaussRat(1));
      return;
    }
    int nl = num_.lo();
    LaurentPoly p = num_.shifted(-nl);
    LaurentPoly g = LaurentPoly::gcd(p, den_);
    if (g.hi() > 0) {
      p = LaurentPoly::divmod(p, g).first;
      den_ = LaurentPoly::divmod(den_, g).first;
    }
    GaussRat lead_inv = GaussRat(1) / den_.leading();
    num_ = p.scaled(lead_inv).shifted(nl);
    den_ = den_.scaled(lead_inv);
  }

  Scalar conj() const {
    Scalar r;
    r.num_ = num_.conj();
    r.den_ = den_.conj();
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) throw Error("inverse of zero scalar");
    return Scalar(den_, num_);
  }

  Scalar operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.den_.is_one() && b.den_.is_one()) return Scalar(a.num_ + b.num_);
    if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
    return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return Scalar(a.num_ * b.num_);
    return Scalar(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  Scalar pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r = 1, b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  std::string str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  LaurentPoly num_;
  LaurentPoly den_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

/// Numeric value of an exact scalar at q = q0. Throws PoleError when the
/// denominator vanishes there.
inline std::complex<double> eval(const Scalar& s, double q0) {
  if (q0 == 0.0) {
    if (s.num().lo() < 0 || s.den().lo() < 0) throw PoleError("evaluation at q = 0");
  }
  long double ql = q0;
  auto d = s.den().eval<long double>(ql);
  long double scale = s.den().magnitude(ql);
  if (std::abs(d) <= 1e-14L * scale) throw PoleError("denominator vanishes at q = " + std::to_string(q0));
  auto n = s.num().eval<long double>(ql);
  auto v = n / d;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

/// Exact value at a Gaussian-rational point.
inline GaussRat eval_exact(const Scalar& s, const GaussRat& q0) {
  GaussRat d = s.den().eval_exact(q0);
  if (d.is_zero()) throw PoleError("denominator vanishes at q = " + q0.str());
  return s.num().eval_exact(q0) / d;
}

/// Complex value in 256-bit GMP floating point. Used for numeric residuals
/// whose terms cancel too strongly for double precision (large q-powers in
/// the monomial basis at small q).
struct BigComplex {
  static constexpr unsigned kBits = 256;
  mpf_class re{0, kBits}, im{0, kBits};

  BigComplex() = default;
  BigComplex(const GaussRat& g) : re(g.re(), kBits), im(g.im(), kBits) {}  // NOLINT
  BigComplex(mpf_class r, mpf_class i) : re(std::move(r), kBits), im(std::move(i), kBits) {}

  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const BigComplex& a, const mpf_class& r) { return {a.re * r, a.im * r}; }
  double abs() const { return std::hypot(re.get_d(), im.get_d()); }
};

/// Square root of a real positive value at an exact rational point.
inline mpf_class sqrt_big(const Scalar& s, const mpq_class& q0) {
  GaussRat v = eval_exact(s, GaussRat(q0));
  mpf_class x(v.re(), BigComplex::kBits);
  if (x < 0) throw Error("sqrt_big: negative radicand");
  return sqrt(x);
}

/// A complex value tied to the evaluation point it came from.
struct NumericScalar {
  std::complex<double> value;
  double q0;

  NumericScalar(std::complex<double> v, double q) : value(v), q0(q) {
    if (!(q > 0.0 && q < 1.0)) throw Error("numeric backend requires q0 in (0,1)");
  }
  static NumericScalar from(const Scalar& s, double q) { return {eval(s, q), q}; }
};

}  // namespace qsu2
