#pragma once

// Seeded generators for property checks.

#include <random>

#include "qsu2/psido.hpp"

namespace qsu2::rnd {

using Rng = std::mt19937_64;

inline long uniform(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

/// Small Gaussian rational.
inline GaussRat gauss_rat(Rng& g, bool complex_part = true) {
  mpq_class re(uniform(g, -5, 5), uniform(g, 1, 4)), im(complex_part ? uniform(g, -3, 3) : 0, uniform(g, 1, 3));
  re.canonicalize();
  im.canonicalize();
  return GaussRat(re, im);
}

/// Gaussian rational plus a small q-polynomial part.
inline Scalar scalar(Rng& g) {
  Scalar s(gauss_rat(g));
  if (uniform(g, 0, 2) == 0) s += Scalar::q_pow(static_cast<int>(uniform(g, -2, 2))) * Scalar(uniform(g, -3, 3));
  return s;
}

inline Monomial monomial(Rng& g, int max_degree) {
  int k = static_cast<int>(uniform(g, 0, max_degree));
  int n = static_cast<int>(uniform(g, 0, max_degree - k));
  int m = static_cast<int>(uniform(g, 0, max_degree - k - n));
  return Monomial::make(uniform(g, 0, 1) == 1, k, n, m);
}

/// A few terms of degree <= max_degree.
inline AlgElem element(Rng& g, int max_degree, int terms = 3) {
  AlgElem f;
  for (int t = 0; t < terms; ++t) f += AlgElem::mono(monomial(g, max_degree), Scalar(gauss_rat(g)));
  return f;
}

/// Every monomial of degree <= d, as normal-form basis elements.
inline std::vector<Monomial> all_monomials(int d) {
  std::vector<Monomial> out;
  for (int k = 0; k <= d; ++k)
    for (int n = 0; n + k <= d; ++n)
      for (int m = 0; m + n + k <= d; ++m) {
        out.push_back(Monomial::make(false, k, n, m));
        if (k > 0) out.push_back(Monomial::make(true, k, n, m));
      }
  return out;
}

/// Random full matrix at every level up to L, zero beyond.
inline Symbol scalar_symbol(Rng& g, HalfInt L, bool with_q = true) {
  std::map<HalfInt, Matrix<Scalar>> blocks;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    auto d = static_cast<std::size_t>(l.dim());
    Matrix<Scalar> m(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(r, c) = with_q ? scalar(g) : Scalar(gauss_rat(g));
    blocks.emplace(l, std::move(m));
  }
  return Symbol::scalar(std::move(blocks), L);
}

/// Random diagonal symbol (surd-free in the raw gauge).
inline Symbol diagonal_symbol(Rng& g, HalfInt L) {
  std::map<HalfInt, Matrix<Scalar>> blocks;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    auto d = static_cast<std::size_t>(l.dim());
    Matrix<Scalar> m(d, d);
    for (std::size_t r = 0; r < d; ++r) m(r, r) = scalar(g);
    blocks.emplace(l, std::move(m));
  }
  return Symbol::scalar(std::move(blocks), L);
}

/// Random combination of Peter-Weyl basis elements up to L.
inline PwVector pw_vector(Rng& g, HalfInt L, int terms = 4) {
  PwVector v;
  for (int t = 0; t < terms; ++t) {
    HalfInt l = HalfInt::from_twice(static_cast<int>(uniform(g, 0, L.twice())));
    v.add({l, static_cast<int>(uniform(g, 0, l.twice())), static_cast<int>(uniform(g, 0, l.twice()))}, Scalar(gauss_rat(g)));
  }
  return v;
}

}  // namespace qsu2::rnd
