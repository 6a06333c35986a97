#pragma once

// The acceptance suite: one check per criterion, each returning a pass flag
// and a one-line detail. Deterministic for a given seed.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qsu2/circle.hpp"
#include "qsu2/composition.hpp"
#include "qsu2/random.hpp"
#include "qsu2/spectral.hpp"

namespace qsu2::selfcheck {

struct Result {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline AlgElem id(const AlgElem& x) { return x; }

template <class... T>
std::string cat(const T&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

}  // namespace detail

// 1 ---------------------------------------------------------------------------

inline Result hopf_haar(rnd::Rng& g) {
  Result r{1, "Hopf/Haar exactness", false, {}};
  int assoc_bad = 0;
  for (int t = 0; t < 200; ++t) {
    AlgElem x = rnd::element(g, 4, 2), y = rnd::element(g, 4, 2), z = rnd::element(g, 4, 2);
    if (!((x * y) * z == x * (y * z))) ++assoc_bad;
  }
  int axiom_bad = 0, axioms = 0;
  for (const auto& mo : rnd::all_monomials(3)) {
    AlgElem f = AlgElem::mono(mo);
    TensorElem D = coproduct(f);
    AlgElem e1(counit(f));
    auto S = [](const AlgElem& x) { return antipode(x); };
    bool ok = counit_tensor_id(D) == f && id_tensor_counit(D) == f && D.contract(S, detail::id) == e1 &&
              D.contract(detail::id, S) == e1;
    ++axioms;
    if (!ok) ++axiom_bad;
  }
  int haar_bad = 0, haars = 0;
  for (const auto& mo : rnd::all_monomials(6)) {
    AlgElem f = AlgElem::mono(mo);
    TensorElem D = coproduct(f);
    AlgElem h1(haar(f));
    ++haars;
    if (!(id_tensor_haar(D) == h1) || !(haar_tensor_id(D) == h1)) ++haar_bad;
  }
  r.pass = assoc_bad == 0 && axiom_bad == 0 && haar_bad == 0;
  r.detail = detail::cat("associativity 200 triples, ", assoc_bad, " bad; Hopf axioms on ", axioms, " monomials, ",
                         axiom_bad, " bad; Haar invariance on ", haars, " monomials, ", haar_bad, " bad");
  return r;
}

// 2 ---------------------------------------------------------------------------

inline Result corep_cert() {
  Result r{2, "Corepresentation certification", false, {}};
  int coprod_bad = 0;
  for (int tw = 0; tw <= 3; ++tw) {
    const auto& M = corep(HalfInt::from_twice(tw));
    for (int i = 0; i < M.dim(); ++i)
      for (int j = 0; j < M.dim(); ++j) {
        TensorElem s;
        for (int k = 0; k < M.dim(); ++k) s += TensorElem::pure(M(i, k), M(k, j));
        if (!(coproduct(M(i, j)) == s) || !(counit(M(i, j)) == Scalar(i == j ? 1 : 0))) ++coprod_bad;
      }
  }
  double worst = 0;
  for (double q0 : {0.3, 0.5, 0.9})
    for (int tw = 0; tw <= 6; ++tw) worst = std::max(worst, unitarity_residual(corep(HalfInt::from_twice(tw)), q0));
  int schur_bad = 0;
  int pattern = 0;
  for (int tw = 0; tw <= 3; ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    pattern = corep(l).pattern;
    Scalar inv_dim = qnum(l.dim()).inverse();
    for (int i = 0; i < l.dim(); ++i)
      for (int j = 0; j < l.dim(); ++j)
        for (int k = 0; k < l.dim(); ++k)
          for (int m = 0; m < l.dim(); ++m) {
            // h(t_ij t_km*) = delta_ik delta_jm [2l+1]^-1 q^(2j)
            Scalar expect = (i == k && j == m) ? inv_dim * Scalar::q_pow(weight(l, j).twice()) : Scalar();
            if (!(basis_pairing(l, i, j, k, m) == expect)) ++schur_bad;
          }
  }
  r.pass = coprod_bad == 0 && worst < 1e-10 && schur_bad == 0 && pattern == 2;
  r.detail = detail::cat("coproduct/counit l<=3/2: ", coprod_bad, " bad; max unitarity residual l<=3 = ", worst,
                         "; Schur constants [2l+1]^-1 q^(", pattern > 0 ? "+" : "", pattern, "j): ", schur_bad, " bad");
  return r;
}

// 3 ---------------------------------------------------------------------------

inline Result fourier_thms(rnd::Rng& g) {
  Result r{3, "Fourier inversion and Plancherel", false, {}};
  int basis_bad = 0, n = 0;
  for (const auto& b : peter_weyl_basis(HalfInt(2))) {
    ++n;
    AlgElem f = corep(b.l)(slot(b.l, b.i), slot(b.l, b.j));
    if (!(inverse(transform(f)) == f)) ++basis_bad;
  }
  int combo_bad = 0;
  for (int t = 0; t < 50; ++t) {
    AlgElem f;
    for (int k = 0; k < 3; ++k) {
      HalfInt l = HalfInt::from_twice(static_cast<int>(rnd::uniform(g, 0, 4)));
      f += corep(l)(static_cast<int>(rnd::uniform(g, 0, l.twice())), static_cast<int>(rnd::uniform(g, 0, l.twice())))
               .scaled(Scalar(rnd::gauss_rat(g)));
    }
    if (!(inverse(transform(f)) == f)) ++combo_bad;
  }
  int planch_bad = 0;
  for (int t = 0; t < 10; ++t) {
    auto [lhs, rhs] = plancherel_pair(rnd::element(g, 4, 3), rnd::element(g, 4, 3));
    if (!(lhs == rhs)) ++planch_bad;
  }
  r.pass = basis_bad == 0 && combo_bad == 0 && planch_bad == 0;
  r.detail = detail::cat("round trip on ", n, " basis elements: ", basis_bad, " bad; 50 combinations: ", combo_bad,
                         " bad; Plancherel on 10 pairs: ", planch_bad, " bad");
  return r;
}

// 4 ---------------------------------------------------------------------------

/// sigma with rows reversed.
inline Symbol row_reversed(const Symbol& s) {
  return Symbol::scalar_rule(
      [s](HalfInt l) {
        auto S = s.scalar_block(l);
        auto out = S;
        for (std::size_t r = 0; r < S.rows(); ++r)
          for (std::size_t c = 0; c < S.cols(); ++c) out(r, c) = S(S.rows() - 1 - r, c);
        return out;
      },
      s.support_bound());
}

inline Result key_lemma(rnd::Rng& g) {
  Result r{4, "Key Lemma closed form", false, {}};
  const HalfInt L = HalfInt::from_twice(3);
  int bad = 0, printed_raw = 0, printed_perm = 0, n = 0;
  for (int t = 0; t < 20; ++t) {
    Symbol s = rnd::scalar_symbol(g, L);
    Symbol rev = row_reversed(s);
    for (const auto& b : peter_weyl_basis(L)) {
      int i = slot(b.l, b.i), j = slot(b.l, b.j);
      ++n;
      PwVector def = apply(s, PwVector::basis(b.l, i, j));
      if (!(def == basis_action(s, b.l, i, j))) ++bad;
      if (!(def == basis_action_printed(s, b.l, i, j))) ++printed_raw;
      if (!(def == basis_action_printed(rev, b.l, i, j))) ++printed_perm;
    }
  }
  r.pass = bad == 0 && printed_perm == 0;
  r.detail = detail::cat(n, " (symbol, basis) cases: closed form ", bad, " bad; printed layout as read ", printed_raw,
                         " mismatches, after row reversal ", printed_perm);
  return r;
}

// 5 ---------------------------------------------------------------------------

inline Result composition_one(rnd::Rng& g) {
  Result r{5, "Composition Formula I", false, {}};
  const HalfInt L = HalfInt::from_twice(3);
  int bad = 0;
  for (int t = 0; t < 5; ++t) {
    Symbol A = rnd::scalar_symbol(g, L), B = rnd::scalar_symbol(g, L);
    BasisOp a = as_basis_op(A), b = as_basis_op(B);
    BasisOp ab = [a, b](HalfInt l, int i, int j) { return apply_op(a, b(l, i, j)); };
    Symbol got = symbol_of(ab, L), want = compose_scalar(A, B);
    for (int tw = 0; tw <= L.twice(); ++tw)
      if (!(got.scalar_block(HalfInt::from_twice(tw)) == want.scalar_block(HalfInt::from_twice(tw)))) ++bad;
  }
  int alg_bad = 0;
  for (int t = 0; t < 3; ++t) {
    Symbol A = Symbol::multiplication(rnd::element(g, 1, 2)), D = rnd::diagonal_symbol(g, L);
    AlgOp op = [A, D](const AlgElem& f) { return apply(A, apply(D, f)); };
    Symbol got = symbol_of_alg(op, L), want = compose_scalar(A, D);
    for (int tw = 0; tw <= L.twice(); ++tw)
      if (!(got.raw_algebra_block(HalfInt::from_twice(tw)) == want.raw_algebra_block(HalfInt::from_twice(tw)))) ++alg_bad;
  }
  r.pass = bad == 0 && alg_bad == 0;
  r.detail = detail::cat("scalar pairs, 5 x 4 levels: ", bad, " bad blocks; algebra-valued left factor, 3 x 4 levels: ",
                         alg_bad, " bad blocks");
  return r;
}

// 6 ---------------------------------------------------------------------------

inline Result composition_two(rnd::Rng& g, HalfInt L = HalfInt::from_twice(3)) {
  Result r{6, "Composition Formula II", false, {}};
  const double q0 = 0.5;
  Symbol Ma = Symbol::multiplication(gen::a());
  double inner_first = 0, beta_first = 0, top_only = 0, off_level = 0;
  for (int t = 0; t < 10; ++t) {
    Symbol beta = rnd::scalar_symbol(g, L + kHalf);
    // M_a applied after T_beta: symbol sigma beta_raw
    auto lit = numeric_symbol_of(compose(algebra_num_op(Ma, q0), scalar_num_op(beta, q0)), L, q0);
    auto c1 = compare_top(lit, outer_symbol_compose(Ma, beta, L, q0), kHalf);
    // T_beta applied after M_a: the Clebsch-Gordan formula
    auto rev = numeric_symbol_of(compose(scalar_num_op(beta, q0), algebra_num_op(Ma, q0)), L, q0);
    auto c2 = compare_top(rev, principal_symbol_compose(Ma, kHalf, beta, L, q0), kHalf);
    auto c3 = compare_top(rev, principal_symbol_compose(Ma, kHalf, beta, L, q0, PrincipalVariant::top_only), kHalf);
    inner_first = std::max(inner_first, c1.top_residual);
    beta_first = std::max(beta_first, c2.top_residual);
    top_only = std::max(top_only, c3.top_residual);
    off_level = std::max({off_level, c1.off_level, c2.off_level});
  }
  r.pass = inner_first < 1e-8 && beta_first < 1e-8;
  r.detail = detail::cat("10 random beta, q=0.5, l<=", L.str(), ": M_a o T_beta vs sigma*beta_raw ", inner_first,
                         "; T_beta o M_a vs full-band formula ", beta_first, "; top-level-only variant ", top_only,
                         " (discrepancy); off-level mass ", off_level);
  return r;
}

// 7 ---------------------------------------------------------------------------

inline Result adjoint_check(rnd::Rng& g) {
  Result r{7, "Adjoint", false, {}};
  const HalfInt L(1);
  int bad = 0, pairs = 0;
  for (int t = 0; t < 3; ++t) {
    Symbol s = rnd::scalar_symbol(g, L);
    Symbol b = adjoint(s, L);
    for (const auto& x : peter_weyl_basis(L))
      for (const auto& y : peter_weyl_basis(L)) {
        auto f = PwVector::basis(x.l, slot(x.l, x.i), slot(x.l, x.j));
        auto h = PwVector::basis(y.l, slot(y.l, y.i), slot(y.l, y.j));
        ++pairs;
        if (!(inner(h, apply(s, f)) == inner(apply(b, h), f))) ++bad;
      }
  }
  int alg_bad = 0;
  Symbol Ma = Symbol::multiplication(gen::a());
  Symbol Mas = adjoint(Ma, L);
  for (const auto& x : peter_weyl_basis(L))
    for (const auto& y : peter_weyl_basis(L)) {
      const AlgElem& f = corep(x.l)(slot(x.l, x.i), slot(x.l, x.j));
      const AlgElem& h = corep(y.l)(slot(y.l, y.i), slot(y.l, y.j));
      ++pairs;
      if (!(inner(h, apply(Ma, f)) == inner(apply(Mas, h), f))) ++alg_bad;
    }
  auto o0 = fourier_order(adjoint(rnd::scalar_symbol(g, L), L), L).order.value_or(HalfInt(0));
  auto o1 = fourier_order(Mas, L).order.value_or(HalfInt(0));
  r.pass = bad == 0 && alg_bad == 0 && o0 <= HalfInt(0) && o1 <= kHalf;
  r.detail = detail::cat(pairs, " basis pairs l,m<=1: ", bad + alg_bad, " bad; order(adjoint) ", o0.str(),
                         " for order 0, ", o1.str(), " for order 1/2 (M_a)");
  return r;
}

// 8 ---------------------------------------------------------------------------

inline Result spectral_check(rnd::Rng& g) {
  Result r{8, "Spectral properties", false, {}};
  // finite rank
  std::vector<std::pair<Symbol, HalfInt>> cases;
  cases.emplace_back(Symbol::scalar({}, HalfInt(0)), HalfInt(0));
  cases.emplace_back(Symbol::neutral().truncated(kHalf), kHalf);
  {
    Matrix<Scalar> e(3, 3);
    e(0, 2) = Scalar(1);
    cases.emplace_back(Symbol::scalar({{HalfInt(1), e}}, HalfInt(1)), HalfInt(1));
  }
  {
    // rank-one block at 3/2 plus a random block at 1/2
    auto u = rnd::scalar_symbol(g, HalfInt(0));
    Matrix<Scalar> R(4, 4);
    std::vector<Scalar> x(4), y(4);
    for (auto& v : x) v = rnd::scalar(g);
    for (auto& v : y) v = rnd::scalar(g);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) R(i, j) = x[i] * y[j];
    Matrix<Scalar> H(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) H(i, j) = rnd::scalar(g);
    cases.emplace_back(Symbol::scalar({{kHalf, H}, {HalfInt::from_twice(3), R}}, HalfInt::from_twice(3)),
                       HalfInt::from_twice(3));
  }
  int rank_bad = 0;
  std::string ranks;
  for (const auto& [s, N] : cases) {
    auto rep = rank_of(s, N);
    if (rep.brute != rep.blockwise || !rep.stable()) ++rank_bad;
    ranks += (ranks.empty() ? "" : ",") + std::to_string(rep.brute);
  }
  // row sums
  int eig_bad = 0;
  for (int tw = 0; tw <= 3; ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    auto d = static_cast<std::size_t>(l.dim());
    Matrix<Scalar> S(d, d);
    Scalar lambda = rnd::scalar(g);
    for (std::size_t i = 0; i < d; ++i) {
      Scalar acc;
      for (std::size_t j = 0; j + 1 < d; ++j) {
        S(i, j) = rnd::scalar(g);
        acc += S(i, j);
      }
      S(i, d - 1) = lambda - acc;
    }
    auto e = row_sum_eigencheck(Symbol::scalar({{l, S}}, l), l);
    if (!e.residual_zero || e.multiplicity < l.dim() || !(e.lambda == lambda)) ++eig_bad;
  }
  // compactness
  int cmp_bad = 0;
  double worst_ratio = 0;
  Symbol inv_dim = Symbol::diagonal([](HalfInt l) { return Scalar(GaussRat(mpq_class(1, l.dim()))); });
  Symbol general = rnd::scalar_symbol(g, HalfInt(3), false);
  for (double q0 : {0.3, 0.5, 0.9}) {
    auto a = compactness_gap(inv_dim, HalfInt(2), HalfInt(3), q0, 50, g);
    auto b = compactness_gap(Symbol::neutral(), HalfInt(2), HalfInt(3), q0, 50, g);
    auto c = compactness_gap(general, HalfInt(2), HalfInt(3), q0, 50, g);
    if (!a.holds() || !b.holds() || !c.holds_weighted()) ++cmp_bad;
    worst_ratio = std::max({worst_ratio, a.lhs / a.rhs, b.lhs / b.rhs, c.lhs / c.rhs_weighted});
  }
  r.pass = rank_bad == 0 && eig_bad == 0 && cmp_bad == 0;
  r.detail = detail::cat("ranks {", ranks, "} brute = blockwise, ", rank_bad, " bad; row-sum eigen l<=3/2: ", eig_bad,
                         " bad; compactness 50 trials x 3 q: ", cmp_bad, " bad (max lhs/rhs ", worst_ratio, ")");
  return r;
}

// 9 ---------------------------------------------------------------------------

inline std::vector<FredholmReport> fredholm_reports() {
  std::vector<FredholmReport> out;
  for (auto [n2, m2] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}})
    out.push_back(fredholm_index(HalfInt::from_twice(n2), HalfInt::from_twice(m2)));
  return out;
}

inline Result fredholm_check() {
  Result r{9, "Fredholm index three-way report", false, {}};
  r.pass = true;
  std::string rows;
  for (const auto& f : fredholm_reports()) {
    r.pass = r.pass && f.reproducible() && f.points_agree;
    rows += detail::cat(rows.empty() ? "" : "; ", "(N,m)=(", f.N.str(), ",", f.m.str(), ") oracle ", f.oracle, " [ker ",
                        f.dim_ker, ", coker ", f.dim_coker, "] sum ", f.sum_formula, " closed ", f.closed_form.get_str(),
                        f.reproducible() ? " reproducible" : " NOT reproducible");
  }
  r.detail = rows;
  return r;
}

// 10 --------------------------------------------------------------------------

inline Result circle_check() {
  Result r{10, "Circle representation", false, {}};
  double act = 0, rel = 0;
  for (double q0 : {0.3, 0.5, 0.9}) {
    for (const auto& l : circle::woronowicz_residuals(q0, {0.6, 0.8}, 32)) act = std::max(act, l.max_residual);
    for (const auto& l : circle::relation_residuals(q0, {0.6, 0.8}, 32)) rel = std::max(rel, l.max_residual);
  }
  auto x = circle::su_matrix_product({0, 1}, {-1, 0}, 0.5, 32);
  double x12 = circle::x12_scaled_residual({0, 1}, {-1, 0}, 0.5, 32);
  r.pass = act < 1e-12 && rel < 1e-10;
  r.detail = detail::cat("action residual ", act, "; relation residual ", rel, "; X_z X_z' vs stated blocks (",
                         x.residual[0], ", ", x.residual[1], ", ", x.residual[2], ", ", x.residual[3],
                         "), (1,2) against -q^2 X21* ", x12);
  return r;
}

// 11 --------------------------------------------------------------------------

inline Result regular_check(rnd::Rng& g) {
  Result r{11, "Regular-representation invariance", false, {}};
  const HalfInt L(1);
  const std::vector<std::pair<std::string, Scalar>> vs{{"1", Scalar(1)}, {"i", Scalar::i()}, {"-1", Scalar(-1)}, {"-i", -Scalar::i()}};
  std::string per_v;
  bool all = true, predicted = true, diag_ok = true;
  std::vector<Symbol> symbols;
  for (int t = 0; t < 5; ++t) symbols.push_back(rnd::scalar_symbol(g, L));
  Symbol diag = rnd::diagonal_symbol(g, L);
  for (const auto& [name, v] : vs) {
    std::size_t fails = 0, total = 0;
    for (const auto& s : symbols) {
      auto rep = circle::regular_invariance(s, v, L);
      fails += rep.failing.size();
      total += TruncatedBlockOperator::dimension(L);
      predicted = predicted && rep.prediction_matches;
    }
    diag_ok = diag_ok && circle::regular_invariance(diag, v, L).commutes;
    all = all && fails == 0;
    per_v += detail::cat(per_v.empty() ? "" : ", ", "v=", name, ": ", fails, "/", total);
  }
  r.pass = all;
  r.detail = detail::cat("random scalar symbols, non-commuting basis elements ", per_v,
                         "; diagonal symbols commute: ", diag_ok ? "yes" : "no",
                         "; failures exactly where sigma_cb != 0 and v^(b-c) != 1: ", predicted ? "yes" : "no");
  return r;
}

// ---------------------------------------------------------------------------

inline std::vector<std::function<Result(rnd::Rng&)>> suite() {
  return {
      hopf_haar,
      [](rnd::Rng&) { return corep_cert(); },
      fourier_thms,
      key_lemma,
      composition_one,
      [](rnd::Rng& g) { return composition_two(g); },
      adjoint_check,
      spectral_check,
      [](rnd::Rng&) { return fredholm_check(); },
      [](rnd::Rng&) { return circle_check(); },
      regular_check,
  };
}

inline std::string line(const Result& r) {
  return detail::cat("[", r.pass ? "PASS" : "FAIL", "] ", r.id, ". ", r.title, ": ", r.detail);
}

}  // namespace qsu2::selfcheck
