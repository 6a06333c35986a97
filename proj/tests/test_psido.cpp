#include <catch_amalgamated.hpp>

#include "qsu2/random.hpp"

using namespace qsu2;

namespace {

const Scalar q = Scalar::q();

HalfInt lvl(int twice) { return HalfInt::from_twice(twice); }

void check_same_blocks(const Symbol& x, const Symbol& y, HalfInt L) {
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = lvl(tw);
    if (x.is_scalar() && y.is_scalar())
      CHECK(x.scalar_block(l) == y.scalar_block(l));
    else
      CHECK(x.raw_algebra_block(l) == y.raw_algebra_block(l));
  }
}

Symbol single_entry(HalfInt l, std::size_t r, std::size_t c) {
  Matrix<Scalar> S(static_cast<std::size_t>(l.dim()), static_cast<std::size_t>(l.dim()));
  S(r, c) = Scalar(1);
  return Symbol::scalar({{l, S}}, l);
}

}  // namespace

TEST_CASE("application", "[psido]") {
  rnd::Rng g(41);
  SECTION("neutral symbol is the identity") {
    for (int t = 0; t < 10; ++t) {
      PwVector f = rnd::pw_vector(g, lvl(3));
      CHECK(apply(Symbol::neutral(), f) == f);
      AlgElem e = rnd::element(g, 3);
      CHECK(apply(Symbol::neutral(), e) == e);
    }
  }
  SECTION("Dirac-type diagonal symbol") {
    Symbol D = Symbol::diagonal([](HalfInt l) { return Scalar(l.dim()); });
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(apply(D, PwVector::basis(kHalf, i, j)) == PwVector::basis(kHalf, i, j, Scalar(2)));
        CHECK(apply(D, corep(kHalf)(i, j)) == corep(kHalf)(i, j).scaled(Scalar(2)));
      }
  }
  SECTION("multiplication operator") {
    CHECK(apply(Symbol::multiplication(gen::a()), gen::c()) == gen::a() * gen::c());
    for (int t = 0; t < 10; ++t) {
      AlgElem x = rnd::element(g, 2), f = rnd::element(g, 3);
      CHECK(apply(Symbol::multiplication(x), f) == x * f);
    }
  }
  SECTION("scalar symbols never mix levels") {
    for (int t = 0; t < 5; ++t) {
      Symbol s = rnd::scalar_symbol(g, lvl(3));
      for (const auto& b : peter_weyl_basis(lvl(3))) {
        auto img = apply(s, PwVector::basis(b.l, slot(b.l, b.i), slot(b.l, b.j)));
        for (const auto& [k, c] : img.coords()) CHECK(k.l == b.l);
      }
    }
  }
  SECTION("algebra-valued symbols stay inside the Clebsch-Gordan band") {
    Symbol Ma = Symbol::multiplication(gen::a());
    for (int tw = 0; tw <= 3; ++tw) {
      HalfInt l = lvl(tw);
      for (int i = 0; i < l.dim(); ++i)
        for (int j = 0; j < l.dim(); ++j)
          for (const auto& [k, c] : raw_expand(apply(Ma, corep(l)(i, j)))) {
            CHECK(k.l >= (l > kHalf ? l - kHalf : kHalf - l));
            CHECK(k.l <= l + kHalf);
          }
    }
  }
  SECTION("only the weighted-coefficient trace gives the identity") {
    auto f = PwVector::basis(HalfInt(1), 0, 2);
    CHECK(apply(Symbol::neutral(), f, TraceConvention::weighted_output) == f);
    CHECK_FALSE(apply(Symbol::neutral(), f, TraceConvention::plain) == f);
  }
}

TEST_CASE("basis action closed form", "[psido]") {
  rnd::Rng g(42);
  const HalfInt L = lvl(3);
  int printed_mismatch = 0;
  for (int t = 0; t < 20; ++t) {
    Symbol s = rnd::scalar_symbol(g, L);
    Symbol rev = Symbol::scalar_rule(
        [s](HalfInt l) {
          auto S = s.scalar_block(l);
          auto out = S;
          for (std::size_t r = 0; r < S.rows(); ++r)
            for (std::size_t c = 0; c < S.cols(); ++c) out(r, c) = S(S.rows() - 1 - r, c);
          return out;
        },
        L);
    for (const auto& b : peter_weyl_basis(L)) {
      int i = slot(b.l, b.i), j = slot(b.l, b.j);
      PwVector def = apply(s, PwVector::basis(b.l, i, j));
      REQUIRE(basis_action(s, b.l, i, j) == def);
      REQUIRE(basis_action_printed(rev, b.l, i, j) == def);
      if (!(basis_action_printed(s, b.l, i, j) == def)) ++printed_mismatch;
    }
  }
  // the printed index layout, read with rows -l..l, is not the action
  CHECK(printed_mismatch > 0);

  SECTION("examples") {
    CHECK(basis_action(Symbol::neutral(), HalfInt(1), 0, 2) == PwVector::basis(HalfInt(1), 0, 2));
    Matrix<Scalar> D(3, 3);
    D(0, 0) = Scalar(5);
    D(1, 1) = Scalar(7);
    D(2, 2) = q;
    Symbol d = Symbol::scalar({{HalfInt(1), D}}, HalfInt(1));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(basis_action(d, HalfInt(1), i, j) == PwVector::basis(HalfInt(1), i, j, D(static_cast<std::size_t>(j), static_cast<std::size_t>(j))));
    // a single entry sigma_rc moves column c to column r
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) {
        Symbol e = single_entry(kHalf, r, c);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            auto img = basis_action(e, kHalf, i, j);
            CHECK(img == (static_cast<std::size_t>(j) == c ? PwVector::basis(kHalf, i, static_cast<int>(r)) : PwVector()));
            CHECK(img == apply(e, PwVector::basis(kHalf, i, j)));
          }
      }
  }
}

TEST_CASE("norm of the image of a basis element", "[psido]") {
  // |T t_ij|^2 = sum_c |sigma_cj|^2 [2l+1]^-1 q^(2c), c the row weight
  rnd::Rng g(43);
  bool flipped_fails = false;
  for (int t = 0; t < 5; ++t) {
    Symbol s = rnd::scalar_symbol(g, lvl(3));
    for (int tw = 0; tw <= 3; ++tw) {
      HalfInt l = lvl(tw);
      auto S = s.scalar_block(l);
      for (int i = 0; i < l.dim(); ++i)
        for (int j = 0; j < l.dim(); ++j) {
          Scalar want, flipped;
          for (int c = 0; c < l.dim(); ++c) {
            const Scalar& x = S(static_cast<std::size_t>(c), static_cast<std::size_t>(j));
            want += x * x.conj() * qnum(l.dim()).inverse() * Scalar::q_pow(weight(l, c).twice());
            flipped += x * x.conj() * qnum(l.dim()).inverse() * Scalar::q_pow(-weight(l, c).twice());
          }
          Scalar got = norm2(apply(s, PwVector::basis(l, i, j)));
          CHECK(got == want);
          if (!(got == flipped)) flipped_fails = true;
        }
    }
  }
  CHECK(flipped_fails);
}

TEST_CASE("symbol extraction", "[psido]") {
  const HalfInt L = lvl(3);
  check_same_blocks(symbol_of([](HalfInt l, int i, int j) { return PwVector::basis(l, i, j); }, L), Symbol::neutral(), L);
  rnd::Rng g(44);
  for (int t = 0; t < 3; ++t) {
    Symbol s = rnd::scalar_symbol(g, L);
    check_same_blocks(symbol_of(as_basis_op(s), L), s, L);
  }
  check_same_blocks(symbol_of_alg(as_op(Symbol::multiplication(gen::a())), HalfInt(1)), Symbol::multiplication(gen::a()),
                    HalfInt(1));
  // an operator without a scalar symbol
  BasisOp swap = [](HalfInt l, int i, int j) { return PwVector::basis(l, l.dim() - 1 - i, j); };
  CHECK_THROWS_AS(symbol_of(swap, kHalf), ConsistencyError);
}

TEST_CASE("composition formula I", "[psido]") {
  const HalfInt L(1);
  rnd::Rng g(45);
  Symbol A = rnd::scalar_symbol(g, L), B = rnd::scalar_symbol(g, L);
  check_same_blocks(compose_scalar(A, Symbol::neutral()), A, L);

  BasisOp a = as_basis_op(A), b = as_basis_op(B);
  BasisOp ab = [a, b](HalfInt l, int i, int j) { return apply_op(a, b(l, i, j)); };
  check_same_blocks(symbol_of(ab, L), compose_scalar(A, B), L);

  Symbol lam = Symbol::diagonal([](HalfInt l) { return Scalar(l.twice() + 3); });
  Symbol mu = Symbol::diagonal([](HalfInt l) { return q.pow(l.twice()); });
  check_same_blocks(compose_scalar(lam, mu), Symbol::diagonal([](HalfInt l) { return Scalar(l.twice() + 3) * q.pow(l.twice()); }), L);

  CHECK_THROWS_AS(compose_scalar(A, Symbol::multiplication(gen::a())), KindError);
}

TEST_CASE("Fourier order", "[psido]") {
  const HalfInt L(1);
  rnd::Rng g(46);
  auto s = fourier_order(rnd::scalar_symbol(g, L), L);
  CHECK(s.order == HalfInt(0));
  CHECK(s.homogeneous);

  auto a = fourier_order(Symbol::multiplication(gen::a()), L);
  CHECK(a.homogeneous);
  CHECK(a.order == kHalf);
  for (const auto& [l, m] : a.psi)
    for (const auto& [ij, rs] : m) {
      if (ij.first != ij.second) continue;
      CHECK(rs == std::pair{-kHalf, -kHalf});
    }

  auto mixed = fourier_order(Symbol::multiplication(gen::a() + AlgElem(1)), L);
  CHECK_FALSE(mixed.homogeneous);
  CHECK(mixed.levels == std::set<HalfInt>{HalfInt(0), kHalf});
}

TEST_CASE("adjoint", "[psido]") {
  const HalfInt L(1);
  rnd::Rng g(47);
  SECTION("scalar symbols") {
    Symbol s = rnd::scalar_symbol(g, L);
    Symbol b = adjoint(s, L);
    for (const auto& x : peter_weyl_basis(L))
      for (const auto& y : peter_weyl_basis(L)) {
        auto f = PwVector::basis(x.l, slot(x.l, x.i), slot(x.l, x.j));
        auto h = PwVector::basis(y.l, slot(y.l, y.i), slot(y.l, y.j));
        CHECK(inner(h, apply(s, f)) == inner(apply(b, h), f));
      }
    check_same_blocks(adjoint(adjoint(s, lvl(3)), lvl(3)), s, lvl(3));
    Symbol d = Symbol::diagonal([](HalfInt l) { return Scalar(l.twice() - 4); });
    check_same_blocks(adjoint(d, lvl(3)), d, lvl(3));
  }
  SECTION("multiplication by a") {
    Symbol Ma = Symbol::multiplication(gen::a());
    Symbol Mas = adjoint(Ma, L);
    for (const auto& x : peter_weyl_basis(L))
      for (const auto& y : peter_weyl_basis(L))
        CHECK(inner(y.raw, apply(Ma, x.raw)) == inner(apply(Mas, y.raw), x.raw));
    // with the twisted Haar state the adjoint is q^-2 M_{a*}
    check_same_blocks(Mas, Symbol::multiplication(gen::a_star().scaled(q.pow(-2))), L);
    CHECK(fourier_order(Mas, L).order.value() <= kHalf);
  }
}

TEST_CASE("grading", "[psido]") {
  const HalfInt L = kHalf;
  rnd::Rng g(48);
  std::vector<std::pair<Symbol, HalfInt>> ops{{rnd::diagonal_symbol(g, lvl(3)), HalfInt(0)},
                                              {Symbol::multiplication(gen::a()), kHalf},
                                              {Symbol::multiplication(gen::a() * gen::a()), HalfInt(1)}};
  for (const auto& [x, kx] : ops)
    for (const auto& [y, ky] : ops) {
      auto r = order_of_composition(x, kx, y, ky, L);
      CHECK(r.within_bound);
    }
  auto aa = order_of_composition(ops[1].first, kHalf, ops[1].first, kHalf, L);
  CHECK(aa.order.order == HalfInt(1));

  SECTION("inverse witness") {
    Symbol D = Symbol::diagonal([](HalfInt l) { return Scalar(l.dim()); });
    Symbol Dinv = Symbol::diagonal([](HalfInt l) { return Scalar(GaussRat(mpq_class(1, l.dim()))); });
    CHECK(verify_inverse_witness(D, Dinv, HalfInt(1)));
    CHECK_FALSE(verify_inverse_witness(D, D, HalfInt(1)));
    CHECK(order_of_composition(D, HalfInt(0), Dinv, HalfInt(0), HalfInt(1)).order.order == HalfInt(0));
  }
}
