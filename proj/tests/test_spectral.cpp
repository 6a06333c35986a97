#include <catch_amalgamated.hpp>

#include "qsu2/random.hpp"
#include "qsu2/spectral.hpp"

using namespace qsu2;

namespace {

HalfInt lvl(int twice) { return HalfInt::from_twice(twice); }

Symbol one_block(HalfInt l, Matrix<Scalar> S) { return Symbol::scalar({{l, std::move(S)}}, l); }

}  // namespace

TEST_CASE("finite rank", "[spectral]") {
  CHECK(TruncatedBlockOperator::dimension(HalfInt(1)) == 14);

  auto zero = rank_of(Symbol::scalar({}, HalfInt(0)), HalfInt(0));
  CHECK(zero.brute == 0);

  auto id = rank_of(Symbol::neutral().truncated(kHalf), kHalf);
  CHECK(id.brute == 5);
  CHECK(id.blockwise == 5);
  CHECK(id.stable());

  Matrix<Scalar> e(3, 3);
  e(0, 2) = Scalar(1);
  auto single = rank_of(one_block(HalfInt(1), e), HalfInt(1));
  CHECK(single.brute == 3);
  CHECK(single.stable());

  SECTION("monotone under enlarging the support") {
    rnd::Rng g(61);
    Symbol s = rnd::scalar_symbol(g, lvl(3));
    std::size_t prev = 0;
    for (int tw = 0; tw <= 3; ++tw) {
      auto r = rank_of(s.truncated(lvl(tw)), lvl(3));
      CHECK(r.brute == r.blockwise);
      CHECK(r.brute >= prev);
      prev = r.brute;
    }
  }
  SECTION("scalar symbols assemble block-diagonally") {
    rnd::Rng g(62);
    Symbol s = rnd::scalar_symbol(g, HalfInt(1));
    auto T = assemble_scalar(s, HalfInt(1), GaussRat(mpq_class(1, 2)));
    for (std::size_t r = 0; r < T.dim(); ++r)
      for (std::size_t c = 0; c < T.dim(); ++c)
        if (T.index[r].l != T.index[c].l) CHECK(T.matrix(r, c).is_zero());
  }
}

TEST_CASE("compactness bound", "[spectral]") {
  rnd::Rng g(63);
  auto none = compactness_gap(Symbol::neutral().truncated(HalfInt(2)), HalfInt(2), HalfInt(3), 0.5, 10, g);
  CHECK(none.lhs == 0);
  CHECK(none.rhs == 0);

  Symbol inv_dim = Symbol::diagonal([](HalfInt l) { return Scalar(GaussRat(mpq_class(1, l.dim()))); });
  for (double q0 : {0.3, 0.5, 0.9}) {
    auto r = compactness_gap(inv_dim, HalfInt(2), HalfInt(3), q0, 50, g);
    CHECK(r.holds());
    auto n = compactness_gap(Symbol::neutral(), HalfInt(2), HalfInt(3), q0, 50, g);
    CHECK(n.rhs == Catch::Approx(1.0));
    CHECK(n.holds());
    auto w = compactness_gap(rnd::scalar_symbol(g, HalfInt(3), false), HalfInt(1), HalfInt(3), q0, 50, g);
    CHECK(w.holds_weighted());
  }

  SECTION("the plain operator norm is not a bound for non-normal blocks") {
    Matrix<Scalar> S(2, 2);
    S(0, 1) = Scalar(1);
    auto r = compactness_gap(one_block(kHalf, S), HalfInt(0), kHalf, 0.5, 50, g);
    CHECK(r.rhs == Catch::Approx(1.0));
    CHECK(r.lhs == Catch::Approx(2.5).epsilon(0.2));
    CHECK_FALSE(r.holds());
    CHECK(r.rhs_weighted == Catch::Approx(4.0));
    CHECK(r.holds_weighted());
  }
  CHECK_THROWS_AS(compactness_gap(Symbol::multiplication(gen::a()), HalfInt(0), kHalf, 0.5, 1, g), KindError);
}

TEST_CASE("row sums are eigenvalues", "[spectral]") {
  auto id = row_sum_eigencheck(Symbol::neutral(), HalfInt(1));
  CHECK(id.lambda == Scalar(1));
  CHECK(id.residual_zero);

  Matrix<Scalar> ones(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) ones(i, j) = Scalar(1);
  auto r = row_sum_eigencheck(one_block(HalfInt(1), ones), HalfInt(1));
  CHECK(r.lambda == Scalar(3));
  CHECK(r.residual_zero);
  CHECK(r.multiplicity >= 3);

  Symbol d = Symbol::diagonal([](HalfInt) { return Scalar::q() + Scalar(2); });
  CHECK(row_sum_eigencheck(d, lvl(3)).lambda == Scalar::q() + Scalar(2));

  Matrix<Scalar> bad(2, 2);
  bad(0, 0) = Scalar(1);
  CHECK_THROWS_AS(row_sum_eigencheck(one_block(kHalf, bad), kHalf), ConsistencyError);
}

TEST_CASE("Fredholm index", "[spectral]") {
  CHECK(index_sum_formula(HalfInt(1), HalfInt(1)) == 50);
  CHECK(index_closed_form(HalfInt(1), HalfInt(1)) == 8);
  CHECK(index_sum_formula(kHalf, kHalf) == 13);
  CHECK(index_closed_form(kHalf, kHalf) == mpq_class(1, 3));

  SECTION("scalar everywhere gives index zero") {
    auto r = fredholm_index(HalfInt(1), HalfInt(0), HalfInt(2));
    CHECK(r.oracle == 0);
    CHECK(r.dim_ker == 0);
    CHECK(r.reproducible());
  }
  SECTION("square truncation: kernel and cokernel balance") {
    auto r = fredholm_index(kHalf, kHalf);
    CHECK(r.oracle == 0);
    CHECK(r.dim_ker == 1);
    CHECK(r.dim_coker == 1);
    CHECK(r.reproducible());
    CHECK(r.points_agree);
    CHECK_FALSE(r.agree_sum());
    CHECK_FALSE(r.agree_closed());
  }
  SECTION("a truncation the image escapes is rejected") {
    Symbol s = switch_symbol(HalfInt(2), kHalf, -kHalf, -kHalf);
    CHECK_THROWS_AS(assemble_algebra(s, HalfInt(1), GaussRat(mpq_class(1, 2))), ConsistencyError);
  }
}
