#include <catch_amalgamated.hpp>

#include "qsu2/qnumbers.hpp"
#include "qsu2/random.hpp"

using namespace qsu2;
using Catch::Approx;

TEST_CASE("q-numbers", "[scalars]") {
  const Scalar q = Scalar::q();
  CHECK(qnum(0).is_zero());
  CHECK(qnum(1) == Scalar(1));
  CHECK(qnum(2) == q.inverse() + q);
  CHECK(qnum(3) == Scalar::q_pow(-2) + Scalar(1) + Scalar::q_pow(2));

  SECTION("defining ratio") {
    for (int x = 0; x <= 8; ++x) {
      Scalar ratio = (q.pow(x) - q.pow(-x)) / (q - q.inverse());
      CHECK(ratio == qnum(x));
    }
  }
  SECTION("odd in x") {
    for (int x = -20; x <= 20; ++x) CHECK(qnum(-x) == -qnum(x));
  }
  SECTION("classical limit") {
    for (int x = 0; x <= 10; ++x) CHECK(std::abs(eval(qnum(x), 0.999) - double(x)) < 0.05);
  }
}

TEST_CASE("evaluation", "[scalars]") {
  CHECK(eval(Scalar::q(), 0.5).real() == Approx(0.5));
  CHECK(eval(qnum(2), 0.5).real() == Approx(2.5));
  Scalar pole = Scalar(1) / (Scalar(1) - Scalar::q());
  CHECK_THROWS_AS(eval(pole, 1.0), PoleError);
  CHECK_THROWS_AS(eval_exact(pole, GaussRat(1)), PoleError);
  CHECK(eval_exact(qnum(2), GaussRat(mpq_class(1, 2))) == GaussRat(mpq_class(5, 2)));

  SECTION("multiplicative on random inputs") {
    rnd::Rng g(7);
    for (int t = 0; t < 200; ++t) {
      Scalar x = rnd::scalar(g), y = rnd::scalar(g);
      for (double q0 : {0.3, 0.5, 0.9}) {
        auto lhs = eval(x * y, q0), rhs = eval(x, q0) * eval(y, q0);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("canonical form", "[scalars]") {
  rnd::Rng g(11);
  for (int t = 0; t < 100; ++t) {
    Scalar x = rnd::scalar(g) / (rnd::scalar(g) + Scalar::q());
    Scalar again(x.num(), x.den());
    CHECK(again.num() == x.num());
    CHECK(again.den() == x.den());
    CHECK((x - x).is_zero());
  }
  // common factors cancel
  Scalar q = Scalar::q();
  Scalar s = (Scalar(1) - q * q) / (Scalar(1) - q);
  CHECK(s == Scalar(1) + q);
  CHECK(s.is_polynomial());
}

TEST_CASE("conjugation fixes q", "[scalars]") {
  Scalar z = Scalar::q() * Scalar::i() + Scalar(2);
  CHECK(z.conj() == Scalar(2) - Scalar::q() * Scalar::i());
  CHECK(Scalar::q().conj() == Scalar::q());
}

TEST_CASE("q-trace", "[scalars]") {
  const HalfInt half = kHalf;
  auto id = Matrix<Scalar>::identity(2, Scalar(1));
  CHECK(q_trace(id, half) == qnum(2));
  CHECK(q_trace(Matrix<Scalar>(3, 3), HalfInt(1)).is_zero());
  CHECK_THROWS_AS(q_trace(id, HalfInt(1)), DimensionError);

  for (int tw = 0; tw <= 6; ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    auto d = static_cast<std::size_t>(l.dim());
    Matrix<Scalar> D(d, d);
    for (std::size_t k = 0; k < d; ++k) D(k, k) = Scalar::q_pow(weight(l, static_cast<int>(k)).twice());
    CHECK(q_trace(D, l) == Scalar(l.dim()));

    Scalar prod(1);
    for (const auto& w : q_weight(l)) prod = prod * w;
    CHECK(q_weight(l).size() == d);
    CHECK(prod == Scalar(1));
  }
}

TEST_CASE("rational parsing", "[scalars]") {
  CHECK(GaussRat::parse_rational("1/2") == GaussRat(mpq_class(1, 2)));
  CHECK(GaussRat::parse_rational("0.25") == GaussRat(mpq_class(1, 4)));
  CHECK(GaussRat::parse_rational("3") == GaussRat(3));
  CHECK_THROWS(GaussRat::parse_rational("x"));
}
