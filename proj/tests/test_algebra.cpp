#include <catch_amalgamated.hpp>

#include "qsu2/random.hpp"

using namespace qsu2;

namespace {

const AlgElem A = gen::a(), As = gen::a_star(), C = gen::c(), Cs = gen::c_star();
const Scalar q = Scalar::q();

AlgElem id(const AlgElem& x) { return x; }

}  // namespace

TEST_CASE("multiplication rewrites to normal form", "[algebra]") {
  CHECK(C * A == (A * C).scaled(q.inverse()));
  CHECK(A * As == AlgElem(1) - (Cs * C).scaled(q * q));
  CHECK(As * A == AlgElem(1) - Cs * C);
  CHECK(Cs * C == C * Cs);
  CHECK(Cs * As == (As * Cs).scaled(q));
  CHECK(AlgElem(1) * (A + C) == A + C);
  // ac = q ca as stated
  CHECK(A * C - (C * A).scaled(q) == AlgElem());
  CHECK(A * Cs == (Cs * A).scaled(q));

  SECTION("associativity on random triples") {
    rnd::Rng g(1);
    for (int t = 0; t < 200; ++t) {
      AlgElem x = rnd::element(g, 4, 2), y = rnd::element(g, 4, 2), z = rnd::element(g, 4, 2);
      REQUIRE((x * y) * z == x * (y * z));
    }
  }
}

TEST_CASE("involution", "[algebra]") {
  CHECK(star(A) == As);
  CHECK(star(C) == Cs);
  CHECK(star(A * C) == (As * Cs).scaled(q));
  CHECK(star(AlgElem(Scalar::i())) == AlgElem(-Scalar::i()));
  rnd::Rng g(2);
  for (int t = 0; t < 100; ++t) {
    AlgElem f = rnd::element(g, 4), h = rnd::element(g, 4);
    CHECK(star(star(f)) == f);
    CHECK(star(f * h) == star(h) * star(f));
  }
}

TEST_CASE("counit", "[algebra]") {
  CHECK(counit(power(A, 3)) == Scalar(1));
  CHECK(counit(C).is_zero());
  CHECK(counit(A * As) == Scalar(1));
  CHECK(counit(AlgElem(1) - (Cs * C).scaled(q * q)) == Scalar(1));
}

TEST_CASE("antipode", "[algebra]") {
  CHECK(antipode(A) == As);
  CHECK(antipode(As) == A);
  // S(u) = u* on the fundamental matrix forces these values
  CHECK(antipode(C) == C.scaled(-q));
  CHECK(antipode(Cs) == Cs.scaled(-q.inverse()));
  CHECK(antipode_as_printed(C) == Cs.scaled(-q));
  rnd::Rng g(3);
  for (int t = 0; t < 30; ++t) {
    AlgElem f = rnd::element(g, 3);
    CHECK(antipode_inverse(antipode(f)) == f);
  }

  SECTION("printed variant breaks the antipode axiom") {
    // The convolution identity picks out which assignment of S(c), S(c*) is consistent.
    auto S_printed = [](const AlgElem& x) { return antipode_as_printed(x); };
    TensorElem D = coproduct(A);
    CHECK_FALSE(D.contract(S_printed, id) == AlgElem(counit(A)));
    auto S = [](const AlgElem& x) { return antipode(x); };
    CHECK(D.contract(S, id) == AlgElem(counit(A)));
  }
}

TEST_CASE("coproduct", "[algebra]") {
  CHECK(coproduct(AlgElem(1)) == TensorElem::one());
  CHECK(coproduct(A) == TensorElem::pure(A, A) - TensorElem::pure(Cs.scaled(q), C));
  CHECK(coproduct(C) == TensorElem::pure(C, A) + TensorElem::pure(As, C));

  SECTION("Hopf axioms") {
    auto S = [](const AlgElem& x) { return antipode(x); };
    rnd::Rng g(4);
    std::vector<AlgElem> fs{A, As, C, Cs};
    for (int t = 0; t < 20; ++t) fs.push_back(rnd::element(g, 3));
    for (const auto& f : fs) {
      TensorElem D = coproduct(f);
      CHECK(counit_tensor_id(D) == f);
      CHECK(id_tensor_counit(D) == f);
      CHECK(D.contract(S, id) == AlgElem(counit(f)));
      CHECK(D.contract(id, S) == AlgElem(counit(f)));
    }
  }
  SECTION("multiplicative and star-compatible") {
    rnd::Rng g(5);
    for (int t = 0; t < 20; ++t) {
      AlgElem f = rnd::element(g, 2), h = rnd::element(g, 2);
      CHECK(coproduct(f * h) == coproduct(f) * coproduct(h));
    }
  }
}

TEST_CASE("Haar state", "[algebra]") {
  CHECK(haar(AlgElem(1)) == Scalar(1));
  CHECK(haar(C * Cs) == Scalar(1) / (Scalar(1) + q * q));
  CHECK(haar(C * Cs) == (Scalar(1) - q * q) / (Scalar(1) - q.pow(4)));
  CHECK(haar(A * As) == Scalar(1) / (Scalar(1) + q * q));
  CHECK(haar(As * A) == q * q / (Scalar(1) + q * q));
  CHECK(haar(A).is_zero());
  CHECK(haar(C).is_zero());

  SECTION("table formula for (c c*)^n") {
    for (int n = 0; n <= 6; ++n)
      CHECK(haar(power(C * Cs, n)) == (Scalar(1) - q * q) / (Scalar(1) - q.pow(2 * n + 2)));
  }
  SECTION("two-sided invariance on monomials of degree <= 6") {
    for (const auto& mo : rnd::all_monomials(6)) {
      TensorElem D = coproduct(AlgElem::mono(mo));
      AlgElem h1(haar(AlgElem::mono(mo)));
      REQUIRE(id_tensor_haar(D) == h1);
      REQUIRE(haar_tensor_id(D) == h1);
    }
  }
  SECTION("not a trace, but twisted by the modular automorphism") {
    CHECK_FALSE(haar(A * As) == haar(As * A));
    rnd::Rng g(6);
    for (int t = 0; t < 50; ++t) {
      AlgElem x = rnd::element(g, 3), y = rnd::element(g, 3);
      CHECK(haar(x * y) == haar(y * modular(x)));
    }
  }
}

TEST_CASE("inner product", "[algebra]") {
  CHECK(inner(AlgElem(1), AlgElem(1)) == Scalar(1));
  CHECK(inner(A, A) == Scalar(1) / (Scalar(1) + q * q));
  CHECK(inner(A, C).is_zero());
  CHECK(inner(A, A) == haar(A * As));

  SECTION("positivity for real coefficients") {
    rnd::Rng g(8);
    for (int t = 0; t < 50; ++t) {
      AlgElem f;
      for (int k = 0; k < 3; ++k) f += AlgElem::mono(rnd::monomial(g, 3), Scalar(rnd::gauss_rat(g, false)));
      for (double q0 : {0.3, 0.5, 0.9}) CHECK(eval(norm2(f), q0).real() >= -1e-12);
    }
  }
}

TEST_CASE("regular representation", "[algebra]") {
  const Scalar i = Scalar::i();
  CHECK(regular_rep(Scalar(1), A * C + Cs) == A * C + Cs);
  CHECK(regular_rep(i, C * Cs) == C * Cs);
  CHECK(regular_rep(i, A * C) == (A * C).scaled(i));
  CHECK(regular_rep(i, Cs) == Cs.scaled(-i));
  rnd::Rng g(9);
  const std::vector<Scalar> roots{Scalar(1), i, Scalar(-1), -i};
  for (int t = 0; t < 20; ++t) {
    AlgElem f = rnd::element(g, 4);
    const Scalar& u = roots[static_cast<std::size_t>(rnd::uniform(g, 0, 3))];
    const Scalar& v = roots[static_cast<std::size_t>(rnd::uniform(g, 0, 3))];
    CHECK(regular_rep(v, regular_rep(u, f)) == regular_rep(u * v, f));
    CHECK(regular_rep(u, f * f) == regular_rep(u, f) * regular_rep(u, f));
  }
}
