#include <catch_amalgamated.hpp>

#include "qsu2/circle.hpp"
#include "qsu2/random.hpp"

using namespace qsu2;
using namespace qsu2::circle;
using Catch::Approx;

namespace {

const cplx nu{0.6, 0.8};

}  // namespace

TEST_CASE("periodic symbols", "[circle]") {
  const double q0 = 0.5;
  auto c = symbol_c(nu, q0);
  CHECK(std::abs(c(-1).amplitude - q0 * q0 * nu) < 1e-15);
  CHECK(std::abs(c(1).amplitude - q0 * nu) < 1e-15);
  CHECK(c(0).shift == 0);
  auto a = symbol_a(nu, q0);
  CHECK(a(0).amplitude == cplx(0));
  CHECK_THROWS_AS(symbol_c({2, 0}, q0), Error);
  CHECK_THROWS_AS(symbol_a(nu, 1.5), Error);

  for (int idx = 0; idx < 40; ++idx) CHECK(index_of(freq_of(idx)) == idx);
}

TEST_CASE("action on the basis e_n", "[circle]") {
  const double q0 = 0.5;
  const int K = 16;
  auto c = symbol_c(nu, q0);
  auto a = symbol_a(nu, q0);
  for (int n = 0; n < 8; ++n) {
    // e_{2n} is the frequency -n mode
    auto rc = apply_periodic(c, {{-n, 1.0}}, K);
    REQUIRE(rc.coeffs.size() == 1);
    CHECK(std::abs(rc.coeffs.at(-n) - std::pow(q0, 2 * n) * nu) < 1e-15);
    auto ra = apply_periodic(a, {{-n, 1.0}}, K);
    if (n == 0) {
      CHECK(ra.coeffs.empty());
    } else {
      REQUIRE(ra.coeffs.size() == 1);
      CHECK(index_of(ra.coeffs.begin()->first) == 2 * n - 1);
      CHECK(ra.coeffs.begin()->second.real() == Approx(std::sqrt(1 - std::pow(q0, 4 * n))));
    }
  }
  CHECK(apply_periodic(a, {{-K, 1.0}}, K).boundary_loss == false);
  CHECK_THROWS_AS(apply_periodic(c, {{K + 1, 1.0}}, K), DimensionError);

  SECTION("T_c is diagonal with the eigenvalue table") {
    auto T = truncate(c, K);
    for (int i = 0; i <= 2 * K; ++i)
      for (int j = 0; j <= 2 * K; ++j) {
        cplx want = i == j ? std::pow(q0, i) * nu : cplx(0);
        CHECK(std::abs(T.matrix(i, j) - want) < 1e-15);
      }
  }
}

TEST_CASE("Woronowicz representation", "[circle]") {
  for (double q0 : {0.3, 0.5, 0.9}) {
    for (const auto& l : woronowicz_residuals(q0, nu, 32)) {
      INFO(l.relation << " q0=" << q0);
      CHECK(l.max_residual < 1e-12);
      CHECK(l.interior_range.second == 62);
    }
    auto rel = relation_residuals(q0, nu, 32);
    CHECK(rel.size() == 7);
    for (const auto& l : rel) {
      INFO(l.relation << " q0=" << q0);
      CHECK(l.max_residual < 1e-10);
    }
  }
  CHECK_THROWS_AS(woronowicz_residuals(0.5, nu, 4), DimensionError);

  SECTION("the printed phase of sigma_a is not the action of a") {
    double worst = 0;
    for (const auto& l : woronowicz_residuals(0.5, nu, 32, PhaseVariant::printed))
      if (l.relation == "pi(a)") worst = l.max_residual;
    CHECK(worst > 1.0);
  }
}

TEST_CASE("products of X_z", "[circle]") {
  for (auto [z, zp] : std::vector<std::pair<cplx, cplx>>{{{0, 1}, {-1, 0}}, {{1, 0}, {1, 0}}, {{0.6, 0.8}, {0, -1}}}) {
    auto r = su_matrix_product(z, zp, 0.5, 32);
    CHECK(r.residual[0] < 1e-12);
    CHECK(r.residual[2] < 1e-12);
    CHECK(r.residual[3] < 1e-12);
    // the (1,2) block is -q^2 X21*, not -X21*
    CHECK(r.residual[1] > 1e-3);
    CHECK(x12_scaled_residual(z, zp, 0.5, 32) < 1e-12);
  }
}

TEST_CASE("polynomial annihilation demo", "[circle]") {
  // P(x) = 2x^2 - x vanishes at q0 = 1/2
  CHECK(transcendence_demo({0, -1, 2}, 0.5, {1, 0}) < 1e-14);
  CHECK(transcendence_demo({1, -1, 2}, 0.5, {1, 0}) > 0.1);
}

TEST_CASE("regular representation and symbols", "[circle]") {
  const HalfInt L(1);
  const Scalar i = Scalar::i();
  rnd::Rng g(71);

  SECTION("group law on basis coordinates") {
    const std::vector<Scalar> roots{Scalar(1), i, Scalar(-1), -i};
    for (int t = 0; t < 20; ++t) {
      PwVector f = rnd::pw_vector(g, L);
      const Scalar& u = roots[static_cast<std::size_t>(rnd::uniform(g, 0, 3))];
      const Scalar& v = roots[static_cast<std::size_t>(rnd::uniform(g, 0, 3))];
      CHECK(regular_rep(v, regular_rep(u, f)) == regular_rep(u * v, f));
      CHECK(inner(regular_rep(v, f), f) == inner(f, regular_rep(v, f)).conj());
      CHECK(inner(regular_rep(v, f), regular_rep(v, f)) == inner(f, f));
    }
    CHECK(regular_rep(Scalar(1), PwVector::basis(HalfInt(1), 0, 2)) == PwVector::basis(HalfInt(1), 0, 2));
  }
  SECTION("symmetry on basis elements needs a real eigenvalue") {
    for (const auto& b : peter_weyl_basis(L)) {
      int bi = slot(b.l, b.i), bj = slot(b.l, b.j);
      auto t = PwVector::basis(b.l, bi, bj);
      Scalar lambda = regular_eigenvalue(i, b.l, bi, bj);
      bool symmetric = inner(regular_rep(i, t), t) == inner(t, regular_rep(i, t));
      CHECK(symmetric == (lambda == lambda.conj()));
    }
  }
  SECTION("diagonal symbols commute with phi_v") {
    Symbol d = rnd::diagonal_symbol(g, L);
    for (const Scalar& v : {i, Scalar(-1), -i}) CHECK(regular_invariance(d, v, L).commutes);
  }
  SECTION("general scalar symbols commute only where v^(b-c) = 1") {
    Symbol s = rnd::scalar_symbol(g, L);
    CHECK(regular_invariance(s, Scalar(1), L).commutes);
    for (const Scalar& v : {i, Scalar(-1), -i}) {
      auto r = regular_invariance(s, v, L);
      CHECK_FALSE(r.commutes);
      CHECK(r.prediction_matches);
    }
  }
}
