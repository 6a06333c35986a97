#include <catch_amalgamated.hpp>

#include "qsu2/composition.hpp"
#include "qsu2/random.hpp"

using namespace qsu2;

namespace {

constexpr double q0 = 0.5;

}  // namespace

TEST_CASE("order zero collapses to blockwise products", "[composition]") {
  const HalfInt L(1);
  rnd::Rng g(51);
  Symbol sigma = rnd::diagonal_symbol(g, L);
  Symbol beta = rnd::scalar_symbol(g, L);
  auto oracle = numeric_symbol_of(compose(scalar_num_op(beta, q0), algebra_num_op(sigma, q0)), L, q0);
  auto formula = principal_symbol_compose(sigma, HalfInt(0), beta, L, q0);
  auto cmp = compare_top(oracle, formula, HalfInt(0));
  CHECK(cmp.top_residual < 1e-10);
  CHECK(cmp.off_level < 1e-10);
}

TEST_CASE("multiplication by a", "[composition]") {
  const HalfInt L(1);
  Symbol Ma = Symbol::multiplication(gen::a());

  SECTION("with the neutral symbol") {
    auto formula = principal_symbol_compose(Ma, kHalf, Symbol::neutral(), L, q0);
    auto direct = numeric_symbol_of(algebra_num_op(Ma, q0), L, q0);
    CHECK(compare_top(direct, formula, kHalf).top_residual < 1e-12);
  }
  SECTION("M_a after M_c is multiplication by ac, of order one") {
    Symbol Mc = Symbol::multiplication(gen::c());
    AlgOp op = [Ma, Mc](const AlgElem& f) { return apply(Ma, apply(Mc, f)); };
    Symbol s = symbol_of_alg(op, L);
    for (int tw = 0; tw <= L.twice(); ++tw) {
      HalfInt l = HalfInt::from_twice(tw);
      auto d = static_cast<std::size_t>(l.dim());
      CHECK(s.raw_algebra_block(l) == Matrix<AlgElem>::identity(d, gen::a() * gen::c()));
    }
    auto fo = fourier_order(s, L);
    CHECK(fo.homogeneous);
    CHECK(fo.order == HalfInt(1));
  }
  SECTION("algebra-valued beta is outside the formula") {
    CHECK_THROWS_AS(principal_symbol_compose(Ma, kHalf, Symbol::multiplication(gen::c()), L, q0), KindError);
  }
}

TEST_CASE("random scalar beta", "[composition]") {
  const HalfInt L(1);
  rnd::Rng g(52);
  Symbol Ma = Symbol::multiplication(gen::a());
  double worst_top_only = 0;
  for (int t = 0; t < 3; ++t) {
    Symbol beta = rnd::scalar_symbol(g, L + kHalf);
    // T_beta applied after M_a: the full-band formula
    auto rev = numeric_symbol_of(compose(scalar_num_op(beta, q0), algebra_num_op(Ma, q0)), L, q0);
    auto c = compare_top(rev, principal_symbol_compose(Ma, kHalf, beta, L, q0), kHalf);
    CHECK(c.top_residual < 1e-8);
    CHECK(c.off_level < 1e-8);
    // M_a applied after T_beta: sigma times beta in the raw gauge
    auto lit = numeric_symbol_of(compose(algebra_num_op(Ma, q0), scalar_num_op(beta, q0)), L, q0);
    CHECK(compare_top(lit, outer_symbol_compose(Ma, beta, L, q0), kHalf).top_residual < 1e-8);
    auto top = compare_top(rev, principal_symbol_compose(Ma, kHalf, beta, L, q0, PrincipalVariant::top_only), kHalf);
    worst_top_only = std::max(worst_top_only, top.top_residual);
  }
  // keeping only p = l + m misses real contributions
  CHECK(worst_top_only > 1e-3);
}
