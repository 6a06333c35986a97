#include <catch_amalgamated.hpp>

#include <unistd.h>

#include "qsu2/json.hpp"
#include "qsu2/random.hpp"

using namespace qsu2;
using expr::Node;
using expr::NodePtr;

namespace {

NodePtr random_ast(rnd::Rng& g, int depth) {
  int pick = static_cast<int>(rnd::uniform(g, 0, depth > 0 ? 6 : 2));
  switch (pick) {
    case 0: {
      static const char* names[] = {"a", "c", "a'", "c'"};
      return Node::generator(names[rnd::uniform(g, 0, 3)]);
    }
    case 1: {
      mpq_class v(rnd::uniform(g, 0, 9), rnd::uniform(g, 1, 4));
      v.canonicalize();
      return Node::rational(v);
    }
    case 2:
      return Node::q();
    case 3:
      return Node::star(random_ast(g, depth - 1));
    case 4:
      return Node::power(random_ast(g, depth - 1), static_cast<unsigned>(rnd::uniform(g, 0, 3)));
    case 5: {
      std::vector<NodePtr> cs;
      for (long k = rnd::uniform(g, 2, 3); k > 0; --k) cs.push_back(random_ast(g, depth - 1));
      return Node::product(std::move(cs));
    }
    default: {
      std::vector<NodePtr> cs;
      std::vector<bool> neg;
      long n = rnd::uniform(g, 1, 3);
      for (long k = 0; k < n; ++k) {
        cs.push_back(random_ast(g, depth - 1));
        neg.push_back(rnd::uniform(g, 0, 1) == 1);
      }
      if (n == 1) neg[0] = true;  // a bare single-term sum is just its term
      return Node::sum(std::move(cs), std::move(neg));
    }
  }
}

}  // namespace

TEST_CASE("parsing", "[expr]") {
  CHECK(expr::parse("a*c - q*c*a").is_zero());
  CHECK(expr::parse("a*a' + q^2*c'*c") == AlgElem(1));
  CHECK(expr::parse("star(a)") == gen::a_star());
  CHECK(expr::parse("a c") == gen::a() * gen::c());
  CHECK(expr::parse("-a + 1/2") == AlgElem(Scalar::rational(1, 2)) - gen::a());
  CHECK(expr::parse("  ( a + c ) ^ 2 ") == power(gen::a() + gen::c(), 2));
  CHECK(expr::parse("star(q*c + 2)") == gen::c_star().scaled(Scalar::q()) + AlgElem(2));
  CHECK(expr::parse("a^0") == AlgElem(1));

  SECTION("errors carry a position") {
    auto fails_at = [](const std::string& src, std::size_t pos) {
      try {
        expr::parse(src);
      } catch (const ParseError& e) {
        CHECK(e.position == pos);
        return;
      }
      FAIL("no ParseError for '" << src << "'");
    };
    fails_at("a +", 3);
    fails_at("a + b", 4);
    fails_at("(a", 2);
    fails_at("a^", 2);
    fails_at("1/0", 2);
    fails_at("a^65", 2);
    CHECK_NOTHROW(expr::parse("c^64"));
  }
}

TEST_CASE("print and parse round trip", "[expr]") {
  rnd::Rng g(81);
  for (int t = 0; t < 200; ++t) {
    NodePtr n = random_ast(g, 3);
    std::string text = expr::print(n);
    INFO(text);
    NodePtr back = expr::parse_ast(text);
    REQUIRE(expr::equal(back, n));
    CHECK(expr::evaluate(back) == expr::evaluate(n));
  }
}

TEST_CASE("JSON encodings", "[json]") {
  rnd::Rng g(82);
  SECTION("scalars and elements") {
    for (int t = 0; t < 50; ++t) {
      Scalar s = rnd::scalar(g) / (rnd::scalar(g) + Scalar::q());
      CHECK(io::scalar_from_json(io::to_json(s)) == s);
      AlgElem f = rnd::element(g, 4, 3);
      CHECK(io::alg_from_json(io::to_json(f)) == f);
    }
    CHECK(io::scalar_from_json(3) == Scalar(3));
    CHECK(io::scalar_from_json("q^2 + 1/2") == Scalar::q().pow(2) + Scalar::rational(1, 2));
    CHECK_THROWS_AS(io::scalar_from_json("a + 1"), ParseError);
    CHECK(io::alg_from_json("a*c") == gen::a() * gen::c());
  }
  SECTION("Fourier coefficients") {
    AlgElem f = rnd::element(g, 3, 3);
    auto F = transform(f);
    auto back = io::fourier_from_json(io::to_json(F, 0.5));
    CHECK(inverse(back) == f);
    auto j = io::to_json(F);
    j["blocks"]["1/2"]["reduced"] = io::json::array({io::json::array({0})});
    CHECK_THROWS_AS(io::fourier_from_json(j), DimensionError);
  }
  SECTION("symbols") {
    Symbol s = rnd::scalar_symbol(g, HalfInt(1));
    Symbol back = io::symbol_from_json(io::to_json(s, HalfInt(1)));
    REQUIRE(back.is_scalar());
    CHECK(back.support_bound() == HalfInt(1));
    for (int tw = 0; tw <= 2; ++tw)
      CHECK(back.scalar_block(HalfInt::from_twice(tw)) == s.scalar_block(HalfInt::from_twice(tw)));

    Symbol Ma = Symbol::multiplication(gen::a());
    Symbol mb = io::symbol_from_json(io::to_json(Ma, kHalf));
    CHECK_FALSE(mb.is_scalar());
    CHECK(mb.raw_algebra_block(kHalf) == Ma.raw_algebra_block(kHalf));

    auto text = io::json::parse(R"({"kind":"algebra","bound":"1/2","blocks":{"0":[["a"]],"1/2":[["a","0"],["0","c"]]}})");
    Symbol t = io::symbol_from_json(text);
    CHECK(t.raw_algebra_block(kHalf)(1, 1) == gen::c());
    CHECK_THROWS_AS(io::symbol_from_json(io::json::parse(R"({"kind":"other","blocks":{}})")), ParseError);
    CHECK_THROWS_AS(io::symbol_from_json(io::json::parse(R"({"blocks":{"1/2":[["1","0"],["0"]]}})")), DimensionError);
  }
}

TEST_CASE("corepresentation cache", "[json]") {
  auto dir = std::filesystem::temp_directory_path() / ("qsu2_cache_test_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  io::save_corep_cache(dir, HalfInt(1));
  for (int tw = 0; tw <= 2; ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    std::ifstream in(io::cache_file(dir, l));
    auto M = io::corep_from_json(io::json::parse(in));
    const auto& ref = corep(l);
    CHECK(M.raw == ref.raw);
    CHECK(M.gram == ref.gram);
    CHECK(M.rho == ref.rho);
    CHECK(M.pattern == ref.pattern);
    CHECK(io::corep_plausible(M));
  }
  // a tampered entry is rejected by validation
  {
    std::ifstream in(io::cache_file(dir, kHalf));
    auto j = io::json::parse(in);
    j["raw"][0][0] = "c";
    auto M = io::corep_from_json(j);
    CHECK_FALSE(io::corep_plausible(M));
  }
  CHECK(io::load_corep_cache(dir, HalfInt(1)) == 3);
  std::filesystem::remove_all(dir);
}
