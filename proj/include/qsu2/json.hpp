#pragma once

// JSON encodings and the on-disk corepresentation cache.
//
// Scalar:  {"num": [[exp, "re", "im"], ...], "den": [[exp, "re", "im"], ...]}
// AlgElem: [{"mono": {"astar": b, "k": n, "c": n, "cs": n}, "coef": Scalar}, ...]
// Symbol:  {"kind": "scalar" | "algebra", "bound": "3/2",
//           "blocks": {"1": [[entry, ...], ...], ...}}
//          where an entry is a Scalar object or an expression string.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "qsu2/expr.hpp"
#include "qsu2/fourier.hpp"
#include "qsu2/psido.hpp"

namespace qsu2::io {

using json = nlohmann::json;

inline json to_json(const LaurentPoly& p) {
  json a = json::array();
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const GaussRat& c = p.coeffs()[k];
    if (c.is_zero()) continue;
    a.push_back({p.lo() + static_cast<int>(k), c.re().get_str(), c.im().get_str()});
  }
  return a;
}

inline LaurentPoly poly_from_json(const json& j) {
  LaurentPoly p;
  for (const auto& t : j) {
    mpq_class re(t.at(1).get<std::string>()), im(t.at(2).get<std::string>());
    re.canonicalize();
    im.canonicalize();
    p = p + LaurentPoly(GaussRat(re, im), t.at(0).get<int>());
  }
  return p;
}

inline json to_json(const Scalar& s) { return {{"num", to_json(s.num())}, {"den", to_json(s.den())}}; }

inline Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) {
    AlgElem e = expr::parse(j.get<std::string>());
    if (e.is_zero()) return Scalar();
    if (e.terms().size() != 1 || e.terms().begin()->first.degree() != 0)
      throw ParseError("expected a scalar expression, got " + e.str(), 0);
    return e.terms().begin()->second;
  }
  LaurentPoly den = j.contains("den") ? poly_from_json(j.at("den")) : LaurentPoly(GaussRat(1));
  return Scalar(poly_from_json(j.at("num")), den);
}

inline json to_json(const AlgElem& f) {
  json a = json::array();
  for (const auto& [mo, c] : f.terms())
    a.push_back({{"mono", {{"astar", mo.astar}, {"k", mo.k}, {"c", mo.n}, {"cs", mo.m}}}, {"coef", to_json(c)}});
  return a;
}

inline AlgElem alg_from_json(const json& j) {
  if (j.is_string()) return expr::parse(j.get<std::string>());
  if (j.is_object() && j.contains("num")) return AlgElem(scalar_from_json(j));
  AlgElem f;
  for (const auto& t : j) {
    const auto& m = t.at("mono");
    f += AlgElem::mono(Monomial::make(m.at("astar").get<bool>(), m.at("k").get<int>(), m.at("c").get<int>(), m.at("cs").get<int>()),
                       scalar_from_json(t.at("coef")));
  }
  return f;
}

inline json to_json(const std::complex<double>& z) { return {z.real(), z.imag()}; }

template <class T, class F>
json matrix_json(const Matrix<T>& m, F&& enc) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(enc(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

template <class T, class F>
Matrix<T> matrix_from_json(const json& j, F&& dec) {
  const std::size_t R = j.size(), C = R ? j.at(0).size() : 0;
  Matrix<T> m(R, C);
  for (std::size_t r = 0; r < R; ++r) {
    if (j.at(r).size() != C) throw DimensionError("ragged matrix in JSON");
    for (std::size_t c = 0; c < C; ++c) m(r, c) = dec(j.at(r).at(c));
  }
  return m;
}

/// Reduced blocks exactly, plus true coefficients at q0 when given.
inline json to_json(const FourierCoeffs& F, std::optional<double> q0 = std::nullopt) {
  json blocks = json::object();
  for (const auto& [l, b] : F.blocks) {
    json e = {{"reduced", matrix_json(b, [](const Scalar& s) { return to_json(s); })}};
    if (q0) {
      Matrix<std::complex<double>> num(b.rows(), b.cols());
      for (std::size_t m = 0; m < b.rows(); ++m)
        for (std::size_t n = 0; n < b.cols(); ++n) num(m, n) = F.numeric(l, static_cast<int>(m), static_cast<int>(n), *q0);
      e["numeric"] = matrix_json(num, [](const std::complex<double>& z) { return to_json(z); });
    }
    blocks[l.str()] = e;
  }
  return {{"max_level", F.max_level.str()}, {"blocks", blocks}};
}

inline FourierCoeffs fourier_from_json(const json& j) {
  FourierCoeffs F;
  F.max_level = HalfInt::parse(j.at("max_level").get<std::string>());
  for (const auto& [key, e] : j.at("blocks").items()) {
    HalfInt l = HalfInt::parse(key);
    auto b = matrix_from_json<Scalar>(e.at("reduced"), scalar_from_json);
    if (b.rows() != static_cast<std::size_t>(l.dim()) || b.cols() != b.rows())
      throw DimensionError("Fourier block " + key + " has the wrong size");
    F.blocks.emplace(l, std::move(b));
  }
  return F;
}

/// Explicit blocks through level L.
inline json to_json(const Symbol& s, HalfInt L) {
  json blocks = json::object();
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    if (s.is_scalar())
      blocks[l.str()] = matrix_json(s.scalar_block(l), [](const Scalar& x) { return to_json(x); });
    else
      blocks[l.str()] = matrix_json(s.raw_algebra_block(l), [](const AlgElem& x) { return to_json(x); });
  }
  json out = {{"kind", s.is_scalar() ? "scalar" : "algebra"}, {"blocks", blocks}};
  out["bound"] = (s.support_bound() ? std::min(*s.support_bound(), L) : L).str();
  return out;
}

/// A symbol file. Without "bound", blocks missing below the largest given
/// level are an error when requested.
inline Symbol symbol_from_json(const json& j) {
  std::string kind = j.value("kind", "scalar");
  std::optional<HalfInt> bound;
  if (j.contains("bound")) bound = HalfInt::parse(j.at("bound").get<std::string>());
  if (kind == "scalar") {
    std::map<HalfInt, Matrix<Scalar>> blocks;
    for (const auto& [key, b] : j.at("blocks").items())
      blocks.emplace(HalfInt::parse(key), matrix_from_json<Scalar>(b, scalar_from_json));
    return Symbol::scalar(std::move(blocks), bound);
  }
  if (kind == "algebra") {
    std::map<HalfInt, Matrix<AlgElem>> blocks;
    for (const auto& [key, b] : j.at("blocks").items())
      blocks.emplace(HalfInt::parse(key), matrix_from_json<AlgElem>(b, alg_from_json));
    return Symbol::algebra(std::move(blocks), bound);
  }
  throw ParseError("unknown symbol kind '" + kind + "'", 0);
}

// ---------------------------------------------------------------------------
// Corepresentation cache

inline json to_json(const CorepMatrix& M) {
  json rho = json::array();
  for (const auto& r : M.rho) rho.push_back(to_json(r));
  return {{"l", M.l.str()},
          {"raw", matrix_json(M.raw, [](const AlgElem& x) { return to_json(x); })},
          {"gram", matrix_json(M.gram, [](const Scalar& x) { return to_json(x); })},
          {"rho", rho},
          {"pattern", M.pattern}};
}

inline CorepMatrix corep_from_json(const json& j) {
  CorepMatrix M;
  M.l = HalfInt::parse(j.at("l").get<std::string>());
  M.raw = matrix_from_json<AlgElem>(j.at("raw"), alg_from_json);
  M.raw_star = M.raw.map([](const AlgElem& x) { return star(x); });
  M.gram = matrix_from_json<Scalar>(j.at("gram"), scalar_from_json);
  for (const auto& r : j.at("rho")) M.rho.push_back(scalar_from_json(r));
  M.pattern = j.at("pattern").get<int>();
  const auto d = static_cast<std::size_t>(M.l.dim());
  if (M.raw.rows() != d || M.raw.cols() != d || M.gram.rows() != d || M.rho.size() != d)
    throw DimensionError("cached corepresentation at level " + M.l.str() + " has the wrong size");
  return M;
}

/// Cheap validation of a loaded level: counit and unitarity at q = 1/2.
inline bool corep_plausible(const CorepMatrix& M) {
  for (int i = 0; i < M.dim(); ++i)
    for (int j = 0; j < M.dim(); ++j)
      if (!(counit(M(i, j)) == Scalar(i == j ? 1 : 0))) return false;
  return unitarity_residual(M, 0.5) < 1e-10;
}

inline std::optional<std::filesystem::path> cache_dir() {
  const char* d = std::getenv("QSU2_CACHE_DIR");
  if (!d || !*d) return std::nullopt;
  return std::filesystem::path(d);
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, HalfInt l) {
  return dir / ("corep_" + std::to_string(l.twice()) + ".json");
}

/// Loads cached levels up to L that pass validation. Returns the number loaded.
inline int load_corep_cache(const std::filesystem::path& dir, HalfInt L) {
  int n = 0;
  for (int tw = 0; tw <= L.twice(); ++tw) {
    auto f = cache_file(dir, HalfInt::from_twice(tw));
    if (!std::filesystem::exists(f)) continue;
    try {
      std::ifstream in(f);
      auto M = corep_from_json(json::parse(in));
      if (M.l.twice() != tw || !corep_plausible(M)) continue;
      peter_weyl().install(std::move(M));
      ++n;
    } catch (const std::exception&) {
      // A corrupt entry is rebuilt on demand.
    }
  }
  return n;
}

inline void save_corep_cache(const std::filesystem::path& dir, HalfInt L) {
  std::filesystem::create_directories(dir);
  for (int tw = 0; tw <= L.twice(); ++tw) {
    HalfInt l = HalfInt::from_twice(tw);
    std::ofstream out(cache_file(dir, l));
    out << to_json(corep(l)).dump() << "\n";
  }
}

}  // namespace qsu2::io
