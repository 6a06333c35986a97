// qsu2: batch front end. Every command prints line-delimited JSON.
//
// Exit codes: 0 ok, 1 assertion failed, 2 bad input, 3 pole or backend error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qsu2/json.hpp"
#include "qsu2/selfcheck.hpp"

using namespace qsu2;
using json = nlohmann::json;

namespace {

struct RunConfig {
  std::string q = "1/2";
  std::string backend = "exact";
  std::string level = "2";
  int cutoff = 32;
  std::uint64_t seed = 20240611;
  std::string out;
};

struct AssertionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot open output file " + path, 0);
    }
  }
  void emit(const json& j) { (file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout) << j.dump() << "\n"; }

 private:
  std::ofstream file_;
};

GaussRat exact_q(const RunConfig& c) { return GaussRat::parse_rational(c.q); }

double numeric_q(const RunConfig& c) {
  double q0 = exact_q(c).re().get_d();
  if (!(q0 > 0 && q0 < 1)) throw ParseError("q must lie in (0, 1), got " + c.q, 0);
  return q0;
}

HalfInt level(const std::string& s) { return HalfInt::parse(s); }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// EXPR or a file holding one.
AlgElem element_arg(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    std::string text = read_text(arg);
    if (!text.empty() && (text[0] == '[' || text[0] == '{')) return io::alg_from_json(json::parse(text));
    return expr::parse(text);
  }
  return expr::parse(arg);
}

Symbol symbol_arg(const std::string& path) { return io::symbol_from_json(json::parse(read_text(path))); }

std::complex<double> complex_arg(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return {std::stod(s), 0};
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

json numeric_json(const Scalar& s, const RunConfig& c) {
  json j = {{"exact", s.str()}};
  if (c.backend == "exact") j["exact_at_q"] = eval_exact(s, exact_q(c)).str();
  j["numeric"] = io::to_json(eval(s, numeric_q(c)));
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis and pseudo-differential operators on SU_q(2)"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--q", cfg.q, "deformation parameter, p/r or decimal")->capture_default_str();
  app.add_option("--backend", cfg.backend, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}))->capture_default_str();
  app.add_option("--level", cfg.level, "maximal level L")->capture_default_str();
  app.add_option("--cutoff", cfg.cutoff, "circle frequency cutoff K")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--out", cfg.out, "write output to a file");

  std::function<int(Output&)> run;

  // basis
  auto* basis = app.add_subcommand("basis", "corepresentation entries and Gram data");
  std::string basis_level = "1";
  basis->add_option("--level", basis_level, "level l")->capture_default_str();
  basis->callback([&] {
    run = [&](Output& out) {
      HalfInt top = level(basis_level);
      for (int tw = 0; tw <= top.twice(); ++tw) {
        const auto& M = corep(HalfInt::from_twice(tw));
        json entries = io::matrix_json(M.raw, [](const AlgElem& x) { return x.str(); });
        json gram = io::matrix_json(M.gram, [](const Scalar& x) { return x.str(); });
        json rho = json::array();
        for (const auto& r : M.rho) rho.push_back(r.str());
        out.emit({{"l", M.l.str()}, {"raw", entries}, {"gram", gram}, {"rho", rho}, {"schur_pattern", M.pattern},
                  {"unitarity_residual", unitarity_residual(M, numeric_q(cfg))}});
      }
      return 0;
    };
  });

  // haar
  auto* haar_cmd = app.add_subcommand("haar", "Haar state of an expression");
  std::string haar_expr;
  haar_cmd->add_option("EXPR", haar_expr)->required();
  haar_cmd->callback([&] {
    run = [&](Output& out) {
      AlgElem f = element_arg(haar_expr);
      json j = {{"expr", haar_expr}, {"element", f.str()}};
      j.update(numeric_json(haar(f), cfg));
      out.emit(j);
      return 0;
    };
  });

  // fourier
  auto* fourier = app.add_subcommand("fourier", "q-Fourier transform");
  std::string fourier_arg;
  bool fourier_inverse = false, fourier_roundtrip = false;
  fourier->add_option("EXPR_OR_FILE", fourier_arg)->required();
  fourier->add_flag("--inverse", fourier_inverse, "input is a coefficient file; print the element");
  fourier->add_flag("--roundtrip", fourier_roundtrip, "check inverse(transform(f)) = f");
  fourier->callback([&] {
    run = [&](Output& out) {
      if (fourier_inverse) {
        AlgElem f = inverse(io::fourier_from_json(json::parse(read_text(fourier_arg))));
        out.emit({{"element", f.str()}, {"json", io::to_json(f)}});
        return 0;
      }
      AlgElem f = element_arg(fourier_arg);
      FourierCoeffs F = transform(f);
      if (fourier_roundtrip) {
        bool ok = inverse(F) == f;
        out.emit({{"expr", fourier_arg}, {"roundtrip", ok}});
        return ok ? 0 : 1;
      }
      out.emit(io::to_json(F, numeric_q(cfg)));
      return 0;
    };
  });

  // psido
  auto* psido = app.add_subcommand("psido", "pseudo-differential operators");
  psido->require_subcommand(1);
  std::string sym_a, sym_b, ps_expr, ps_multiply;
  auto* ps_apply = psido->add_subcommand("apply", "apply a symbol to an element");
  ps_apply->add_option("SYMBOL", sym_a)->required();
  ps_apply->add_option("EXPR", ps_expr)->required();
  ps_apply->callback([&] {
    run = [&](Output& out) {
      Symbol s = symbol_arg(sym_a);
      AlgElem f = element_arg(ps_expr);
      AlgElem g = apply(s, f);
      out.emit({{"element", g.str()}, {"json", io::to_json(g)}});
      return 0;
    };
  });
  auto* ps_compose = psido->add_subcommand("compose", "blockwise product sigma_A sigma_B");
  ps_compose->add_option("A", sym_a)->required();
  ps_compose->add_option("B", sym_b)->required();
  ps_compose->callback([&] {
    run = [&](Output& out) {
      out.emit(io::to_json(compose_scalar(symbol_arg(sym_a), symbol_arg(sym_b)), level(cfg.level)));
      return 0;
    };
  });
  auto* ps_adjoint = psido->add_subcommand("adjoint", "symbol of the adjoint operator");
  ps_adjoint->add_option("SYMBOL", sym_a)->required();
  ps_adjoint->callback([&] {
    run = [&](Output& out) {
      HalfInt L = level(cfg.level);
      out.emit(io::to_json(adjoint(symbol_arg(sym_a), L), L));
      return 0;
    };
  });
  auto* ps_symbol = psido->add_subcommand("symbol-of", "symbol of an operator, recovered from its action");
  ps_symbol->add_option("SYMBOL", sym_a, "symbol file whose operator is analysed");
  ps_symbol->add_option("--multiply", ps_multiply, "left multiplication by EXPR instead");
  ps_symbol->callback([&] {
    run = [&](Output& out) {
      HalfInt L = level(cfg.level);
      if (!ps_multiply.empty()) {
        out.emit(io::to_json(symbol_of_alg(as_op(Symbol::multiplication(element_arg(ps_multiply))), L), L));
        return 0;
      }
      if (sym_a.empty()) throw ParseError("symbol-of needs SYMBOL or --multiply", 0);
      Symbol s = symbol_arg(sym_a);
      out.emit(s.is_scalar() ? io::to_json(symbol_of(as_basis_op(s), L), L) : io::to_json(symbol_of_alg(as_op(s), L), L));
      return 0;
    };
  });
  auto* ps_order = psido->add_subcommand("order", "Fourier order of a symbol");
  ps_order->add_option("SYMBOL", sym_a)->required();
  ps_order->callback([&] {
    run = [&](Output& out) {
      auto fo = fourier_order(symbol_arg(sym_a), level(cfg.level));
      json levels = json::array();
      for (auto l : fo.levels) levels.push_back(l.str());
      out.emit({{"order", fo.order ? fo.order->str() : "0"}, {"homogeneous", fo.homogeneous},
                {"single_level", fo.single_level}, {"levels", levels}});
      return 0;
    };
  });

  // spectral
  auto* spectral = app.add_subcommand("spectral", "rank, compactness, eigenvalues, index");
  spectral->require_subcommand(1);
  std::string sp_N = "1", sp_m = "1", sp_L, sp_n = "1", sp_l = "1";
  int sp_trials = 50;
  auto* sp_rank = spectral->add_subcommand("rank", "exact rank of a finitely supported symbol");
  sp_rank->add_option("SYMBOL", sym_a)->required();
  sp_rank->add_option("--L", sp_L, "truncation level (default --level)");
  sp_rank->callback([&] {
    run = [&](Output& out) {
      auto r = rank_of(symbol_arg(sym_a), level(sp_L.empty() ? cfg.level : sp_L), exact_q(cfg));
      out.emit({{"rank", r.brute}, {"rank_next_level", r.brute_next}, {"blockwise", r.blockwise}, {"stable", r.stable()}});
      return r.brute == r.blockwise ? 0 : 1;
    };
  });
  auto* sp_comp = spectral->add_subcommand("compactness", "tail bound sup |sigma(l)|_op^2");
  sp_comp->add_option("SYMBOL", sym_a)->required();
  sp_comp->add_option("--n", sp_n)->capture_default_str();
  sp_comp->add_option("--L", sp_L, "top level (default --level)");
  sp_comp->add_option("--trials", sp_trials)->capture_default_str();
  sp_comp->callback([&] {
    run = [&](Output& out) {
      rnd::Rng g(cfg.seed);
      auto r = compactness_gap(symbol_arg(sym_a), level(sp_n), level(sp_L.empty() ? cfg.level : sp_L), numeric_q(cfg),
                               sp_trials, g);
      out.emit({{"lhs", r.lhs}, {"rhs", r.rhs}, {"rhs_weighted", r.rhs_weighted}, {"holds", r.holds()},
                {"holds_weighted", r.holds_weighted()}});
      return r.holds_weighted() ? 0 : 1;
    };
  });
  auto* sp_eigs = spectral->add_subcommand("eigs", "eigenvalue from equal row sums");
  sp_eigs->add_option("SYMBOL", sym_a)->required();
  sp_eigs->add_option("--l", sp_l)->capture_default_str();
  sp_eigs->callback([&] {
    run = [&](Output& out) {
      auto r = row_sum_eigencheck(symbol_arg(sym_a), level(sp_l));
      json j = {{"l", sp_l}, {"residual_zero", r.residual_zero}, {"multiplicity", r.multiplicity}};
      j["lambda"] = numeric_json(r.lambda, cfg);
      out.emit(j);
      return r.residual_zero ? 0 : 1;
    };
  });
  auto* sp_index = spectral->add_subcommand("index", "Fredholm index three-way report");
  sp_index->add_option("--N", sp_N)->capture_default_str();
  sp_index->add_option("--m", sp_m)->capture_default_str();
  sp_index->add_option("--L", sp_L, "truncation level (default N+m+2)");
  sp_index->callback([&] {
    run = [&](Output& out) {
      std::optional<HalfInt> L;
      if (!sp_L.empty()) L = level(sp_L);
      auto r = fredholm_index(level(sp_N), level(sp_m), L);
      out.emit({{"N", r.N.str()}, {"m", r.m.str()}, {"L", r.L.str()}, {"oracle", r.oracle}, {"dim_ker", r.dim_ker},
                {"dim_coker", r.dim_coker}, {"sum_formula", r.sum_formula}, {"closed_form", r.closed_form.get_str()},
                {"agree_sum", r.agree_sum()}, {"agree_closed", r.agree_closed()}, {"reproducible", r.reproducible()}});
      return r.reproducible() ? 0 : 1;
    };
  });

  // circle
  auto* circle_cmd = app.add_subcommand("circle", "Woronowicz representation on the circle");
  circle_cmd->require_subcommand(1);
  std::string nu = "1", z = "1", zp = "1", poly = "0,-1,2", phase = "corrected";
  auto* c_res = circle_cmd->add_subcommand("residuals", "action and relation residuals");
  c_res->add_option("--nu", nu, "unit complex number re,im")->capture_default_str();
  c_res->add_option("--phase", phase, "corrected or printed sigma_a phase")
      ->check(CLI::IsMember({"corrected", "printed"}))
      ->capture_default_str();
  c_res->callback([&] {
    run = [&](Output& out) {
      auto variant = phase == "printed" ? circle::PhaseVariant::printed : circle::PhaseVariant::corrected;
      auto lines = circle::woronowicz_residuals(numeric_q(cfg), complex_arg(nu), cfg.cutoff, variant);
      auto rel = circle::relation_residuals(numeric_q(cfg), complex_arg(nu), cfg.cutoff, variant);
      lines.insert(lines.end(), rel.begin(), rel.end());
      bool ok = true;
      for (const auto& l : lines) {
        out.emit({{"relation", l.relation}, {"max_residual", l.max_residual}, {"K", l.K}, {"q0", l.q0},
                  {"interior_range", {l.interior_range.first, l.interior_range.second}}});
        ok = ok && l.max_residual < 1e-10;
      }
      return ok ? 0 : 1;
    };
  });
  auto* c_x = circle_cmd->add_subcommand("xproduct", "X_z X_z' against the stated blocks");
  c_x->add_option("--z", z)->capture_default_str();
  c_x->add_option("--zp", zp)->capture_default_str();
  c_x->callback([&] {
    run = [&](Output& out) {
      auto r = circle::su_matrix_product(complex_arg(z), complex_arg(zp), numeric_q(cfg), cfg.cutoff);
      const char* names[] = {"X11", "X12", "X21", "X22"};
      for (std::size_t b = 0; b < 4; ++b)
        out.emit({{"block", names[b]}, {"residual", r.residual[b]}, {"direct_size", r.magnitude[b]}, {"K", cfg.cutoff}});
      out.emit({{"block", "X12"}, {"against", "-q^2 X21*"},
                {"residual", circle::x12_scaled_residual(complex_arg(z), complex_arg(zp), numeric_q(cfg), cfg.cutoff)}});
      return 0;
    };
  });
  auto* c_demo = circle_cmd->add_subcommand("demo-transcendence", "|P(pi(c)) e_1| for P with P(q) = 0");
  c_demo->add_option("--poly", poly, "coefficients r_0,r_1,...")->capture_default_str();
  c_demo->add_option("--nu", nu)->capture_default_str();
  c_demo->callback([&] {
    run = [&](Output& out) {
      std::vector<double> r;
      std::stringstream ss(poly);
      for (std::string t; std::getline(ss, t, ',');) r.push_back(std::stod(t));
      double res = circle::transcendence_demo(r, numeric_q(cfg), complex_arg(nu));
      out.emit({{"poly", poly}, {"q0", numeric_q(cfg)}, {"residual", res}});
      return 0;
    };
  });

  // selfcheck
  auto* self = app.add_subcommand("selfcheck", "run the acceptance suite");
  self->callback([&] {
    run = [&](Output& out) {
      rnd::Rng g(cfg.seed);
      int failed = 0;
      for (const auto& check : selfcheck::suite()) {
        auto r = check(g);
        out.emit({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
        if (!r.pass) ++failed;
      }
      return failed ? 1 : 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto cache = io::cache_dir();
  try {
    if (cache) io::load_corep_cache(*cache, HalfInt(3));
    Output out(cfg.out);
    int rc = run(out);
    if (cache) io::save_corep_cache(*cache, HalfInt::from_twice(std::min(6, peter_weyl().built().back().twice())));
    return rc;
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << "\n";
    return 3;
  } catch (const SurdError& e) {
    std::cerr << "backend: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
