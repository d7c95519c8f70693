#include "selfcheck.hpp"

#include <hmf/eisenstein.hpp>
#include <hmf/errors.hpp>
#include <hmf/io.hpp>
#include <hmf/lseries.hpp>
#include <hmf/modgroup.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace hmf;

namespace {

enum Exit { kOk = 0, kUsage = 2, kPrecondition = 3, kConditioning = 4, kVerification = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    io::write_file_atomic(path, content);
  }
}

DirichletCharacter parse_character(int q, const std::string& label) {
  try {
    return character_from_label(q, label);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Cusp parse_cusp_or_usage(int N, const std::string& text, const DirichletCharacter& chi) {
  try {
    return parse_cusp(N, text, chi);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// "re0:re1:steps,im0:im1:steps"
std::vector<cplx> parse_grid(const std::string& spec, int k, std::vector<cplx>& excluded) {
  double r0, r1, i0, i1;
  int rn, in;
  char tail;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d,%lf:%lf:%d%c", &r0, &r1, &rn, &i0, &i1, &in, &tail) != 6 || rn < 1 ||
      in < 1) {
    throw UsageError("grid must look like re0:re1:steps,im0:im1:steps, got '" + spec + "'");
  }
  return rectangular_grid(r0, r1, rn, i0, i1, in, k, &excluded);
}

DirichletCharacter parse_psi(const std::string& spec, int N) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("--psi expects MODULUS:LABEL");
  int m = 0;
  try {
    m = std::stoi(spec.substr(0, colon));
  } catch (const std::exception&) {
    throw UsageError("--psi: bad modulus in '" + spec + "'");
  }
  if (m < 1) throw UsageError("--psi: modulus must be positive");
  if (std::gcd(m, N) != 1) {
    throw UsageError("--psi: modulus " + std::to_string(m) + " is not coprime to the level " + std::to_string(N));
  }
  return parse_character(m, spec.substr(colon + 1));
}

cplx parse_tau(const std::string& text) {
  double u, v;
  char tail;
  if (std::sscanf(text.c_str(), "%lf,%lf%c", &u, &v, &tail) != 2) throw UsageError("--tau expects u,v");
  if (!(v > 0.0)) throw UsageError("--tau: v must be positive");
  return {u, v};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string fmt(cplx z) { return "[" + fmt(z.real()) + ", " + fmt(z.imag()) + "]"; }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic Maass forms of polynomial growth: examples, operators and functional equations"};
  app.require_subcommand(1);
  std::function<int()> action;

  // example
  int level = 1, weight = -2, nmax = 40, bound = 60, samples = 256;
  std::string cusp_text = "inf", char_label = "triv", out_path, in_path;
  double v0 = 1.0, v1 = 2.0;
  bool fricke = false;
  auto* ex = app.add_subcommand("example", "Fourier expansion of the Eisenstein-type form F_{k,rho}");
  ex->add_option("--level", level, "level N")->check(CLI::PositiveNumber);
  ex->add_option("--weight", weight, "weight k (negative)");
  ex->add_option("--cusp", cusp_text, "cusp: inf, a or a/c");
  ex->add_option("--character", char_label, "character label: triv, quadratic, #j or exponent list");
  ex->add_option("--nmax", nmax, "highest Fourier index")->check(CLI::PositiveNumber);
  ex->add_option("--bound", bound, "coset-sum box bound")->check(CLI::Range(4, 100000));
  ex->add_option("--samples", samples, "nodes per period integral")->check(CLI::Range(8, 1 << 20));
  ex->add_option("--v0", v0, "first extraction height")->check(CLI::PositiveNumber);
  ex->add_option("--v1", v1, "second extraction height")->check(CLI::PositiveNumber);
  ex->add_flag("--fricke", fricke, "expand F | omega(N) instead");
  ex->add_option("--out", out_path, "output JSON (default stdout)");
  ex->callback([&] {
    action = [&] {
      if (weight >= 0) throw UsageError("weight must be negative, got " + std::to_string(weight));
      const DirichletCharacter chi = parse_character(level, char_label);
      const Cusp rho = parse_cusp_or_usage(level, cusp_text, chi);
      if (chi.parity != (weight % 2 == 0 ? 1 : -1)) {
        throw PreconditionError("character parity " + std::to_string(chi.parity) + " does not match weight " +
                                std::to_string(weight));
      }
      ExpansionOptions o;
      o.n_max = nmax;
      o.bound = bound;
      o.samples = samples;
      o.v0 = v0;
      o.v1 = v1;
      ExpansionReport rep;
      const FormExpansion F = fricke ? f_fricke_expansion(level, chi, weight, rho, o, &rep)
                                     : f_expansion(level, chi, weight, rho, o, &rep);
      emit(out_path, io::form_to_json(F));
      std::ostream& log = out_path.empty() ? std::cerr : std::cout;
      log << "c-(0) = " << fmt(F.c_minus_zero) << "\n"
          << "c+(0) = " << fmt(F.plus(0)) << "\n"
          << "coset-sum tail estimate " << rep.max_tail_estimate << ", worst extraction condition "
          << rep.max_condition << "\n";
      return kOk;
    };
  });

  // verify-fe
  std::string f_path, g_path, psi_spec, grid_spec = "-1.75:0.75:6,0:2:3", json_path;
  double tol = 1e-4, upper = 0.0, split_g = 1.5;
  auto* vf = app.add_subcommand("verify-fe", "Residuals of the functional equations of Lambda and Omega");
  vf->add_option("--f", f_path, "form JSON for f")->required();
  vf->add_option("--g", g_path, "form JSON for g = f | omega(N)")->required();
  vf->add_option("--psi", psi_spec, "twist by a primitive character, MODULUS:LABEL");
  vf->add_option("--grid", grid_spec, "re0:re1:steps,im0:im1:steps");
  vf->add_option("--out", out_path, "residual CSV (default stdout)");
  vf->add_option("--json", json_path, "also write the report with metadata as JSON");
  vf->add_option("--tol", tol, "largest accepted residual")->check(CLI::PositiveNumber);
  vf->add_option("--T", upper, "upper integration limit (0: automatic)");
  vf->add_option("--split-g", split_g, "split point of the g-side integral")->check(CLI::PositiveNumber);
  vf->callback([&] {
    action = [&] {
      const FormExpansion F = io::load_form(f_path);
      const FormExpansion G = io::load_form(g_path);
      if (F.level != G.level || F.weight != G.weight) throw PreconditionError("f and g differ in level or weight");
      std::vector<cplx> excluded;
      const std::vector<cplx> grid = parse_grid(grid_spec, F.weight, excluded);
      for (cplx s : excluded) std::cerr << "notice: skipping pole s = " << fmt(s) << "\n";
      ResidualOptions ro;
      ro.f_side.upper_limit = upper;
      ro.g_side.upper_limit = upper;
      ro.g_side.split = split_g;
      ResidualReport rep;
      if (psi_spec.empty()) {
        rep = fe_residuals(make_fricke_pair(F, G), grid, ro);
      } else {
        rep = twisted_residuals(F, G, parse_psi(psi_spec, F.level), grid, ro);
      }
      rep.excluded.insert(rep.excluded.end(), excluded.begin(), excluded.end());
      emit(out_path, io::residuals_to_csv(rep));
      if (!json_path.empty()) io::write_file_atomic(json_path, io::residuals_to_json(rep));
      std::ostream& log = out_path.empty() ? std::cerr : std::cout;
      log << "max Lambda residual " << rep.max_lambda() << ", max Omega residual " << rep.max_omega() << " over "
          << rep.grid.size() << " points (tol " << tol << ")\n";
      return rep.max_residual() <= tol ? kOk : kVerification;
    };
  });

  // unary operators on a form file
  auto unary = [&](const char* name, const char* help, std::function<std::string(const FormExpansion&)> op) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("--in", in_path, "form JSON")->required();
    sc->add_option("--out", out_path, "output (default stdout)");
    return std::pair{sc, op};
  };
  auto [sh, sh_op] = unary("shadow", "xi_k: holomorphic q-expansion of weight 2-k",
                           [](const FormExpansion& F) { return io::qexpansion_to_json(shadow(F)); });
  auto [bo, bo_op] = unary("bol", "D^{1-k}: holomorphic q-expansion of weight 2-k",
                           [](const FormExpansion& F) { return io::qexpansion_to_json(bol(F)); });
  for (auto [sc, op] : {std::pair{sh, sh_op}, std::pair{bo, bo_op}}) {
    sc->callback([&, op] {
      action = [&, op] {
        emit(out_path, op(io::load_form(in_path)));
        return kOk;
      };
    });
  }

  auto* tw = app.add_subcommand("twist", "Twist the Fourier coefficients by a primitive character");
  tw->add_option("--in", in_path, "form JSON")->required();
  tw->add_option("--psi", psi_spec, "MODULUS:LABEL")->required();
  tw->add_option("--out", out_path, "output JSON (default stdout)");
  tw->callback([&] {
    action = [&] {
      const FormExpansion F = io::load_form(in_path);
      emit(out_path, io::form_to_json(twist(F, parse_psi(psi_spec, F.level))));
      return kOk;
    };
  });

  std::string tau_text;
  auto* ev = app.add_subcommand("eval", "Evaluate a form at a point");
  ev->add_option("--in", in_path, "form JSON")->required();
  ev->add_option("--tau", tau_text, "u,v")->required();
  ev->callback([&] {
    action = [&] {
      const Evaluation e = evaluate(io::load_form(in_path), parse_tau(tau_text));
      std::cout << "{\"value\": " << fmt(e.value) << ", \"tail_bound\": " << fmt(e.tail_bound) << "}\n";
      return kOk;
    };
  });

  int index = 1;
  auto* xt = app.add_subcommand("extract", "Extract (c+(n), c-(n)) of F_{k,rho} from the coset sum");
  xt->add_option("--level", level)->check(CLI::PositiveNumber);
  xt->add_option("--weight", weight);
  xt->add_option("--cusp", cusp_text);
  xt->add_option("--character", char_label);
  xt->add_option("--n", index, "Fourier index (any sign)");
  xt->add_option("--bound", bound)->check(CLI::Range(4, 100000));
  xt->add_option("--samples", samples)->check(CLI::Range(8, 1 << 20));
  xt->add_option("--v0", v0)->check(CLI::PositiveNumber);
  xt->add_option("--v1", v1)->check(CLI::PositiveNumber);
  xt->callback([&] {
    action = [&] {
      if (weight >= 0) throw UsageError("weight must be negative");
      const DirichletCharacter chi = parse_character(level, char_label);
      const Cusp rho = parse_cusp_or_usage(level, cusp_text, chi);
      const CosetSum sum = make_coset_sum(level, chi, weight, rho, bound);
      const Evaluator f = [&sum](cplx tau) { return f_series(sum, tau).extrapolated; };
      const Extracted e = extract_coefficients(f, weight, 1.0, 0.0, index, v0, v1, samples);
      std::cout << "{\"n\": " << index << ", \"c_plus\": " << fmt(e.c_plus) << ", \"c_minus\": " << fmt(e.c_minus)
                << ", \"condition\": " << fmt(e.condition) << "}\n";
      return kOk;
    };
  });

  auto* cu = app.add_subcommand("cusps", "Cusp representatives of Gamma_0(N)");
  cu->add_option("--level", level)->required()->check(CLI::PositiveNumber);
  cu->add_option("--character", char_label);
  cu->add_option("--out", out_path);
  cu->callback([&] {
    action = [&] {
      emit(out_path, io::cusps_to_json(level, cusps(level, parse_character(level, char_label))));
      return kOk;
    };
  });

  auto* di = app.add_subcommand("dim", "Dimension of the Eisenstein space");
  di->add_option("--level", level)->required()->check(CLI::PositiveNumber);
  di->add_option("--character", char_label);
  di->callback([&] {
    action = [&] {
      std::cout << dim_eisenstein(level, parse_character(level, char_label)) << "\n";
      return kOk;
    };
  });

  bool quick = false;
  auto* sc = app.add_subcommand("selfcheck", "Run the built-in property checks");
  sc->add_flag("--quick", quick, "smaller expansions");
  sc->callback([&] {
    action = [&] { return cli::run_selfcheck(std::cout, quick) == 0 ? kOk : kVerification; };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const IllConditionedError& e) {
    std::cerr << "ill-conditioned: " << e.what() << "\n";
    return kConditioning;
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature: " << e.what() << "\n";
    return kConditioning;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
