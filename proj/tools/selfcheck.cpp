#include "selfcheck.hpp"

#include <hmf/eisenstein.hpp>
#include <hmf/io.hpp>
#include <hmf/lseries.hpp>
#include <hmf/modgroup.hpp>
#include <hmf/termseries.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>

namespace hmf::cli {

namespace {

FormExpansion random_form(std::mt19937_64& rng, int k, int n_max) {
  std::normal_distribution<double> g(0.0, 1.0);
  FormExpansion F = FormExpansion::zero(k, 1, trivial_character(1), n_max);
  for (auto& c : F.c_plus) c = {g(rng), g(rng)};
  for (auto& c : F.c_minus) c = {g(rng), g(rng)};
  F.c_minus_zero = {g(rng), g(rng)};
  return F;
}

cplx random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5), v(0.6, 1.6);
  return {u(rng), v(rng)};
}

bool special_functions() {
  double worst = 0.0;
  for (int nu = 1; nu <= 6; ++nu)
    for (double x : {0.1, 1.0, 5.0, 20.0}) {
      const double ref = boost::math::tgamma(double(nu), x);
      worst = std::max(worst, std::abs(inc_gamma(nu, x) - ref) / ref);
    }
  double worst_w = 0.0;
  boost::math::quadrature::exp_sinh<double> es;
  for (int nu = 1; nu <= 3; ++nu)
    for (double s : {0.5, 2.0}) {
      const double ref = es.integrate([&](double x) {
        if (x > 300.0) return 0.0;
        return boost::math::tgamma(double(nu), 2 * x) * std::exp(x) * std::pow(x, s - 1);
      });
      worst_w = std::max(worst_w, std::abs(w_nu(nu, s) - ref) / std::abs(ref));
    }
  return worst < 1e-10 && worst_w < 1e-8;
}

bool operator_identities() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int k = -1 - trial % 3;
    const FormExpansion F = random_form(rng, k, 6);
    const TermSeries f = TermSeries::from_form(F);
    const cplx tau = random_point(rng);
    const cplx lhs = -laplace(f, k)(tau);
    const cplx lr = lower(raise(f, k), k + 2)(tau) + double(k) * f(tau);
    const cplx xx = -xi(xi(f, k), 2 - k)(tau);
    worst = std::max({worst, std::abs(lhs - lr), std::abs(-lhs - xx), std::abs(laplacian(F, tau))});
  }
  return worst < 1e-8;
}

bool json_round_trip() {
  std::mt19937_64 rng(11);
  const FormExpansion F = random_form(rng, -3, 9);
  const FormExpansion G = io::form_from_json(io::form_to_json(F));
  return G.c_plus == F.c_plus && G.c_minus == F.c_minus && G.c_minus_zero == F.c_minus_zero &&
         G.weight == F.weight && G.level == F.level && G.character == F.character;
}

bool dimensions() {
  for (int N = 1; N <= 30; ++N) {
    if (dim_eisenstein(N, trivial_character(N)) != int(cusps(N).size())) return false;
  }
  return true;
}

bool conductor_sets() {
  return verification_set(7).conductors == std::vector<int>{11, 17, 19, 23, 29, 41} &&
         verification_set(11).conductors == std::vector<int>{13, 17, 19, 23, 29, 31, 37, 47, 59, 71} &&
         verification_set(7).source == "paper" && verification_set(11).source == "paper";
}

bool eisenstein_pair(bool quick) {
  ExpansionOptions o;
  o.n_max = quick ? 10 : 20;
  const auto chi = trivial_character(1);
  const Cusp inf = cusps(1)[0];
  const FormExpansion F = f_expansion(1, chi, -2, inf, o);
  const FormExpansion G = f_fricke_expansion(1, chi, -2, inf, o);
  const auto grid = rectangular_grid(-1.5, 0.5, 3, 0.5, 2.0, 2, -2);
  const ResidualReport good = fe_residuals(make_fricke_pair(F, G), grid);
  FormExpansion bad = G;
  bad.c_plus[0] += 0.1;
  const ResidualReport off = fe_residuals(make_fricke_pair(F, bad), grid);
  return good.max_residual() < 1e-4 && off.max_lambda() > 1e-3;
}

} // namespace

int run_selfcheck(std::ostream& out, bool quick) {
  const std::pair<const char*, std::function<bool()>> checks[] = {
      {"special functions", special_functions},
      {"operator identities", operator_identities},
      {"json round trip", json_round_trip},
      {"eisenstein dimension", dimensions},
      {"conductor sets", conductor_sets},
      {"eisenstein functional equation", [quick] { return eisenstein_pair(quick); }},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception& e) {
      out << "  (" << e.what() << ")\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << (ok ? "PASS " : "FAIL ") << name << " (" << secs << " s)\n";
    failures += ok ? 0 : 1;
  }
  return failures;
}

} // namespace hmf::cli
