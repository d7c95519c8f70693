// One line per acceptance criterion; exit status is the number of failures.

#include "oracles.hpp"

#include <hmf/eisenstein.hpp>
#include <hmf/forms.hpp>
#include <hmf/lseries.hpp>
#include <hmf/modgroup.hpp>
#include <hmf/termseries.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace hmf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

char buf[512];

template <class... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

struct Pair {
  FormExpansion f, g;
};

const Pair& eisenstein_pair() {
  static const Pair p = [] {
    ExpansionOptions o;
    o.n_max = 40;
    const auto chi = trivial_character(1);
    return Pair{f_expansion(1, chi, -2, cusps(1)[0], o), f_fricke_expansion(1, chi, -2, cusps(1)[0], o)};
  }();
  return p;
}

FormExpansion random_form(std::mt19937_64& rng, int k, int n_max, double decay) {
  std::normal_distribution<double> g;
  FormExpansion F = FormExpansion::zero(k, 1, trivial_character(1), n_max);
  for (int n = 0; n <= n_max; ++n) F.c_plus[n] = cplx(g(rng), g(rng)) * std::pow(decay, n);
  for (int j = 0; j < n_max; ++j) F.c_minus[j] = cplx(g(rng), g(rng)) * std::pow(decay, j + 1);
  F.c_minus_zero = {g(rng), g(rng)};
  return F;
}

cplx random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5), v(0.5, 1.5);
  return {u(rng), v(rng)};
}

Outcome special_functions() {
  boost::math::quadrature::exp_sinh<double> es;
  double worst_g = 0;
  for (int nu = 1; nu <= 6; ++nu)
    for (double x : {0.1, 1.0, 5.0, 20.0}) {
      const double ref = es.integrate(
          [&](double t) { return x + t > 800 ? 0.0 : std::pow(x + t, nu - 1) * std::exp(-(x + t)); }, 1e-15);
      worst_g = std::max(worst_g, std::abs(inc_gamma(nu, x) - ref) / ref);
    }
  double worst_w = 0;
  for (int nu = 1; nu <= 5; ++nu)
    for (double re : {0.5, 1.0, 2.0})
      for (double im : {-10.0, -5.0, 0.0, 5.0, 10.0}) {
        const cplx s(re, im);
        const cplx ref = oracle::w_integral(nu, s);
        worst_w = std::max(worst_w, std::abs(w_nu(nu, s) - ref) / std::abs(ref));
      }
  return {worst_g <= 1e-10 && worst_w <= 1e-8,
          fmt("inc_gamma rel err %.2e (<= 1e-10), W_nu rel err %.2e (<= 1e-8)", worst_g, worst_w)};
}

Outcome mellin_round_trip() {
  double worst = 0;
  for (int nu = 1; nu <= 3; ++nu)
    for (double x : {0.5, 1.0, 2.0}) {
      const MellinInversion r = mellin_invert_w(nu, x, {2.0, 200.0, 16, 1e-9});
      worst = std::max(worst, std::abs(r.value - oracle::upper_gamma(nu, 2 * x) * std::exp(x)));
    }
  return {worst <= 1e-6, fmt("max abs err %.2e (<= 1e-6) reconstructing Gamma(nu,2x)e^x", worst)};
}

Outcome operator_identities() {
  std::mt19937_64 rng(2024);
  double lr = 0, xx = 0, bo = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int k = -1 - trial % 3;
    const FormExpansion F = random_form(rng, k, 8, 0.8);
    const TermSeries f = TermSeries::from_form(F);
    const cplx tau = random_point(rng);
    const cplx delta = laplace(f, k)(tau);
    lr = std::max(lr, std::abs(-delta - (lower(raise(f, k), k + 2)(tau) + double(k) * f(tau))));
    xx = std::max(xx, std::abs(delta + xi(xi(f, k), 2 - k)(tau)));
    const cplx rhs = std::pow(-4.0 * kPi, k - 1) * iterated_raise(f, k, 1 - k)(tau);
    bo = std::max(bo, std::abs(bol(F)(tau) - rhs) / std::abs(rhs));
  }
  return {lr <= 1e-8 && xx <= 1e-8 && bo <= 1e-6,
          fmt("LR %.2e, xi xi %.2e (<= 1e-8 abs); Bol %.2e (<= 1e-6 rel)", lr, xx, bo)};
}

Outcome harmonicity() {
  std::mt19937_64 rng(77);
  const oracle::Stencil st{1e-3};
  double term = 0, fd = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int k = -1 - trial % 4;
    const FormExpansion F = random_form(rng, k, 6, 0.5);
    const cplx tau = random_point(rng);
    term = std::max(term, std::abs(laplacian(F, tau)));
    const Evaluator f = evaluator(F);
    const double v = tau.imag();
    const cplx I(0, 1);
    const cplx d = -v * v * (st.duu(f, tau) + st.dvv(f, tau)) + I * double(k) * v * (st.du(f, tau) + I * st.dv(f, tau));
    fd = std::max(fd, std::abs(d));
  }
  return {term <= 1e-9 && fd <= 1e-4, fmt("termwise %.2e (<= 1e-9), finite differences %.2e (<= 1e-4)", term, fd)};
}

Outcome shadow_identity() {
  const auto chi = trivial_character(1);
  const Cusp inf = cusps(1)[0];
  ExpansionOptions o;
  o.n_max = 8;
  o.bound = 60;
  o.v0 = 1.0;
  o.v1 = 2.0;
  o.samples = 256;
  const HolomorphicQExpansion sh = shadow(f_expansion(1, chi, -2, inf, o));
  const HolomorphicQExpansion e4 = eisenstein_expansion(1, chi, -2, inf, o);
  double worst = 0;
  for (int n = 0; n <= 8; ++n)
    worst = std::max(worst, std::abs(sh.coefficients[n] - e4.coefficients[n]) / std::abs(e4.coefficients[n]));
  return {worst <= 1e-3, fmt("max rel diff shadow vs extracted E_4, n <= 8: %.2e (<= 1e-3)", worst)};
}

Outcome dimension_formula() {
  int bad = 0, worst_n = 0;
  for (int N = 1; N <= 60; ++N) {
    if (dim_eisenstein(N, trivial_character(N)) != oracle::cusp_count_bruteforce(N)) {
      ++bad;
      worst_n = N;
    }
  }
  return {bad == 0, bad == 0 ? std::string("dim = brute-force cusp count for all N <= 60")
                             : fmt("%d mismatches, last at N = %d", bad, worst_n)};
}

Outcome hecke_direction() {
  const Pair& p = eisenstein_pair();
  std::vector<cplx> grid;
  for (double re : {-1.5, -1.0, -0.5, 0.5, 0.75})
    for (double im : {0.0, 1.0, 2.0}) grid.emplace_back(re, im);
  const FrickePair pair = make_fricke_pair(p.f, p.g);
  const ResidualReport rep = fe_residuals(pair, grid);
  const Continuation c(pair);
  double res = 0;
  for (const auto& pole : c.poles()) {
    const cplx r = contour_residue([&](cplx s) { return c.lambda(s); }, pole.at, 0.2);
    res = std::max(res, std::abs(r - pole.lambda_residue));
  }
  // the four constants themselves, independent of the continuation's bookkeeping
  const cplx ik = -1.0;
  const cplx expect[] = {-p.f.plus(0), ik * p.g.plus(0), ik * p.g.c_minus_zero, -p.f.c_minus_zero};
  const double at[] = {0, -2, 1, -3};
  for (int j = 0; j < 4; ++j)
    res = std::max(res, std::abs(contour_residue([&](cplx s) { return c.lambda(s); }, at[j], 0.2) - expect[j]));
  return {rep.grid.size() == 15 && rep.max_lambda() <= 1e-5 && rep.max_omega() <= 1e-5 && res <= 1e-5,
          fmt("%zu points: Lambda %.2e, Omega %.2e (<= 1e-5); residues %.2e (<= 1e-5)", rep.grid.size(),
              rep.max_lambda(), rep.max_omega(), res)};
}

Outcome reconstruction() {
  double single = 0;
  for (int n : {1, 2, -1, -2}) {
    FormExpansion F = FormExpansion::zero(-2, 1, trivial_character(1), 4);
    if (n > 0) F.c_plus[n] = 1.0;
    else F.c_minus[-n - 1] = 1.0;
    for (double t : {0.8, 1.0, 1.5}) {
      const Reconstruction r = reconstruct_from_lambda([&](cplx s) { return lambda_definitional(F, s); }, 1, -2, t, 2.0);
      single = std::max(single, std::abs(r.value - evaluate_value(F, cplx(0, t))));
    }
  }
  const Pair& p = eisenstein_pair();
  double eis = 0;
  for (double t : {0.8, 1.0, 1.5}) {
    const Reconstruction r = reconstruct_from_lambda([&](cplx s) { return lambda_definitional(p.f, s); }, 1, -2, t, 2.0);
    const cplx want = evaluate_value(p.f, cplx(0, t)) - p.f.plus(0) - p.f.c_minus_zero * std::pow(t, 3);
    eis = std::max(eis, std::abs(r.value - want));
  }
  return {single <= 1e-5 && eis <= 1e-4, fmt("single coefficient %.2e (<= 1e-5), Eisenstein %.2e (<= 1e-4)", single, eis)};
}

Outcome twist_layer() {
  std::mt19937_64 rng(5);
  const auto psi = character_from_label(5, "quadratic");
  const FormExpansion R = random_form(rng, -2, 12, 1.0);
  const FormExpansion Rpsi = twist(R, psi);
  const Evaluator r = evaluator(R);
  const cplx tg = gauss_sum(conjugate(psi));
  double slash_sum = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const cplx tau = random_point(rng);
    cplx acc = 0;
    for (int a = 0; a < 5; ++a) acc += std::conj(psi(a)) * slash(r, -2, translation(Rational(a, 5)), tau);
    slash_sum = std::max(slash_sum, std::abs(acc / tg - evaluate_value(Rpsi, tau)));
  }
  const Pair& p = eisenstein_pair();
  const std::vector<cplx> grid = {{-1.5, 0}, {-0.5, 0}, {0.5, 0}, {-1, 1}, {0.25, 2}};
  const ResidualReport rep = twisted_residuals(p.f, p.g, psi, grid);
  double cpsi = 0;
  for (int m = 2; m <= 30; ++m)
    for (const auto& x : enumerate_characters(m))
      if (x.primitive) {
        for (int N : {1, 7}) {
          if (std::gcd(m, N) != 1) continue;
          const auto chi = trivial_character(N);
          cpsi = std::max(cpsi, std::abs(c_psi(chi, x, N) - c_psi_squared_form(chi, x, N)));
        }
      }
  return {slash_sum <= 1e-8 && rep.max_lambda() <= 1e-4 && rep.max_omega() <= 1e-4 && cpsi <= 1e-10,
          fmt("slash sum %.2e (<= 1e-8); twisted Lambda %.2e, Omega %.2e (<= 1e-4); C_psi forms %.2e (<= 1e-10)",
              slash_sum, rep.max_lambda(), rep.max_omega(), cpsi)};
}

Outcome sensitivity() {
  const Pair& p = eisenstein_pair();
  std::vector<cplx> grid;
  for (double re : {-1.5, -1.0, -0.5, 0.5, 0.75})
    for (double im : {0.0, 1.0, 2.0}) grid.emplace_back(re, im);
  const double base = fe_residuals(make_fricke_pair(p.f, p.g), grid).max_lambda();
  FormExpansion g0 = p.g;
  g0.c_plus[0] += 0.1;
  FormExpansion g1 = p.g;
  g1.c_minus[0] += 0.1;
  const double r0 = fe_residuals(make_fricke_pair(p.f, g0), grid).max_lambda();
  const double r1 = fe_residuals(make_fricke_pair(p.f, g1), grid).max_lambda();
  return {r0 > 1e-3 && r1 > 1e-3 && base < 1e-5,
          fmt("true pair %.2e; g c+(0) + 0.1 -> %.2e, g c-(-1) + 0.1 -> %.2e (> 1e-3)", base, r0, r1)};
}

Outcome conductor_data() {
  const ConductorSet a = verification_set(7), b = verification_set(11);
  const bool ok = a.conductors == std::vector<int>{11, 17, 19, 23, 29, 41} &&
                  b.conductors == std::vector<int>{13, 17, 19, 23, 29, 31, 37, 47, 59, 71} && a.source == "paper" &&
                  b.source == "paper";
  return {ok, "N = 7 and N = 11 conductor lists, source = paper"};
}

} // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"special functions", special_functions},
      {"Mellin round trip", mellin_round_trip},
      {"operator identities", operator_identities},
      {"termwise harmonicity", harmonicity},
      {"shadow of the example", shadow_identity},
      {"dimension formula", dimension_formula},
      {"functional equations and residues", hecke_direction},
      {"inverse Mellin reconstruction", reconstruction},
      {"twists", twist_layer},
      {"sensitivity", sensitivity},
      {"conductor sets", conductor_data},
  };
  int failures = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures;
}
