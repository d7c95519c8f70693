#include <doctest.h>

#include "oracles.hpp"

#include <hmf/errors.hpp>
#include <hmf/forms.hpp>
#include <hmf/modgroup.hpp>
#include <hmf/termseries.hpp>

#include <random>

using namespace hmf;

namespace {

FormExpansion random_form(std::mt19937_64& rng, int k, int n_max, double decay = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
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

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

} // namespace

TEST_CASE("evaluation agrees with a direct term sum") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = -1 - trial % 4;
    const FormExpansion F = random_form(rng, k, 12);
    const cplx tau = random_point(rng);
    const cplx ref = oracle::direct_sum(k, F.c_plus, F.c_minus_zero, F.c_minus, tau);
    CHECK(rel(evaluate_value(F, tau), ref) < 1e-12);
  }
}

TEST_CASE("validation") {
  FormExpansion F = FormExpansion::zero(-2, 1, trivial_character(1), 4);
  CHECK_NOTHROW(validate(F));
  F.weight = 0;
  CHECK_THROWS_AS(validate(F), DomainError);
  F.weight = -2;
  F.c_plus.pop_back();
  CHECK_THROWS_AS(validate(F), DomainError);
  FormExpansion G = FormExpansion::zero(-2, 6, trivial_character(4), 4);
  CHECK_THROWS_AS(validate(G), DomainError);
}

TEST_CASE("tail bound covers the truncation error") {
  // coefficients of exact size n^alpha; the truncated expansion must sit within the bound
  for (int k : {-1, -2, -3}) {
    FormExpansion full = FormExpansion::zero(k, 1, trivial_character(1), 60);
    full.alpha = 2.0;
    for (int n = 1; n <= 60; ++n) {
      full.c_plus[n] = double(n) * n;
      full.c_minus[n - 1] = cplx(0, double(n) * n);
    }
    FormExpansion cut = full;
    cut.n_max = 8;
    cut.c_plus.resize(9);
    cut.c_minus.resize(8);
    for (double v : {0.3, 0.6, 1.0}) {
      const cplx tau(0.2, v);
      const Evaluation e = evaluate(cut, tau);
      CHECK(std::abs(e.value - evaluate_value(full, tau)) <= e.tail_bound);
    }
  }
}

TEST_CASE("partials against finite differences") {
  std::mt19937_64 rng(2);
  const oracle::Stencil st{1e-3};
  for (int trial = 0; trial < 10; ++trial) {
    const FormExpansion F = random_form(rng, -2, 8, 0.7);
    const Evaluator f = evaluator(F);
    const cplx tau = random_point(rng);
    const Partials p = evaluate_partials(F, tau);
    CHECK(std::abs(p.du - st.du(f, tau)) < 1e-7 * std::max(1.0, std::abs(p.du)));
    CHECK(std::abs(p.dv - st.dv(f, tau)) < 1e-7 * std::max(1.0, std::abs(p.dv)));
  }
}

TEST_CASE("operator identities: -Delta = L R + k and Delta = -xi xi") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = -1 - trial % 3;
    const FormExpansion F = random_form(rng, k, 8);
    const TermSeries f = TermSeries::from_form(F);
    const cplx tau = random_point(rng);
    const cplx delta = laplace(f, k)(tau);
    CHECK(std::abs(-delta - (lower(raise(f, k), k + 2)(tau) + double(k) * f(tau))) < 1e-8);
    CHECK(std::abs(delta + xi(xi(f, k), 2 - k)(tau)) < 1e-8);
  }
}

TEST_CASE("pointwise R, L and xi against finite differences") {
  std::mt19937_64 rng(4);
  const oracle::Stencil st{1e-3};
  for (int trial = 0; trial < 10; ++trial) {
    const int k = -1 - trial % 3;
    const FormExpansion F = random_form(rng, k, 6, 0.6);
    const Evaluator f = evaluator(F);
    const cplx tau = random_point(rng);
    const double v = tau.imag();
    const cplx fu = st.du(f, tau), fv = st.dv(f, tau);
    const cplx I(0, 1);
    const cplx R = I * fu + fv + double(k) / v * f(tau);
    const cplx L = -I * v * v * (fu + I * fv);
    const cplx X = I * std::pow(v, k) * std::conj(fu + I * fv);
    CHECK(std::abs(raising(F, tau) - R) < 1e-6 * std::max(1.0, std::abs(R)));
    CHECK(std::abs(lowering(F, tau) - L) < 1e-6 * std::max(1.0, std::abs(L)));
    CHECK(std::abs(xi_pointwise(F, tau) - X) < 1e-6 * std::max(1.0, std::abs(X)));
    const TermSeries t = TermSeries::from_form(F);
    CHECK(std::abs(raise(t, k)(tau) - raising(F, tau)) < 1e-10 * std::max(1.0, std::abs(R)));
  }
}

TEST_CASE("termwise harmonicity and the finite-difference Laplacian") {
  std::mt19937_64 rng(5);
  const oracle::Stencil st{1e-3};
  for (int trial = 0; trial < 50; ++trial) {
    const int k = -1 - trial % 4;
    const FormExpansion F = random_form(rng, k, 6, 0.5);
    const cplx tau = random_point(rng);
    CHECK(std::abs(laplacian(F, tau)) <= 1e-9);
    if (trial % 5 == 0) {
      const Evaluator f = evaluator(F);
      const double v = tau.imag();
      const cplx I(0, 1);
      const cplx fd = -v * v * (st.duu(f, tau) + st.dvv(f, tau)) + I * double(k) * v * (st.du(f, tau) + I * st.dv(f, tau));
      CHECK(std::abs(fd) <= 1e-4);
    }
  }
}

TEST_CASE("Bol operator equals (-4 pi)^{k-1} R^{1-k}") {
  std::mt19937_64 rng(6);
  for (int k : {-1, -2, -3}) {
    for (int trial = 0; trial < 5; ++trial) {
      const FormExpansion F = random_form(rng, k, 6, 0.8);
      const cplx tau = random_point(rng);
      const cplx lhs = bol(F)(tau);
      const cplx rhs = std::pow(-4.0 * kPi, k - 1) * iterated_raise(TermSeries::from_form(F), k, 1 - k)(tau);
      CHECK(rel(lhs, rhs) < 1e-6);
    }
  }
}

TEST_CASE("shadow equals xi_k and vanishes on holomorphic forms") {
  std::mt19937_64 rng(7);
  for (int k : {-1, -2, -3}) {
    const FormExpansion F = random_form(rng, k, 6);
    const cplx tau = random_point(rng);
    CHECK(rel(shadow(F)(tau), xi(TermSeries::from_form(F), k)(tau)) < 1e-10);
    CHECK(rel(shadow(F)(tau), xi_pointwise(F, tau)) < 1e-10);
    FormExpansion H = F;
    H.c_minus_zero = 0.0;
    std::fill(H.c_minus.begin(), H.c_minus.end(), cplx(0.0));
    for (cplx c : shadow(H).coefficients) CHECK(c == 0.0);
  }
}

TEST_CASE("H-transform is 2 i v f_u + k f") {
  std::mt19937_64 rng(8);
  const oracle::Stencil st{1e-3};
  const FormExpansion F = random_form(rng, -2, 6, 0.6);
  const Evaluator f = evaluator(F);
  const cplx tau(0.1, 0.9);
  const cplx ref = cplx(0, 2 * tau.imag()) * st.du(f, tau) - 2.0 * f(tau);
  CHECK(rel(h_transform(F, tau), ref) < 1e-7);
}

TEST_CASE("twist by an even character equals the slash sum") {
  // f_psi = tau(conj psi)^{-1} sum_a conj psi(a) f | [[1, a/m], [0, 1]]
  std::mt19937_64 rng(9);
  const auto psi = character_from_label(5, "quadratic");
  REQUIRE(psi.parity == 1);
  const FormExpansion F = random_form(rng, -2, 12);
  const FormExpansion Fpsi = twist(F, psi);
  CHECK(Fpsi.level == 25);
  const Evaluator f = evaluator(F);
  const cplx tg = gauss_sum(conjugate(psi));
  for (int trial = 0; trial < 10; ++trial) {
    const cplx tau = random_point(rng);
    cplx acc = 0;
    for (int a = 0; a < 5; ++a) acc += std::conj(psi(a)) * slash(f, -2, translation(Rational(a, 5)), tau);
    CHECK(std::abs(acc / tg - evaluate_value(Fpsi, tau)) <= 1e-8);
  }
}

TEST_CASE("for odd psi the slash sum differs by psi(-1) on the nonholomorphic part") {
  std::mt19937_64 rng(10);
  DirichletCharacter psi;
  for (const auto& c : enumerate_characters(5))
    if (c.parity == -1) psi = c;
  REQUIRE(psi.parity == -1);
  const FormExpansion F = random_form(rng, -2, 10);
  FormExpansion expect = twist(F, psi);
  for (auto& c : expect.c_minus) c *= -1.0;
  const Evaluator f = evaluator(F);
  const cplx tg = gauss_sum(conjugate(psi));
  const cplx tau(0.13, 0.8);
  cplx acc = 0;
  for (int a = 0; a < 5; ++a) acc += std::conj(psi(a)) * slash(f, -2, translation(Rational(a, 5)), tau);
  CHECK(std::abs(acc / tg - evaluate_value(expect, tau)) <= 1e-8);
}

TEST_CASE("twist preconditions") {
  const FormExpansion F = FormExpansion::zero(-2, 1, trivial_character(1), 4);
  CHECK_THROWS_AS(twist(F, trivial_character(4)), PreconditionError);
}

TEST_CASE("coefficient extraction recovers synthetic data") {
  std::mt19937_64 rng(11);
  const FormExpansion F = random_form(rng, -2, 10, 0.8);
  const Evaluator f = evaluator(F);
  for (int n : {-3, -1, 0, 1, 2, 4}) {
    const int m = std::max(1, std::abs(n));
    const Extracted e = extract_coefficients(f, -2, 1.0, 0.0, n, 0.5 / m, 1.0 / m, 64);
    const cplx want_plus = n >= 0 ? F.c_plus[n] : 0.0;
    const cplx want_minus = n < 0 ? F.c_minus[-n - 1] : n == 0 ? F.c_minus_zero : 0.0;
    CHECK(std::abs(e.c_plus - want_plus) < 1e-8);
    CHECK(std::abs(e.c_minus - want_minus) < 1e-8);
  }
  // width 2: f(tau / 2) has its coefficients on frequencies n / 2
  const Evaluator wide = [&](cplx tau) { return f(tau / 2.0); };
  const Extracted e = extract_coefficients(wide, -2, 2.0, 0.0, 3, 0.5, 1.0, 64);
  CHECK(std::abs(e.c_plus - F.c_plus[3]) < 1e-7);
  CHECK(std::abs(e.c_minus) < 1e-7);
}

TEST_CASE("extraction at (nearly) coincident heights is refused") {
  const FormExpansion F = FormExpansion::zero(-2, 1, trivial_character(1), 3);
  CHECK_THROWS_AS(extract_coefficients(evaluator(F), -2, 1.0, 0.0, 1, 0.7, 0.7 + 1e-12, 32), IllConditionedError);
  CHECK_THROWS_AS(extract_coefficients(evaluator(F), -2, 1.0, 0.0, 1, 0.7, 0.7, 32), DomainError);
}
