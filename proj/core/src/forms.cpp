#include "hmf/forms.hpp"

#include "hmf/errors.hpp"
#include "hmf/termseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hmf {

FormExpansion FormExpansion::zero(int k, int N, const DirichletCharacter& chi, int n_max) {
  FormExpansion F;
  F.weight = k;
  F.level = N;
  F.character = chi;
  F.n_max = n_max;
  F.c_plus.assign(n_max + 1, 0.0);
  F.c_minus.assign(n_max, 0.0);
  return F;
}

cplx FormExpansion::minus(int n) const {
  if (n == 0) return c_minus_zero;
  if (n < 0 && -n <= n_max) return c_minus[-n - 1];
  return 0.0;
}

cplx& FormExpansion::minus_ref(int n) {
  if (n >= 0 || -n > n_max) throw DomainError("coefficient index out of range");
  return c_minus[-n - 1];
}

void validate(const FormExpansion& F) {
  if (F.weight >= 0) throw DomainError("weight must be a negative integer");
  if (F.level < 1) throw DomainError("level must be positive");
  if (F.n_max < 0) throw DomainError("n_max must be non-negative");
  if (static_cast<int>(F.c_plus.size()) != F.n_max + 1 || static_cast<int>(F.c_minus.size()) != F.n_max)
    throw DomainError("coefficient arrays do not match n_max");
  if (!(F.alpha >= 0.0)) throw DomainError("growth exponent must be >= 0");
  if (F.level % F.character.modulus != 0) throw DomainError("character modulus must divide the level");
  auto finite = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  if (!std::all_of(F.c_plus.begin(), F.c_plus.end(), finite) ||
      !std::all_of(F.c_minus.begin(), F.c_minus.end(), finite) || !finite(F.c_minus_zero))
    throw DomainError("non-finite coefficient");
}

double growth_constant(const FormExpansion& F) {
  double C = 0.0;
  for (int n = 1; n <= F.n_max; ++n) {
    const double s = std::pow(n, F.alpha);
    C = std::max({C, std::abs(F.c_plus[n]) / s, std::abs(F.c_minus[n - 1]) / s});
  }
  return C;
}

cplx HolomorphicQExpansion::operator()(cplx tau) const {
  const cplx q = std::exp(cplx(0.0, 2.0 * kPi) * tau);
  cplx total = 0.0, qn = 1.0;
  for (const cplx& c : coefficients) {
    total += c * qn;
    qn *= q;
  }
  return total;
}

namespace {

void require_upper(cplx tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("tau must lie in the upper half-plane");
}

// Gamma(nu, 4 pi m v) e^{2 pi m v}, i.e. the v-part of the n = -m term
double nonhol_profile(int nu, int m, double v) {
  return inc_gamma_scaled(nu, 4.0 * kPi * m * v, 2.0 * kPi * m * v);
}

double nonhol_profile_dv(int nu, int m, double v) {
  const double a = 4.0 * kPi * m;
  return -a * std::pow(a * v, nu - 1) * std::exp(-2.0 * kPi * m * v) + 2.0 * kPi * m * nonhol_profile(nu, m, v);
}

double tail_estimate(const FormExpansion& F, double v) {
  const double C = growth_constant(F);
  if (C == 0.0) return 0.0;
  double tail = 0.0;
  for (int n = F.n_max + 1; n < F.n_max + 100000; ++n) {
    const double term = C * std::pow(n, F.alpha) * (std::exp(-2.0 * kPi * n * v) + nonhol_profile(F.nu(), n, v));
    tail += term;
    if (term < 1e-18 * std::max(tail, 1e-300)) break;
  }
  return tail;
}

} // namespace

cplx evaluate_value(const FormExpansion& F, cplx tau) {
  require_upper(tau);
  const double u = tau.real(), v = tau.imag();
  const cplx q = std::exp(cplx(0.0, 2.0 * kPi) * tau);
  cplx total = 0.0, qn = 1.0;
  for (int n = 0; n <= F.n_max; ++n) {
    total += F.c_plus[n] * qn;
    qn *= q;
  }
  if (F.c_minus_zero != 0.0) total += F.c_minus_zero * std::pow(v, F.nu());
  for (int m = 1; m <= F.n_max; ++m) {
    const cplx c = F.c_minus[m - 1];
    if (c == 0.0) continue;
    total += c * nonhol_profile(F.nu(), m, v) * std::polar(1.0, -2.0 * kPi * m * u);
  }
  return total;
}

Evaluation evaluate(const FormExpansion& F, cplx tau) {
  return {evaluate_value(F, tau), tail_estimate(F, tau.imag())};
}

Evaluator evaluator(const FormExpansion& F) {
  return [F](cplx tau) { return evaluate_value(F, tau); };
}

Partials evaluate_partials(const FormExpansion& F, cplx tau) {
  require_upper(tau);
  const double u = tau.real(), v = tau.imag();
  const cplx q = std::exp(cplx(0.0, 2.0 * kPi) * tau);
  Partials p{0.0, 0.0};
  cplx qn = q;
  for (int n = 1; n <= F.n_max; ++n) {
    const cplx t = F.c_plus[n] * qn;
    p.du += cplx(0.0, 2.0 * kPi * n) * t;
    p.dv += -2.0 * kPi * n * t;
    qn *= q;
  }
  if (F.c_minus_zero != 0.0) p.dv += F.c_minus_zero * static_cast<double>(F.nu()) * std::pow(v, F.nu() - 1);
  for (int m = 1; m <= F.n_max; ++m) {
    const cplx c = F.c_minus[m - 1];
    if (c == 0.0) continue;
    const cplx phase = std::polar(1.0, -2.0 * kPi * m * u);
    p.du += cplx(0.0, -2.0 * kPi * m) * c * nonhol_profile(F.nu(), m, v) * phase;
    p.dv += c * nonhol_profile_dv(F.nu(), m, v) * phase;
  }
  return p;
}

cplx laplacian(const FormExpansion& F, cplx tau) {
  require_upper(tau);
  return laplace(TermSeries::from_form(F), F.weight)(tau);
}

cplx raising(const FormExpansion& F, cplx tau) {
  const Partials p = evaluate_partials(F, tau);
  return cplx(0.0, 1.0) * p.du + p.dv + static_cast<double>(F.weight) / tau.imag() * evaluate_value(F, tau);
}

cplx lowering(const FormExpansion& F, cplx tau) {
  const Partials p = evaluate_partials(F, tau);
  const double v = tau.imag();
  return cplx(0.0, -1.0) * v * v * (p.du + cplx(0.0, 1.0) * p.dv);
}

cplx xi_pointwise(const FormExpansion& F, cplx tau) {
  const Partials p = evaluate_partials(F, tau);
  return cplx(0.0, 1.0) * std::pow(tau.imag(), F.weight) * std::conj(p.du + cplx(0.0, 1.0) * p.dv);
}

cplx h_transform(const FormExpansion& F, cplx tau) {
  const Partials p = evaluate_partials(F, tau);
  return cplx(0.0, 2.0 * tau.imag()) * p.du + static_cast<double>(F.weight) * evaluate_value(F, tau);
}

Evaluator h_evaluator(const FormExpansion& F) {
  return [F](cplx tau) { return h_transform(F, tau); };
}

HolomorphicQExpansion shadow(const FormExpansion& F) {
  HolomorphicQExpansion E;
  E.weight = 2 - F.weight;
  E.level = F.level;
  E.coefficients.assign(F.n_max + 1, 0.0);
  const int nu = F.nu();
  E.coefficients[0] = static_cast<double>(nu) * std::conj(F.c_minus_zero);
  const double scale = std::pow(4.0 * kPi, nu);
  for (int n = 1; n <= F.n_max; ++n)
    E.coefficients[n] = -scale * std::conj(F.c_minus[n - 1]) * std::pow(n, nu);
  return E;
}

HolomorphicQExpansion bol(const FormExpansion& F) {
  HolomorphicQExpansion E;
  E.weight = 2 - F.weight;
  E.level = F.level;
  E.coefficients.assign(F.n_max + 1, 0.0);
  const int nu = F.nu();
  double fact = 1.0;
  for (int i = 2; i <= nu; ++i) fact *= i;
  // D^nu v^nu = nu! (-4 pi)^{-nu}
  const double sign = nu % 2 == 0 ? 1.0 : -1.0;
  E.coefficients[0] = sign * std::pow(4.0 * kPi, F.weight - 1) * fact * F.c_minus_zero;
  for (int n = 1; n <= F.n_max; ++n) E.coefficients[n] = F.c_plus[n] * std::pow(n, nu);
  return E;
}

FormExpansion twist(const FormExpansion& F, const DirichletCharacter& psi) {
  if (!psi.primitive) throw PreconditionError("twist: character must be primitive");
  const long long m = psi.modulus;
  const long long mchi = F.character.conductor;
  const long long M = std::lcm(std::lcm(static_cast<long long>(F.level), m * m), m * mchi);
  FormExpansion out = F;
  out.level = static_cast<int>(M);
  out.character = product_character(F.character, 1, psi, 2, static_cast<int>(M));
  for (int n = 0; n <= F.n_max; ++n) out.c_plus[n] = psi(n) * F.c_plus[n];
  out.c_minus_zero = psi(0) * F.c_minus_zero;
  for (int j = 1; j <= F.n_max; ++j) out.c_minus[j - 1] = psi(j) * F.c_minus[j - 1];
  return out;
}

FormExpansion scaled(const FormExpansion& F, cplx factor) {
  FormExpansion out = F;
  for (auto& c : out.c_plus) c *= factor;
  for (auto& c : out.c_minus) c *= factor;
  out.c_minus_zero *= factor;
  return out;
}

namespace {

std::vector<cplx> sample_row(const Evaluator& f, double t, double v, int samples, double u0) {
  std::vector<cplx> out(samples);
  for (int j = 0; j < samples; ++j) out[j] = f(cplx(u0 + t * j / samples, v));
  return out;
}

cplx period_mean(const std::vector<cplx>& vals, double t, double freq, double u0) {
  const int S = static_cast<int>(vals.size());
  cplx acc = 0.0;
  for (int j = 0; j < S; ++j) acc += vals[j] * std::polar(1.0, -2.0 * kPi * freq * (u0 + t * j / S));
  return acc / static_cast<double>(S);
}

double cond2(double a, double b, double c, double d) {
  // singular values of [[a,b],[c,d]]
  const double s = a * a + b * b + c * c + d * d;
  const double det = std::abs(a * d - b * c);
  const double disc = std::sqrt(std::max(0.0, s * s - 4.0 * det * det));
  const double smax = std::sqrt(0.5 * (s + disc));
  const double smin = det / smax;
  return smin > 0.0 ? smax / smin : INFINITY;
}

} // namespace

Extracted extract_from_samples(const std::vector<cplx>& at_v0, const std::vector<cplx>& at_v1, int k,
                               double t, double kappa, int n, double v0, double v1, double u0) {
  if (k >= 0) throw DomainError("extract_coefficients: weight must be negative");
  if (!(t > 0.0)) throw DomainError("extract_coefficients: width must be positive");
  if (!(v0 > 0.0) || !(v1 > 0.0)) throw DomainError("extract_coefficients: heights must be positive");
  if (v0 == v1) throw DomainError("extract_coefficients: heights must differ");
  if (at_v0.empty() || at_v0.size() != at_v1.size())
    throw DomainError("extract_coefficients: need matching non-empty sample rows");

  const int nu = 1 - k;
  const double freq = (n + kappa) / t;
  const cplx J0 = period_mean(at_v0, t, freq, u0);
  const cplx J1 = period_mean(at_v1, t, freq, u0);

  // J(v) = c+ a(v) + c- b(v); G = b / a is the incomplete gamma value of the period formula
  double a0, a1, b0, b1;
  if (freq == 0.0) {
    a0 = a1 = 1.0;
    b0 = std::pow(v0, nu);
    b1 = std::pow(v1, nu);
  } else {
    a0 = std::exp(-2.0 * kPi * freq * v0);
    a1 = std::exp(-2.0 * kPi * freq * v1);
    b0 = inc_gamma_scaled(nu, -4.0 * kPi * freq * v0, -2.0 * kPi * freq * v0);
    b1 = inc_gamma_scaled(nu, -4.0 * kPi * freq * v1, -2.0 * kPi * freq * v1);
  }
  if (!std::isfinite(a0 * a1 * b0 * b1))
    throw DomainError("extract_coefficients: heights too large for this frequency");

  const double G0 = b0 / a0, G1 = b1 / a1;
  const double separation = std::abs(G0 - G1) / std::max(std::abs(G0), std::abs(G1));
  if (!(separation >= 1e-8))
    throw IllConditionedError("extract_coefficients: the two heights give indistinguishable incomplete gamma values",
                              separation);

  const double det = a0 * b1 - a1 * b0;
  Extracted out;
  out.c_plus = (J0 * b1 - J1 * b0) / det;
  out.c_minus = (a0 * J1 - a1 * J0) / det;
  const double s1 = std::max(std::abs(a0), std::abs(a1)), s2 = std::max(std::abs(b0), std::abs(b1));
  out.condition = cond2(a0 / s1, b0 / s2, a1 / s1, b1 / s2);

  double max_abs = 0.0;
  for (const auto& z : at_v0) max_abs = std::max(max_abs, std::abs(z));
  for (const auto& z : at_v1) max_abs = std::max(max_abs, std::abs(z));
  const int S = static_cast<int>(at_v0.size());
  // the nearest aliased frequency sits S/t away
  out.aliasing_bound = max_abs * std::exp(-2.0 * kPi * (S - std::abs(n + kappa)) * std::min(v0, v1) / t) /
                       std::min(std::abs(a0), std::abs(a1));
  return out;
}

Extracted extract_coefficients(const Evaluator& f, int k, double t, double kappa, int n, double v0,
                               double v1, int samples, double u0) {
  if (samples < 1) throw DomainError("extract_coefficients: need at least one sample");
  if (!(v0 > 0.0) || !(v1 > 0.0)) throw DomainError("extract_coefficients: heights must be positive");
  if (!(t > 0.0)) throw DomainError("extract_coefficients: width must be positive");
  return extract_from_samples(sample_row(f, t, v0, samples, u0), sample_row(f, t, v1, samples, u0), k, t,
                              kappa, n, v0, v1, u0);
}

cplx extract_holomorphic(const Evaluator& f, double t, double kappa, int n, double v, int samples, double u0) {
  if (!(t > 0.0) || !(v > 0.0) || samples < 1) throw DomainError("extract_holomorphic: bad arguments");
  const double freq = (n + kappa) / t;
  return period_mean(sample_row(f, t, v, samples, u0), t, freq, u0) * std::exp(2.0 * kPi * freq * v);
}

} // namespace hmf
