#pragma once

#include "hmf/characters.hpp"
#include "hmf/specfun.hpp"

#include <functional>
#include <vector>

namespace hmf {

using Evaluator = std::function<cplx(cplx)>;

// Truncated Fourier data of a harmonic Maass form of polynomial growth:
//
//   f = sum_{n>=0} c+(n) q^n + c-(0) v^{1-k} + sum_{n<0} c-(n) Gamma(1-k, -4 pi n v) q^n
//
// c_minus[j] holds c-(-(j+1)).
struct FormExpansion {
  int weight = -2;
  int level = 1;
  DirichletCharacter character;
  double alpha = 0.0;
  int n_max = 0;
  std::vector<cplx> c_plus;
  cplx c_minus_zero = 0.0;
  std::vector<cplx> c_minus;

  static FormExpansion zero(int k, int N, const DirichletCharacter& chi, int n_max);

  int nu() const { return 1 - weight; }
  cplx plus(int n) const { return n >= 0 && n <= n_max ? c_plus[n] : 0.0; }
  cplx minus(int n) const;  // n <= 0
  cplx& minus_ref(int n);   // n < 0
};

// Throws DomainError on weight >= 0, inconsistent sizes or non-finite data.
void validate(const FormExpansion& F);

// Largest |c(n)| / n^alpha over the stored n >= 1: the C in |c(n)| <= C n^alpha.
double growth_constant(const FormExpansion& F);

struct HolomorphicQExpansion {
  int weight = 0;
  int level = 1;
  std::vector<cplx> coefficients;

  cplx operator()(cplx tau) const;
};

struct Evaluation {
  cplx value;
  double tail_bound;
};

Evaluation evaluate(const FormExpansion& F, cplx tau);
cplx evaluate_value(const FormExpansion& F, cplx tau);
Evaluator evaluator(const FormExpansion& F);

struct Partials {
  cplx du;
  cplx dv;
};
Partials evaluate_partials(const FormExpansion& F, cplx tau);

cplx laplacian(const FormExpansion& F, cplx tau);
cplx raising(const FormExpansion& F, cplx tau);
cplx lowering(const FormExpansion& F, cplx tau);
// 2 i v^k conj(df/d tau-bar), straight from the partials
cplx xi_pointwise(const FormExpansion& F, cplx tau);

// H(tau) = 2 i v df/du + k f
cplx h_transform(const FormExpansion& F, cplx tau);
Evaluator h_evaluator(const FormExpansion& F);

HolomorphicQExpansion shadow(const FormExpansion& F);
HolomorphicQExpansion bol(const FormExpansion& F);

FormExpansion twist(const FormExpansion& F, const DirichletCharacter& psi);
FormExpansion scaled(const FormExpansion& F, cplx factor);

struct Extracted {
  cplx c_plus;
  cplx c_minus;
  double condition = 1.0;       // of the column-equilibrated 2x2 system
  double aliasing_bound = 0.0;
};

// Period integrals of f at heights v0 and v1 over [u0, u0 + t), trapezoid rule,
// then the 2x2 solve for (c+(n), c-(n)).
Extracted extract_coefficients(const Evaluator& f, int k, double t, double kappa, int n,
                               double v0, double v1, int samples, double u0 = 0.0);

// The same solve from precomputed samples f(u0 + t j/S + i v_h), j = 0..S-1.
Extracted extract_from_samples(const std::vector<cplx>& at_v0, const std::vector<cplx>& at_v1, int k,
                               double t, double kappa, int n, double v0, double v1, double u0 = 0.0);

// Single-height version for holomorphic q-expansions.
cplx extract_holomorphic(const Evaluator& f, double t, double kappa, int n, double v, int samples,
                         double u0 = 0.0);

} // namespace hmf
