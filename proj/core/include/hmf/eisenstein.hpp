#pragma once

#include "hmf/characters.hpp"
#include "hmf/forms.hpp"
#include "hmf/modgroup.hpp"

#include <vector>

namespace hmf {

// Rows (c, d) of gamma_rho^{-1} g over the truncated coset list, with the
// weights conj(chi(g)). Built once and reused for every evaluation point.
struct CosetSum {
  int level = 1;
  int weight = -2;  // k of the harmonic lift; the Eisenstein series has weight 2-k
  Cusp cusp;
  int bound = 60;
  struct Row {
    double c, d;
    cplx weight;
    bool inner;  // max(|c|,|d|) <= bound/2
  };
  std::vector<Row> rows;
};

// Throws PreconditionError unless chi(-1) = (-1)^k and chi is trivial on Gamma_rho.
CosetSum make_coset_sum(int N, const DirichletCharacter& chi, int k, const Cusp& rho, int bound);

struct SeriesValue {
  cplx value;          // truncated at bound
  cplx value_half;     // truncated at bound/2
  cplx extrapolated;   // (4 value - value_half) / 3, the tail decays like bound^{-2}
  double tail_estimate;
};

// sum conj(chi(g)) j(gamma_rho^{-1} g, tau)^{k-2}
SeriesValue eisenstein_series(const CosetSum& sum, cplx tau);
// sum conj(chi(g)) (v^{1-k}/(1-k)) |_k gamma_rho^{-1} g
SeriesValue f_series(const CosetSum& sum, cplx tau);

SeriesValue eisenstein_series(int N, const DirichletCharacter& chi, int k, const Cusp& rho, cplx tau,
                              int bound = 60);
SeriesValue f_series(int N, const DirichletCharacter& chi, int k, const Cusp& rho, cplx tau, int bound = 60);

// Single term (v^{1-k}/(1-k)) |_k M for M with bottom row (c, d).
cplx f_term(int k, double c, double d, cplx tau);

struct ExpansionOptions {
  int n_max = 40;
  int bound = 60;
  double v0 = 1.0;
  double v1 = 2.0;
  int samples = 256;
  bool scale_heights = true;  // use v/|n| for |n| >= 1
  bool extrapolate = true;    // extract from the bound/(bound/2) extrapolated value
};

struct ExpansionReport {
  double max_condition = 0.0;
  double max_tail_estimate = 0.0;
};

// Expansion at infinity of F_{k,rho}(N, chi).
FormExpansion f_expansion(int N, const DirichletCharacter& chi, int k, const Cusp& rho,
                          const ExpansionOptions& opts = {}, ExpansionReport* report = nullptr);

// Expansion at infinity of F_{k,rho}(N, chi) |_k omega(N), extracted from the
// pointwise slash of the coset sum. Its character is conj(chi).
FormExpansion f_fricke_expansion(int N, const DirichletCharacter& chi, int k, const Cusp& rho,
                                 const ExpansionOptions& opts = {}, ExpansionReport* report = nullptr);

// q-expansion at infinity of E_{2-k,rho}(N, chi).
HolomorphicQExpansion eisenstein_expansion(int N, const DirichletCharacter& chi, int k, const Cusp& rho,
                                           const ExpansionOptions& opts = {});

// sum over C | N with gcd(C, N/C) | N/m_chi of phi(gcd(C, N/C))
int dim_eisenstein(int N, const DirichletCharacter& chi);

} // namespace hmf
