#pragma once

#include "hmf/specfun.hpp"

#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hmf {

using Rational = boost::rational<long long>;

// A Dirichlet character mod q, stored as an explicit value table.
//
// The unit group is split by CRT into prime-power parts; odd p^e contributes
// one primitive root, 2^e contributes -1 (e >= 2) and 5 (e >= 3). A character
// is the exponent vector a with chi(g_i) = exp(2 pi i a_i / ord_i).
struct DirichletCharacter {
  int modulus = 1;
  std::vector<long long> generators;
  std::vector<int> orders;
  std::vector<int> exponents;

  std::vector<cplx> values;                   // indexed by residue 0..q-1
  std::vector<std::optional<Rational>> phases; // exact arguments in [0,1); empty on non-units
  int conductor = 1;
  int parity = 1;
  bool primitive = true;

  cplx operator()(long long n) const;
  std::optional<Rational> phase(long long n) const;
  bool is_trivial() const;
  bool is_real() const;
  int order() const;
  std::string label() const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus == b.modulus && a.exponents == b.exponents;
  }
};

long long mod_floor(long long a, long long m);
long long euler_phi(long long n);

std::vector<DirichletCharacter> enumerate_characters(int q);
DirichletCharacter make_character(int q, const std::vector<int>& exponents);
DirichletCharacter trivial_character(int q);

int conductor(const DirichletCharacter& chi);
cplx gauss_sum(const DirichletCharacter& psi);

// chi(m) psi(-N) tau(psi) / tau(conj psi), m the modulus of psi.
cplx c_psi(const DirichletCharacter& chi, const DirichletCharacter& psi, int N);
// The same constant through chi(m) psi(N) tau(psi)^2 / m.
cplx c_psi_squared_form(const DirichletCharacter& chi, const DirichletCharacter& psi, int N);

DirichletCharacter conjugate(const DirichletCharacter& chi);

// The character mod M given by n -> chi1(n)^e1 * chi2(n)^e2; M must be a
// common multiple of both moduli.
DirichletCharacter product_character(const DirichletCharacter& chi1, int e1,
                                     const DirichletCharacter& chi2, int e2, int M);

// "triv", "quadratic", "#j" (index into enumerate_characters) or "a,b,..." (exponents).
DirichletCharacter character_from_label(int q, const std::string& label);

} // namespace hmf
