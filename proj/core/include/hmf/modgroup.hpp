#pragma once

#include "hmf/characters.hpp"
#include "hmf/specfun.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hmf {

// 2x2 matrix with exact rational entries and positive determinant.
class RationalMatrix {
public:
  Rational a, b, c, d;

  RationalMatrix() : a(1), b(0), c(0), d(1) {}
  RationalMatrix(Rational a, Rational b, Rational c, Rational d);  // throws unless det > 0

  static RationalMatrix identity() { return {}; }
  // Skips the determinant check; for internal products that are known to be fine.
  static RationalMatrix unchecked(Rational a, Rational b, Rational c, Rational d);

  Rational det() const { return a * d - b * c; }
  bool is_integral() const;
  bool in_sl2z() const;
  RationalMatrix inverse() const;   // scaled so that det stays positive: adj / det
  RationalMatrix adjugate() const;  // [[d,-b],[-c,a]]
  RationalMatrix operator-() const { return unchecked(-a, -b, -c, -d); }
  cplx apply(cplx tau) const;       // Moebius action

  friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y);
  friend bool operator==(const RationalMatrix& x, const RationalMatrix& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

bool in_gamma0(const RationalMatrix& g, int N);

// integer power of a complex number by repeated squaring
cplx ipow(cplx z, int n);

// (det g)^{k/2} (c tau + d)^{-k} f(g tau)
cplx slash(const std::function<cplx(cplx)>& f, int k, const RationalMatrix& g, cplx tau);
// the automorphy factor alone, so callers can slash values they already have
cplx slash_factor(int k, const RationalMatrix& g, cplx tau);

RationalMatrix fricke(int N);
RationalMatrix translation(Rational h);

struct Cusp {
  long long a = 1;  // representative a/c; c == 0 means infinity
  long long c = 0;
  RationalMatrix scaling;  // gamma_rho, integral with det 1, gamma_rho(inf) = a/c
  int width = 1;
  Rational kappa{0};       // depends on the character the cusp was built with

  bool is_infinity() const { return c == 0; }
  std::string repr() const;
};

std::vector<Cusp> cusps(int N);
std::vector<Cusp> cusps(int N, const DirichletCharacter& chi);

int cusp_width(int N, const Cusp& rho);
Rational cusp_parameter(int N, const DirichletCharacter& chi, const Cusp& rho);
// g_rho = gamma_rho T^{t_rho} gamma_rho^{-1}
RationalMatrix cusp_generator(const Cusp& rho);

// Gamma_0(N)-equivalence of a1/c1 and a2/c2 (c = 0 for infinity).
bool cusps_equivalent(int N, long long a1, long long c1, long long a2, long long c2);

// "inf", "0", "a/c"; the result is the canonical representative of its class.
Cusp parse_cusp(int N, const std::string& text, const DirichletCharacter& chi);
Cusp parse_cusp(int N, const std::string& text);

// One g per coset of Gamma_rho \ Gamma_0(N) whose row (c, d) of gamma_rho^{-1} g
// has max(|c|,|d|) <= bound. Sorted by that max, then by c, then by d.
std::vector<RationalMatrix> coset_reps(int N, const Cusp& rho, int bound);

struct Decomposition {
  RationalMatrix gamma;  // in SL2(Z)
  RationalMatrix upper;  // [[a, b], [0, d]], a, d >= 1
};
Decomposition upper_triangular_decompose(const RationalMatrix& M);

long long ext_gcd(long long a, long long b, long long& x, long long& y);

} // namespace hmf
