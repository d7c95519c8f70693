#pragma once

#include "hmf/forms.hpp"

#include <map>

namespace hmf {

// Exact termwise representation
//
//   sum_n e^{2 pi i n u} e^{-2 pi |n| v} P_n(v),   P_n a Laurent polynomial in v,
//
// which is closed under d/du, d/dv, multiplication by v^j and complex
// conjugation. Every FormExpansion has this shape (integer weight makes the
// incomplete gamma factor a polynomial times an exponential), so operator
// compositions can be carried out without numerical differentiation.
class TermSeries {
public:
  using Poly = std::map<int, cplx>;

  static TermSeries from_form(const FormExpansion& F);
  static TermSeries from_qexpansion(const HolomorphicQExpansion& E);

  TermSeries d_u() const;
  TermSeries d_v() const;
  TermSeries times_v(int power) const;
  TermSeries scaled(cplx factor) const;
  TermSeries conj() const;

  TermSeries& operator+=(const TermSeries& other);
  friend TermSeries operator+(TermSeries a, const TermSeries& b) { return a += b; }
  friend TermSeries operator-(TermSeries a, const TermSeries& b) { return a += b.scaled(-1.0); }

  cplx operator()(cplx tau) const;

  const std::map<int, Poly>& terms() const { return terms_; }

private:
  std::map<int, Poly> terms_;
};

TermSeries raise(const TermSeries& f, int weight);    // R_w = 2i d/dtau + w/v
TermSeries lower(const TermSeries& f, int weight);    // L_w = -2i v^2 d/dtau-bar
TermSeries laplace(const TermSeries& f, int weight);  // Delta_w
TermSeries xi(const TermSeries& f, int weight);       // xi_w = 2i v^w conj(d/dtau-bar)
// R_{k + 2(count-1)} ... R_{k+2} R_k
TermSeries iterated_raise(const TermSeries& f, int weight, int count);

} // namespace hmf
