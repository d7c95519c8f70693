#include "hmf/termseries.hpp"

#include <cmath>
#include <cstdlib>

namespace hmf {

namespace {

void add_to(TermSeries::Poly& p, int power, cplx c) {
  if (c == 0.0) return;
  p[power] += c;
}

} // namespace

TermSeries TermSeries::from_form(const FormExpansion& F) {
  TermSeries s;
  for (int n = 0; n <= F.n_max; ++n) add_to(s.terms_[n], 0, F.c_plus[n]);
  add_to(s.terms_[0], F.nu(), F.c_minus_zero);
  // Gamma(nu, 4 pi m v) e^{2 pi m v} = (nu-1)! e^{-2 pi m v} sum_l (4 pi m v)^l / l!
  double fact = 1.0;
  for (int i = 2; i < F.nu(); ++i) fact *= i;
  for (int m = 1; m <= F.n_max; ++m) {
    const cplx c = F.c_minus[m - 1];
    if (c == 0.0) continue;
    double coeff = fact;
    for (int l = 0; l < F.nu(); ++l) {
      add_to(s.terms_[-m], l, c * coeff);
      coeff *= 4.0 * kPi * m / (l + 1);
    }
  }
  return s;
}

TermSeries TermSeries::from_qexpansion(const HolomorphicQExpansion& E) {
  TermSeries s;
  for (std::size_t n = 0; n < E.coefficients.size(); ++n)
    add_to(s.terms_[static_cast<int>(n)], 0, E.coefficients[n]);
  return s;
}

TermSeries TermSeries::d_u() const {
  TermSeries out;
  for (const auto& [n, poly] : terms_) {
    if (n == 0) continue;
    auto& dst = out.terms_[n];
    for (const auto& [j, c] : poly) add_to(dst, j, c * cplx(0.0, 2.0 * kPi * n));
  }
  return out;
}

TermSeries TermSeries::d_v() const {
  TermSeries out;
  for (const auto& [n, poly] : terms_) {
    auto& dst = out.terms_[n];
    const double decay = 2.0 * kPi * std::abs(n);
    for (const auto& [j, c] : poly) {
      if (j != 0) add_to(dst, j - 1, c * static_cast<double>(j));
      add_to(dst, j, -decay * c);
    }
  }
  return out;
}

TermSeries TermSeries::times_v(int power) const {
  TermSeries out;
  for (const auto& [n, poly] : terms_) {
    auto& dst = out.terms_[n];
    for (const auto& [j, c] : poly) dst[j + power] = c;
  }
  return out;
}

TermSeries TermSeries::scaled(cplx factor) const {
  TermSeries out;
  for (const auto& [n, poly] : terms_) {
    auto& dst = out.terms_[n];
    for (const auto& [j, c] : poly) add_to(dst, j, c * factor);
  }
  return out;
}

TermSeries TermSeries::conj() const {
  TermSeries out;
  for (const auto& [n, poly] : terms_) {
    auto& dst = out.terms_[-n];
    for (const auto& [j, c] : poly) dst[j] = std::conj(c);
  }
  return out;
}

TermSeries& TermSeries::operator+=(const TermSeries& other) {
  for (const auto& [n, poly] : other.terms_) {
    auto& dst = terms_[n];
    for (const auto& [j, c] : poly) add_to(dst, j, c);
  }
  return *this;
}

cplx TermSeries::operator()(cplx tau) const {
  const double u = tau.real(), v = tau.imag();
  cplx total = 0.0;
  for (const auto& [n, poly] : terms_) {
    if (poly.empty()) continue;
    cplx p = 0.0;
    for (const auto& [j, c] : poly) p += c * std::pow(v, j);
    total += p * std::polar(std::exp(-2.0 * kPi * std::abs(n) * v), 2.0 * kPi * n * u);
  }
  return total;
}

TermSeries raise(const TermSeries& f, int weight) {
  return f.d_u().scaled(cplx(0.0, 1.0)) + f.d_v() + f.times_v(-1).scaled(weight);
}

TermSeries lower(const TermSeries& f, int weight) {
  (void)weight;  // L_w does not depend on w
  return (f.d_u().scaled(cplx(0.0, -1.0)) + f.d_v()).times_v(2);
}

TermSeries laplace(const TermSeries& f, int weight) {
  const TermSeries fu = f.d_u(), fv = f.d_v();
  const TermSeries second = (fu.d_u() + fv.d_v()).times_v(2).scaled(-1.0);
  const TermSeries first = (fu + fv.scaled(cplx(0.0, 1.0))).times_v(1).scaled(cplx(0.0, weight));
  return second + first;
}

TermSeries xi(const TermSeries& f, int weight) {
  const TermSeries c = f.conj();
  return (c.d_u().scaled(cplx(0.0, 1.0)) + c.d_v()).times_v(weight);
}

TermSeries iterated_raise(const TermSeries& f, int weight, int count) {
  TermSeries g = f;
  for (int i = 0; i < count; ++i) g = raise(g, weight + 2 * i);
  return g;
}

} // namespace hmf
