#include "hmf/eisenstein.hpp"

#include "hmf/errors.hpp"
#include "parallel.hpp"

#include <cmath>
#include <numeric>

namespace hmf {

namespace {

double as_double(const Rational& r) { return boost::rational_cast<double>(r); }

SeriesValue finish(cplx full, cplx half) {
  return {full, half, (4.0 * full - half) / 3.0, std::abs(full - half) / 3.0};
}

} // namespace

CosetSum make_coset_sum(int N, const DirichletCharacter& chi, int k, const Cusp& rho, int bound) {
  if (k >= 0) throw DomainError("weight must be a negative integer");
  if (N % chi.modulus) throw PreconditionError("character modulus must divide the level");
  if (chi.parity != (k % 2 == 0 ? 1 : -1))
    throw PreconditionError("character parity must match the weight: chi(-1) = (-1)^k");
  const auto ph = chi.phase(cusp_generator(rho).d.numerator());
  if (!ph || *ph != Rational(0))
    throw PreconditionError("character is not trivial on the stabiliser of cusp " + rho.repr());

  CosetSum sum;
  sum.level = N;
  sum.weight = k;
  sum.cusp = rho;
  sum.bound = bound;
  const RationalMatrix inv = rho.scaling.inverse();
  for (const auto& g : coset_reps(N, rho, bound)) {
    const RationalMatrix m = inv * g;
    const double c = as_double(m.c), d = as_double(m.d);
    const cplx w = std::conj(chi(g.d.numerator()));
    sum.rows.push_back({c, d, w, std::max(std::abs(c), std::abs(d)) <= bound / 2});
  }
  return sum;
}

cplx f_term(int k, double c, double d, cplx tau) {
  const cplx z = c * tau + d;
  const double v = tau.imag();
  return ipow(z, -k) * std::pow(std::norm(z), k - 1) * std::pow(v, 1 - k) / static_cast<double>(1 - k);
}

SeriesValue eisenstein_series(const CosetSum& sum, cplx tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("tau must lie in the upper half-plane");
  const int e = sum.weight - 2;
  cplx full = 0.0, half = 0.0;
  for (const auto& r : sum.rows) {
    const cplx t = r.weight * ipow(r.c * tau + r.d, e);
    full += t;
    if (r.inner) half += t;
  }
  return finish(full, half);
}

SeriesValue f_series(const CosetSum& sum, cplx tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("tau must lie in the upper half-plane");
  const int k = sum.weight;
  const double v = tau.imag();
  cplx full = 0.0, half = 0.0;
  for (const auto& r : sum.rows) {
    const cplx z = r.c * tau + r.d;
    const cplx t = r.weight * ipow(z, -k) * std::pow(std::norm(z), k - 1);
    full += t;
    if (r.inner) half += t;
  }
  const double scale = std::pow(v, 1 - k) / static_cast<double>(1 - k);
  return finish(full * scale, half * scale);
}

SeriesValue eisenstein_series(int N, const DirichletCharacter& chi, int k, const Cusp& rho, cplx tau, int bound) {
  return eisenstein_series(make_coset_sum(N, chi, k, rho, bound), tau);
}

SeriesValue f_series(int N, const DirichletCharacter& chi, int k, const Cusp& rho, cplx tau, int bound) {
  return f_series(make_coset_sum(N, chi, k, rho, bound), tau);
}

namespace {

struct HeightPair {
  double v0, v1;
};

HeightPair heights_for(int n, const ExpansionOptions& o) {
  if (n == 0 || !o.scale_heights) return {o.v0, o.v1};
  return {o.v0 / n, o.v1 / n};
}

FormExpansion expand(const Evaluator& f, int N, const DirichletCharacter& chi, int k,
                     const ExpansionOptions& o, ExpansionReport* report) {
  if (o.n_max < 0 || o.samples < 1) throw DomainError("expansion: bad options");
  FormExpansion F = FormExpansion::zero(k, N, chi, o.n_max);

  // all sample rows first (the expensive part), then the cheap solves
  const int rows = o.n_max + 1;
  std::vector<std::vector<cplx>> s0(rows, std::vector<cplx>(o.samples)), s1 = s0;
  detail::parallel_for(static_cast<std::size_t>(rows) * o.samples, [&](std::size_t idx) {
    const int n = static_cast<int>(idx / o.samples);
    const int j = static_cast<int>(idx % o.samples);
    const HeightPair h = heights_for(n, o);
    const double u = static_cast<double>(j) / o.samples;
    s0[n][j] = f(cplx(u, h.v0));
    s1[n][j] = f(cplx(u, h.v1));
  });

  double max_cond = 0.0;
  for (int n = 0; n <= o.n_max; ++n) {
    const HeightPair h = heights_for(n, o);
    const Extracted pos = extract_from_samples(s0[n], s1[n], k, 1.0, 0.0, n, h.v0, h.v1);
    max_cond = std::max(max_cond, pos.condition);
    if (n == 0) {
      F.c_plus[0] = pos.c_plus;
      F.c_minus_zero = pos.c_minus;
      continue;
    }
    F.c_plus[n] = pos.c_plus;
    const Extracted neg = extract_from_samples(s0[n], s1[n], k, 1.0, 0.0, -n, h.v0, h.v1);
    max_cond = std::max(max_cond, neg.condition);
    F.c_minus[n - 1] = neg.c_minus;
  }
  if (report) report->max_condition = max_cond;
  return F;
}

} // namespace

FormExpansion f_expansion(int N, const DirichletCharacter& chi, int k, const Cusp& rho,
                          const ExpansionOptions& opts, ExpansionReport* report) {
  const CosetSum sum = make_coset_sum(N, chi, k, rho, opts.bound);
  auto f = [&sum, &opts](cplx tau) {
    const SeriesValue s = f_series(sum, tau);
    return opts.extrapolate ? s.extrapolated : s.value;
  };
  FormExpansion F = expand(f, N, chi, k, opts, report);
  if (report) report->max_tail_estimate = f_series(sum, cplx(0.0, opts.v0)).tail_estimate;
  return F;
}

FormExpansion f_fricke_expansion(int N, const DirichletCharacter& chi, int k, const Cusp& rho,
                                 const ExpansionOptions& opts, ExpansionReport* report) {
  const CosetSum sum = make_coset_sum(N, chi, k, rho, opts.bound);
  const RationalMatrix w = fricke(N);
  auto f = [&sum, &opts, &w, k](cplx tau) {
    const SeriesValue s = f_series(sum, w.apply(tau));
    return slash_factor(k, w, tau) * (opts.extrapolate ? s.extrapolated : s.value);
  };
  FormExpansion G = expand(f, N, conjugate(chi), k, opts, report);
  if (report) report->max_tail_estimate = f_series(sum, w.apply(cplx(0.0, opts.v0))).tail_estimate;
  return G;
}

HolomorphicQExpansion eisenstein_expansion(int N, const DirichletCharacter& chi, int k, const Cusp& rho,
                                           const ExpansionOptions& opts) {
  const CosetSum sum = make_coset_sum(N, chi, k, rho, opts.bound);
  HolomorphicQExpansion E;
  E.weight = 2 - k;
  E.level = N;
  E.coefficients.assign(opts.n_max + 1, 0.0);
  detail::parallel_for(static_cast<std::size_t>(opts.n_max) + 1, [&](std::size_t idx) {
    const int n = static_cast<int>(idx);
    const double v = heights_for(n, opts).v0;
    auto f = [&sum, &opts](cplx tau) {
      const SeriesValue s = eisenstein_series(sum, tau);
      return opts.extrapolate ? s.extrapolated : s.value;
    };
    E.coefficients[n] = extract_holomorphic(f, 1.0, 0.0, n, v, opts.samples);
  });
  return E;
}

int dim_eisenstein(int N, const DirichletCharacter& chi) {
  if (N < 1) throw DomainError("level must be positive");
  const int m = chi.conductor;
  if (N % m) throw PreconditionError("character conductor must divide the level");
  int total = 0;
  for (int C = 1; C <= N; ++C) {
    if (N % C) continue;
    const int g = std::gcd(C, N / C);
    if ((N / m) % g) continue;
    total += static_cast<int>(euler_phi(g));
  }
  return total;
}

} // namespace hmf
