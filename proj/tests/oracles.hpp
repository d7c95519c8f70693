#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = 3.14159265358979323846;

inline double sigma(int r, long n) {
  double s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += std::pow(double(d), r);
  return s;
}

// F_{-2,inf} at level 1:  c-(0) = 1/3,  c-(-n) = -240 sigma_3(n) / ((4 pi)^3 n^3),
// c+(n) = 2 c-(-n) for n >= 1,  c+(0) = -(pi/12) zeta(3)/zeta(4).
struct LevelOneWeightMinusTwo {
  static double c_minus_zero() { return 1.0 / 3.0; }
  static double c_minus(int n) { return -240.0 * sigma(3, n) / (std::pow(4 * pi, 3) * std::pow(n, 3)); }
  static double c_plus(int n) {
    if (n == 0) return -(pi / 12.0) * boost::math::zeta(3.0) / boost::math::zeta(4.0);
    return 2.0 * c_minus(n);
  }
  static double e4(int n) { return n == 0 ? 1.0 : 240.0 * sigma(3, n); }
};

inline double upper_gamma(int nu, double x) { return boost::math::tgamma(double(nu), x); }

// int_0^inf Gamma(nu, 2x) e^x x^{s-1} dx along the ray x = r e^{i theta}, split at r = 1,
// with r = e^{-y} on (0, 1]. Tilting the ray against the sign of Im s removes the
// cancellation that makes the real-axis integral lose relative accuracy when |Im s| is large.
// Off the axis Gamma(nu, z) = (nu-1)! e^{-z} sum_{l<nu} z^l / l!.
inline cplx w_integral(int nu, cplx s, double theta) {
  using boost::math::quadrature::gauss_kronrod;
  const cplx rot = std::polar(1.0, theta);
  auto kernel = [&](double r) -> cplx {
    if (theta == 0.0) return boost::math::tgamma(double(nu), 2 * r) * std::exp(r);
    const cplx x = r * rot;
    cplx poly = 0, term = 1;
    for (int l = 0; l < nu; ++l) {
      poly += term;
      term *= 2.0 * x / double(l + 1);
    }
    return boost::math::factorial<double>(nu - 1) * std::exp(-x) * poly;
  };
  auto integrand = [&](double r) { return kernel(r) * std::exp((s - 1.0) * std::log(r * rot)) * rot; };
  auto part = [&](bool imag) {
    auto pick = [imag](cplx v) { return imag ? v.imag() : v.real(); };
    double low = 0;
    for (double a = 0; a < 60; a += 2) {
      low += gauss_kronrod<double, 61>::integrate(
          [&](double y) {
            const double r = std::exp(-y);
            return pick(integrand(r)) * r;
          },
          a, a + 2, 0, 1e-14);
    }
    boost::math::quadrature::exp_sinh<double> es;
    const double high = es.integrate(
        [&](double t) {
          const double r = 1 + t;
          return r > 300 ? 0.0 : pick(integrand(r));
        },
        1e-14);
    return low + high;
  };
  return {part(false), part(true)};
}

inline cplx w_integral(int nu, cplx s) {
  const double theta = s.imag() > 1 ? 1.2 : s.imag() < -1 ? -1.2 : 0.0;
  return w_integral(nu, s, theta);
}

// Is there gamma = [[a,b],[c,d]] in Gamma_0(N) with gamma(a1/c1) = a2/c2?  Cusps are
// primitive pairs, infinity is (1, 0). gamma (a1, c1)^T = lambda (a2, c2)^T with
// lambda = +-1; for each c = N j, |j| <= J, the second row fixes d and Cramer's rule
// fixes (a, b).
inline bool cusp_equivalent_bruteforce(int N, long a1, long c1, long a2, long c2, long J = 200) {
  if (c1 == 0 && c2 == 0) return true;
  if (c1 == 0) {
    std::swap(a1, a2);
    std::swap(c1, c2);
  }
  // gamma(a1/c1) = infinity forces the bottom row to be +-(c1, -a1)
  if (c2 == 0) return c1 % N == 0;
  for (long j = -J; j <= J; ++j) {
    const long c = N * j;
    for (long lambda : {1L, -1L}) {
      const long num = lambda * c2 - c * a1;
      if (num % c1) continue;
      const long d = num / c1;
      const long det = lambda * c2;  // d c1 + c a1
      if (det == 0) continue;
      const long an = c1 + c * lambda * a2, bn = d * lambda * a2 - a1;
      if (an % det || bn % det) continue;
      const long a = an / det, b = bn / det;
      if (a * d - b * c == 1) return true;
    }
  }
  return false;
}

// Number of Gamma_0(N)-classes of P^1(Q), from representatives a/c with c | N.
inline int cusp_count_bruteforce(int N) {
  std::vector<std::pair<long, long>> reps;
  for (long c = 1; c <= N; ++c) {
    if (N % c) continue;
    for (long a = 0; a < N; ++a) {
      if (std::gcd(a, c) != 1) continue;
      bool seen = false;
      for (auto [x, y] : reps) {
        if (cusp_equivalent_bruteforce(N, a, c, x, y)) {
          seen = true;
          break;
        }
      }
      if (!seen) reps.emplace_back(a, c);
    }
  }
  return int(reps.size());
}

// fourth-order central differences in u and v
struct Stencil {
  double h = 1e-3;

  cplx du(const std::function<cplx(cplx)>& f, cplx t) const {
    const cplx e(h, 0);
    return (-f(t + 2.0 * e) + 8.0 * f(t + e) - 8.0 * f(t - e) + f(t - 2.0 * e)) / (12.0 * h);
  }
  cplx dv(const std::function<cplx(cplx)>& f, cplx t) const {
    const cplx e(0, h);
    return (-f(t + 2.0 * e) + 8.0 * f(t + e) - 8.0 * f(t - e) + f(t - 2.0 * e)) / (12.0 * h);
  }
  cplx duu(const std::function<cplx(cplx)>& f, cplx t) const {
    const cplx e(h, 0);
    return (-f(t + 2.0 * e) + 16.0 * f(t + e) - 30.0 * f(t) + 16.0 * f(t - e) - f(t - 2.0 * e)) / (12.0 * h * h);
  }
  cplx dvv(const std::function<cplx(cplx)>& f, cplx t) const {
    const cplx e(0, h);
    return (-f(t + 2.0 * e) + 16.0 * f(t + e) - 30.0 * f(t) + 16.0 * f(t - e) - f(t - 2.0 * e)) / (12.0 * h * h);
  }
};

// Direct term-by-term evaluation of a weight-k expansion, no shared code with the library.
inline cplx direct_sum(int k, const std::vector<cplx>& cp, cplx cm0, const std::vector<cplx>& cm, cplx tau) {
  const int nu = 1 - k;
  const double u = tau.real(), v = tau.imag();
  cplx acc = cm0 * std::pow(v, nu);
  for (std::size_t n = 0; n < cp.size(); ++n) acc += cp[n] * std::exp(cplx(0, 2 * pi * n) * tau);
  for (std::size_t j = 0; j < cm.size(); ++j) {
    const double m = double(j + 1);
    const double x = 4 * pi * m * v;
    double g;
    if (nu >= 1) {
      // Gamma(nu, x) = (nu-1)! e^{-x} sum_{j<nu} x^j / j!
      double term = 1, sum = 0;
      for (int i = 0; i < nu; ++i) {
        sum += term;
        term *= x / (i + 1);
      }
      g = boost::math::factorial<double>(nu - 1) * sum * std::exp(-x / 2);
    } else {
      g = boost::math::tgamma(double(nu), x) * std::exp(x / 2);
    }
    acc += cm[j] * g * std::exp(cplx(0, -2 * pi * m * u));
  }
  return acc;
}

} // namespace oracle
