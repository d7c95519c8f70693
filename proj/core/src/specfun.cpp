#include "hmf/specfun.hpp"

#include "hmf/errors.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <array>
#include <cmath>
#include <map>
#include <mutex>

namespace hmf {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

} // namespace

cplx gamma_complex(cplx s) {
  if (is_nonpositive_integer(s))
    throw PoleError("gamma_complex: pole at non-positive integer " + std::to_string(s.real()));
  if (s.real() < 0.5) {
    return kPi / (std::sin(kPi * s) * gamma_complex(1.0 - s));
  }
  // exact factorials on the positive integers keep Gamma(n+1) = n! bit-stable
  if (s.imag() == 0.0 && s.real() == std::floor(s.real()) && s.real() <= 171.0) {
    return factorial(static_cast<int>(s.real()) - 1);
  }
  const cplx z = s - 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

double inc_gamma(int nu, double x) {
  if (nu < 1) throw DomainError("inc_gamma: order must be a positive integer");
  if (!(x >= 0.0)) throw DomainError("inc_gamma: argument must be >= 0");
  return inc_gamma_scaled(nu, x, 0.0);
}

double inc_gamma_scaled(int nu, double x, double shift) {
  if (nu < 1) throw DomainError("inc_gamma: order must be a positive integer");
  double term = 1.0, sum = 1.0;
  for (int l = 1; l < nu; ++l) {
    term *= x / l;
    sum += term;
  }
  return factorial(nu - 1) * std::exp(shift - x) * sum;
}

cplx w_nu(int nu, cplx s) {
  if (nu < 1) throw DomainError("w_nu: order must be a positive integer");
  if (!(s.real() > 0.0)) throw DomainError("w_nu: requires Re(s) > 0");
  // Gamma(s+l) = Gamma(s) (s)_l, so one gamma evaluation suffices
  const cplx g = gamma_complex(s);
  cplx poch = 1.0, sum = 0.0;
  double coeff = 1.0;  // 2^l / l!
  for (int l = 0; l < nu; ++l) {
    sum += coeff * poch;
    poch *= s + static_cast<double>(l);
    coeff *= 2.0 / (l + 1);
  }
  return factorial(nu - 1) * g * sum;
}

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre rule;
  const auto zeros = boost::math::legendre_p_zeros<double>(n);  // non-negative half
  auto weight = [n](double x) {
    const double dp = boost::math::legendre_p_prime(n, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto z = zeros.rbegin(); z != zeros.rend(); ++z) {
    if (*z == 0.0) continue;
    rule.nodes.push_back(-*z);
    rule.weights.push_back(weight(*z));
  }
  if (n % 2 == 1) {
    rule.nodes.push_back(0.0);
    rule.weights.push_back(weight(0.0));
  }
  for (double z : zeros) {
    if (z == 0.0) continue;
    rule.nodes.push_back(z);
    rule.weights.push_back(weight(z));
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

cplx panel_sum(const std::function<cplx(cplx)>& f, double sigma, double H, int nodes) {
  const auto& gl = gauss_legendre(nodes);
  const int panels = static_cast<int>(std::ceil(H));
  const double width = H / panels;
  cplx total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = mid + 0.5 * width * gl.nodes[i];
      const double w = 0.5 * width * gl.weights[i];
      total += w * (f(cplx(sigma, t)) + f(cplx(sigma, -t)));
    }
  }
  return total / (2.0 * kPi);
}

} // namespace

LineIntegral vertical_line_integral(const std::function<cplx(cplx)>& f,
                                    const MellinLineSpec& line) {
  if (!(line.sigma > 0.0)) throw DomainError("line integral: abscissa must be positive");
  if (!(line.half_height > 0.0)) throw DomainError("line integral: height must be positive");
  if (line.node_count < 2) throw DomainError("line integral: need at least two nodes per panel");

  const cplx coarse = panel_sum(f, line.sigma, line.half_height, line.node_count);
  const cplx fine = panel_sum(f, line.sigma, line.half_height, 2 * line.node_count);

  LineIntegral out;
  out.value = fine;
  out.refinement_error = std::abs(fine - coarse);

  const double H = line.half_height;
  double m = 0.0;
  for (double t : {H - 1.0, H - 0.5, H}) {
    if (t <= 0.0) continue;
    m = std::max({m, std::abs(f(cplx(line.sigma, t))) * t * t * t,
                  std::abs(f(cplx(line.sigma, -t))) * t * t * t});
  }
  out.tail_bound = m / (2.0 * kPi) / (H * H);

  if (out.refinement_error > line.tolerance * std::max(1.0, std::abs(fine))) {
    throw QuadratureError("line integral not resolved by " + std::to_string(line.node_count) +
                              " nodes per panel",
                          out.refinement_error);
  }
  return out;
}

MellinInversion mellin_invert_w(int nu, double x, const MellinLineSpec& line) {
  if (!(x > 0.0)) throw DomainError("mellin_invert_w: x must be positive");
  const double logx = std::log(x);
  auto integrand = [nu, logx](cplx s) { return std::exp(-s * logx) * w_nu(nu, s); };
  const LineIntegral r = vertical_line_integral(integrand, line);
  return {r.value.real(), r.refinement_error, r.tail_bound};
}

} // namespace hmf
