#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hmf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

cplx gamma_complex(cplx s);

// Upper incomplete gamma for integer order, via the terminating sum
// (nu-1)! e^{-x} sum_{l<nu} x^l/l!.
double inc_gamma(int nu, double x);

// Gamma(nu, x) * e^{shift}. Valid for any real x (the finite sum is entire),
// and keeps the exponentials together so large x does not underflow.
double inc_gamma_scaled(int nu, double x, double shift);

// Mellin transform of Gamma(nu, 2x) e^{x}.
cplx w_nu(int nu, cplx s);

struct MellinLineSpec {
  double sigma = 2.0;
  double half_height = 200.0;
  int node_count = 16;       // Gauss-Legendre nodes per unit panel
  double tolerance = 1e-9;   // accepted node-doubling discrepancy (absolute)
};

struct LineIntegral {
  cplx value;
  double refinement_error = 0.0;  // |I(n) - I(2n)|
  double tail_bound = 0.0;        // C * H^{-2}
};

// (1/2 pi i) * integral of f(s) ds over sigma - iH .. sigma + iH.
LineIntegral vertical_line_integral(const std::function<cplx(cplx)>& f,
                                    const MellinLineSpec& line);

struct MellinInversion {
  double value;
  double refinement_error;
  double tail_bound;
};

MellinInversion mellin_invert_w(int nu, double x, const MellinLineSpec& line);

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

} // namespace hmf
