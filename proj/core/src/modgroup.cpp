#include "hmf/modgroup.hpp"

#include "hmf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hmf {

namespace {

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

bool is_int(const Rational& r) { return r.denominator() == 1; }

long long as_int(const Rational& r) {
  if (!is_int(r)) throw DomainError("expected an integer matrix entry");
  return r.numerator();
}

} // namespace

long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const long long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

RationalMatrix::RationalMatrix(Rational a_, Rational b_, Rational c_, Rational d_)
    : a(a_), b(b_), c(c_), d(d_) {
  if (det() <= Rational(0)) throw DomainError("matrix must have positive determinant");
}

RationalMatrix RationalMatrix::unchecked(Rational a, Rational b, Rational c, Rational d) {
  RationalMatrix m;
  m.a = a;
  m.b = b;
  m.c = c;
  m.d = d;
  return m;
}

bool RationalMatrix::is_integral() const { return is_int(a) && is_int(b) && is_int(c) && is_int(d); }

bool RationalMatrix::in_sl2z() const { return is_integral() && det() == Rational(1); }

RationalMatrix RationalMatrix::adjugate() const { return unchecked(d, -b, -c, a); }

RationalMatrix RationalMatrix::inverse() const {
  const Rational D = det();
  return unchecked(d / D, -b / D, -c / D, a / D);
}

cplx RationalMatrix::apply(cplx tau) const {
  return (to_double(a) * tau + to_double(b)) / (to_double(c) * tau + to_double(d));
}

RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
  return RationalMatrix::unchecked(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                                   x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

bool in_gamma0(const RationalMatrix& g, int N) {
  return g.in_sl2z() && g.c.numerator() % N == 0;
}

cplx ipow(cplx z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx r = 1.0;
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

cplx slash_factor(int k, const RationalMatrix& g, cplx tau) {
  if (tau.imag() <= 0.0) throw DomainError("slash: tau must lie in the upper half-plane");
  const cplx j = to_double(g.c) * tau + to_double(g.d);
  if (j == 0.0) throw DomainError("slash: c tau + d vanishes");
  return std::pow(to_double(g.det()), 0.5 * k) * ipow(j, -k);
}

cplx slash(const std::function<cplx(cplx)>& f, int k, const RationalMatrix& g, cplx tau) {
  return slash_factor(k, g, tau) * f(g.apply(tau));
}

RationalMatrix fricke(int N) {
  if (N < 1) throw DomainError("fricke: level must be positive");
  return RationalMatrix(0, -1, N, 0);
}

RationalMatrix translation(Rational h) { return RationalMatrix(1, h, 0, 1); }

std::string Cusp::repr() const {
  if (is_infinity()) return "inf";
  if (c == 1) return std::to_string(a);
  return std::to_string(a) + "/" + std::to_string(c);
}

namespace {

RationalMatrix scaling_for(long long a, long long c) {
  if (c == 0) return RationalMatrix::identity();
  long long x, y;
  ext_gcd(a, c, x, y);  // x a + y c = 1
  return RationalMatrix(a, -y, c, x);
}

Cusp make_cusp(int N, long long a, long long c, const DirichletCharacter* chi) {
  Cusp rho;
  rho.a = c == 0 ? 1 : a;
  rho.c = c;
  rho.scaling = scaling_for(rho.a, c);
  rho.width = cusp_width(N, rho);
  rho.kappa = chi ? cusp_parameter(N, *chi, rho) : Rational(0);
  return rho;
}

std::vector<Cusp> cusp_list(int N, const DirichletCharacter* chi) {
  if (N < 1) throw DomainError("cusps: level must be positive");
  std::vector<Cusp> out;
  out.push_back(make_cusp(N, 1, 0, chi));
  for (long long c = 1; c < N; ++c) {
    if (N % c) continue;
    const long long g = std::gcd(c, N / c);
    for (long long r = 0; r < g; ++r) {
      if (std::gcd(r, g) != 1) continue;
      long long a = r;
      while (std::gcd(a, c) != 1) a += g;
      out.push_back(make_cusp(N, a, c, chi));
    }
  }
  return out;
}

} // namespace

std::vector<Cusp> cusps(int N) { return cusp_list(N, nullptr); }

std::vector<Cusp> cusps(int N, const DirichletCharacter& chi) {
  if (N % chi.modulus) throw PreconditionError("character modulus must divide the level");
  return cusp_list(N, &chi);
}

int cusp_width(int N, const Cusp& rho) {
  const RationalMatrix inv = rho.scaling.inverse();
  for (int h = 1; h <= N; ++h) {
    if (in_gamma0(rho.scaling * translation(h) * inv, N)) return h;
  }
  return N;  // unreachable: T^N conjugates into Gamma(N)
}

RationalMatrix cusp_generator(const Cusp& rho) {
  return rho.scaling * translation(rho.width) * rho.scaling.inverse();
}

Rational cusp_parameter(int N, const DirichletCharacter& chi, const Cusp& rho) {
  if (N % chi.modulus) throw PreconditionError("character modulus must divide the level");
  const auto ph = chi.phase(as_int(cusp_generator(rho).d));
  return ph ? *ph : Rational(0);
}

bool cusps_equivalent(int N, long long a1, long long c1, long long a2, long long c2) {
  auto norm = [](long long& a, long long& c) {
    if (c == 0) {
      a = 1;
      return;
    }
    const long long g = std::gcd(a, c);
    a /= g;
    c /= g;
    if (c < 0) {
      a = -a;
      c = -c;
    }
  };
  norm(a1, c1);
  norm(a2, c2);
  const RationalMatrix m1 = scaling_for(a1, c1);
  const RationalMatrix m2 = scaling_for(a2, c2);
  const RationalMatrix m1inv = m1.inverse();
  for (int j = 0; j < N; ++j) {
    if (in_gamma0(m2 * translation(j) * m1inv, N)) return true;
  }
  return false;
}

Cusp parse_cusp(int N, const std::string& text, const DirichletCharacter& chi) {
  long long a = 1, c = 0;
  if (text == "inf" || text == "oo" || text == "infinity" || text == "1/0") {
    a = 1;
    c = 0;
  } else {
    try {
      std::size_t used = 0;
      const auto slash_pos = text.find('/');
      a = std::stoll(text.substr(0, slash_pos), &used);
      if (used != text.substr(0, slash_pos).size()) throw std::invalid_argument(text);
      c = 1;
      if (slash_pos != std::string::npos) {
        const std::string den = text.substr(slash_pos + 1);
        c = std::stoll(den, &used);
        if (used != den.size()) throw std::invalid_argument(text);
      }
    } catch (const std::exception&) {
      throw DomainError("cannot parse cusp '" + text + "'");
    }
    if (c == 0) {
      if (a == 0) throw DomainError("cannot parse cusp '" + text + "'");
      a = 1;
    }
  }
  for (const auto& rho : cusps(N, chi)) {
    if (cusps_equivalent(N, a, c, rho.a, rho.c)) return rho;
  }
  throw Error("parse_cusp: no canonical representative found (internal error)");
}

Cusp parse_cusp(int N, const std::string& text) { return parse_cusp(N, text, trivial_character(1)); }

std::vector<RationalMatrix> coset_reps(int N, const Cusp& rho, int bound) {
  if (bound < 1) throw DomainError("coset_reps: bound must be positive");
  struct Entry {
    long long key, c, d;
    RationalMatrix g;
  };
  std::vector<Entry> found;
  for (long long c = 0; c <= bound; ++c) {
    for (long long d = -bound; d <= bound; ++d) {
      if (std::gcd(c, d) != 1) continue;
      if (c == 0 && d != 1) continue;  // rows are taken up to sign
      long long x, y;
      ext_gcd(d, c, x, y);  // x d + y c = 1
      const RationalMatrix h = RationalMatrix::unchecked(x, -y, c, d);
      for (int j = 0; j < N; ++j) {
        const RationalMatrix g = rho.scaling * translation(j) * h;
        if (in_gamma0(g, N)) {
          found.push_back({std::max(c, std::llabs(d)), c, d, g});
          break;
        }
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const Entry& p, const Entry& q) {
    return std::tie(p.key, p.c, p.d) < std::tie(q.key, q.c, q.d);
  });
  std::vector<RationalMatrix> out;
  out.reserve(found.size());
  for (auto& e : found) out.push_back(e.g);
  return out;
}

Decomposition upper_triangular_decompose(const RationalMatrix& M) {
  if (!M.is_integral()) throw DomainError("upper_triangular_decompose: integer matrix expected");
  if (M.det() <= Rational(0)) throw DomainError("upper_triangular_decompose: det must be positive");
  const long long p = as_int(M.a), r = as_int(M.c);
  long long x, y;
  const long long g = ext_gcd(p, r, x, y);  // x p + y r = g > 0
  // gamma^{-1} = [[x, y], [-r/g, p/g]] clears the lower-left entry
  const RationalMatrix ginv = RationalMatrix::unchecked(x, y, -r / g, p / g);
  const RationalMatrix U = ginv * M;
  Decomposition out;
  out.gamma = ginv.inverse();
  out.upper = RationalMatrix(U.a, U.b, 0, U.d);
  return out;
}

} // namespace hmf
