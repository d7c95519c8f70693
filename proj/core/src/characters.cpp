#include "hmf/characters.hpp"

#include "hmf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hmf {

long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long euler_phi(long long n) {
  long long result = n;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

struct PrimePower {
  long long p;
  int e;
  long long pe;
};

std::vector<PrimePower> factor(long long n) {
  std::vector<PrimePower> out;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.e;
      pp.pe *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

long long powmod(long long b, long long e, long long m) {
  long long r = 1 % m;
  b = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

long long multiplicative_order(long long g, long long m) {
  long long x = g % m, ord = 1;
  while (x != 1 % m) {
    x = x * g % m;
    ++ord;
  }
  return ord;
}

long long primitive_root(const PrimePower& pp) {
  const long long phi = euler_phi(pp.pe);
  for (long long g = 2; g < pp.pe; ++g) {
    if (std::gcd(g, pp.p) != 1) continue;
    if (multiplicative_order(g, pp.pe) == phi) return g;
  }
  return 1;  // p^e = 2
}

// x = r mod pe, x = 1 mod q/pe
long long crt_lift(long long r, long long pe, long long q) {
  const long long rest = q / pe;
  for (long long x = r; x < q; x += pe)
    if (x % rest == 1 % rest) return x;
  return r;
}

struct UnitGroup {
  std::vector<long long> generators;
  std::vector<int> orders;
  std::vector<std::vector<int>> logs;  // per residue; empty when not a unit
};

UnitGroup unit_group(int q) {
  UnitGroup ug;
  for (const auto& pp : factor(q)) {
    if (pp.p == 2) {
      if (pp.e >= 2) {
        ug.generators.push_back(crt_lift(pp.pe - 1, pp.pe, q));
        ug.orders.push_back(2);
      }
      if (pp.e >= 3) {
        ug.generators.push_back(crt_lift(5, pp.pe, q));
        ug.orders.push_back(static_cast<int>(pp.pe / 4));
      }
    } else {
      ug.generators.push_back(crt_lift(primitive_root(pp), pp.pe, q));
      ug.orders.push_back(static_cast<int>(euler_phi(pp.pe)));
    }
  }
  ug.logs.assign(q, {});
  const std::size_t r = ug.generators.size();
  std::vector<int> e(r, 0);
  while (true) {
    long long x = 1 % q;
    for (std::size_t i = 0; i < r; ++i) x = x * powmod(ug.generators[i], e[i], q) % q;
    ug.logs[x] = e;
    std::size_t i = 0;
    while (i < r && ++e[i] == ug.orders[i]) e[i++] = 0;
    if (i == r) break;
  }
  return ug;
}

Rational frac_part(Rational x) {
  const long long fl = x.numerator() >= 0 ? x.numerator() / x.denominator()
                                           : -((-x.numerator() + x.denominator() - 1) / x.denominator());
  return x - Rational(fl);
}

cplx root_of_unity(const Rational& r) {
  const double a = 2.0 * kPi * static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
  // snap the common quarter turns so real characters have exactly real values
  if (r == Rational(0)) return 1.0;
  if (r == Rational(1, 2)) return -1.0;
  if (r == Rational(1, 4)) return cplx(0.0, 1.0);
  if (r == Rational(3, 4)) return cplx(0.0, -1.0);
  return std::polar(1.0, a);
}

DirichletCharacter build(int q, const UnitGroup& ug, const std::vector<int>& exps) {
  DirichletCharacter chi;
  chi.modulus = q;
  chi.generators = ug.generators;
  chi.orders = ug.orders;
  chi.exponents = exps;
  chi.values.assign(q, 0.0);
  chi.phases.assign(q, std::nullopt);
  for (int n = 0; n < q; ++n) {
    if (std::gcd(n, q) != 1) continue;
    Rational ph(0);
    for (std::size_t i = 0; i < exps.size(); ++i)
      ph += Rational(static_cast<long long>(exps[i]) * ug.logs[n][i], ug.orders[i]);
    ph = frac_part(ph);
    chi.phases[n] = ph;
    chi.values[n] = root_of_unity(ph);
  }
  chi.parity = (*chi.phases[q - 1] == Rational(0)) ? 1 : -1;
  chi.conductor = conductor(chi);
  chi.primitive = chi.conductor == q;
  return chi;
}

} // namespace

cplx DirichletCharacter::operator()(long long n) const { return values[mod_floor(n, modulus)]; }

std::optional<Rational> DirichletCharacter::phase(long long n) const {
  return phases[mod_floor(n, modulus)];
}

bool DirichletCharacter::is_trivial() const {
  return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

bool DirichletCharacter::is_real() const {
  for (const auto& p : phases)
    if (p && *p != Rational(0) && *p != Rational(1, 2)) return false;
  return true;
}

int DirichletCharacter::order() const {
  long long l = 1;
  for (const auto& p : phases)
    if (p) l = std::lcm(l, p->denominator());
  return static_cast<int>(l);
}

std::string DirichletCharacter::label() const {
  std::ostringstream os;
  os << modulus << ":[";
  for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i];
  os << "]";
  return os.str();
}

std::vector<DirichletCharacter> enumerate_characters(int q) {
  if (q < 1) throw DomainError("enumerate_characters: modulus must be positive");
  const UnitGroup ug = unit_group(q);
  std::vector<DirichletCharacter> out;
  const std::size_t r = ug.orders.size();
  std::vector<int> e(r, 0);
  while (true) {
    out.push_back(build(q, ug, e));
    std::size_t i = 0;
    while (i < r && ++e[i] == ug.orders[i]) e[i++] = 0;
    if (i == r) break;
  }
  return out;
}

DirichletCharacter make_character(int q, const std::vector<int>& exponents) {
  if (q < 1) throw DomainError("make_character: modulus must be positive");
  const UnitGroup ug = unit_group(q);
  if (exponents.size() != ug.orders.size())
    throw DomainError("make_character: modulus " + std::to_string(q) + " needs " +
                      std::to_string(ug.orders.size()) + " exponents");
  std::vector<int> e(exponents.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<int>(mod_floor(exponents[i], ug.orders[i]));
  return build(q, ug, e);
}

DirichletCharacter trivial_character(int q) {
  const UnitGroup ug = unit_group(q);
  return build(q, ug, std::vector<int>(ug.orders.size(), 0));
}

int conductor(const DirichletCharacter& chi) {
  const int q = chi.modulus;
  for (int f = 1; f <= q; ++f) {
    if (q % f) continue;
    bool ok = true;
    for (int n = 1; n < q && ok; n += f) {
      // n = 1 mod f by construction
      if (std::gcd(n, q) != 1) continue;
      if (*chi.phases[n] != Rational(0)) ok = false;
    }
    if (ok) return f;
  }
  return q;
}

cplx gauss_sum(const DirichletCharacter& psi) {
  const int m = psi.modulus;
  cplx s = 0.0;
  for (int a = 0; a < m; ++a) {
    if (psi.values[a] == 0.0) continue;
    s += psi.values[a] * std::polar(1.0, 2.0 * kPi * a / m);
  }
  return s;
}

namespace {

void check_twist_pair(const DirichletCharacter& chi, const DirichletCharacter& psi, int N) {
  if (N < 1) throw DomainError("level must be positive");
  if (chi.modulus != N && N % chi.modulus != 0)
    throw PreconditionError("character modulus does not divide the level");
  if (!psi.primitive) throw PreconditionError("twisting character must be primitive");
  if (std::gcd(psi.modulus, N) != 1)
    throw PreconditionError("twisting modulus " + std::to_string(psi.modulus) +
                            " is not coprime to the level " + std::to_string(N));
}

} // namespace

cplx c_psi(const DirichletCharacter& chi, const DirichletCharacter& psi, int N) {
  check_twist_pair(chi, psi, N);
  const int m = psi.modulus;
  return chi(m) * psi(-N) * gauss_sum(psi) / gauss_sum(conjugate(psi));
}

cplx c_psi_squared_form(const DirichletCharacter& chi, const DirichletCharacter& psi, int N) {
  check_twist_pair(chi, psi, N);
  const int m = psi.modulus;
  const cplx t = gauss_sum(psi);
  return chi(m) * psi(N) * t * t / static_cast<double>(m);
}

DirichletCharacter conjugate(const DirichletCharacter& chi) {
  std::vector<int> e(chi.exponents.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = static_cast<int>(mod_floor(-chi.exponents[i], chi.orders[i]));
  return make_character(chi.modulus, e);
}

DirichletCharacter product_character(const DirichletCharacter& chi1, int e1,
                                     const DirichletCharacter& chi2, int e2, int M) {
  if (M % chi1.modulus || M % chi2.modulus)
    throw DomainError("product_character: target modulus is not a common multiple");
  for (const auto& cand : enumerate_characters(M)) {
    bool match = true;
    for (int n = 0; n < M && match; ++n) {
      if (!cand.phases[n]) continue;
      const auto p1 = chi1.phase(n);
      const auto p2 = chi2.phase(n);
      if (!p1 || !p2) {
        match = false;  // cannot happen when M is a common multiple
        break;
      }
      Rational want = *p1 * Rational(e1) + *p2 * Rational(e2);
      want -= Rational(static_cast<long long>(std::floor(boost::rational_cast<double>(want))));
      if (want != *cand.phases[n]) match = false;
    }
    if (match) return cand;
  }
  throw Error("product_character: no matching character (internal error)");
}

DirichletCharacter character_from_label(int q, const std::string& label) {
  if (q < 1) throw DomainError("modulus must be positive");
  if (label == "triv" || label == "trivial" || label == "1") return trivial_character(q);
  const auto all = enumerate_characters(q);
  if (label == "quadratic" || label == "quad") {
    const DirichletCharacter* best = nullptr;
    for (const auto& c : all) {
      if (c.is_trivial() || !c.is_real()) continue;
      if (!best || (c.primitive && !best->primitive)) best = &c;
    }
    if (!best) throw DomainError("no quadratic character modulo " + std::to_string(q));
    return *best;
  }
  if (!label.empty() && label[0] == '#') {
    std::size_t idx = 0;
    try {
      idx = std::stoul(label.substr(1));
    } catch (const std::exception&) {
      throw DomainError("bad character index '" + label + "'");
    }
    if (idx >= all.size()) throw DomainError("character index out of range: " + label);
    return all[idx];
  }
  std::vector<int> e;
  std::stringstream ss(label);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      e.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw DomainError("unrecognised character label '" + label + "'");
    }
  }
  return make_character(q, e);
}

} // namespace hmf
