#include "hmf/lseries.hpp"

#include "hmf/errors.hpp"
#include "hmf/modgroup.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hmf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SeriesSum dirichlet_sum(const FormExpansion& F, cplx s, bool plus) {
  cplx acc = 0.0;
  for (int n = 1; n <= F.n_max; ++n) {
    const cplx c = plus ? F.c_plus[n] : F.c_minus[n - 1];
    if (c == 0.0) continue;
    acc += c * std::exp(-s * std::log(double(n)));
  }
  SeriesSum out{acc, kInf, false};
  const double excess = s.real() - F.alpha - 1.0;
  if (excess > 0.0) {
    const double C = growth_constant(F);
    out.tail_bound = C * std::pow(double(F.n_max), -excess) / excess;
    out.certified = true;
  }
  return out;
}

cplx i_pow(int k) { return ipow(cplx(0.0, 1.0), k); }

// c (A^{s-s0} - 1) / (s - s0), continuous at s = s0
cplx split_correction(cplx c, double A, cplx s, cplx s0) {
  const cplx d = s - s0;
  const double logA = std::log(A);
  if (std::abs(d * logA) < 1e-8) return c * logA * (1.0 + 0.5 * d * logA);
  return c * (std::exp(d * logA) - 1.0) / d;
}

} // namespace

SeriesSum l_plus(const FormExpansion& F, cplx s) { return dirichlet_sum(F, s, true); }
SeriesSum l_minus(const FormExpansion& F, cplx s) { return dirichlet_sum(F, s, false); }

cplx lambda_definitional(const FormExpansion& F, cplx s) {
  const cplx pre = std::exp(s * std::log(std::sqrt(double(F.level)) / (2.0 * kPi)));
  return pre * (gamma_complex(s) * l_plus(F, s).value + w_nu(F.nu(), s) * l_minus(F, s).value);
}

cplx xi_definitional(const FormExpansion& F, cplx s) {
  const cplx pre = std::exp(s * std::log(std::sqrt(double(F.level)) / (2.0 * kPi)));
  return pre * (gamma_complex(s + 1.0) * l_plus(F, s).value - w_nu(F.nu(), s + 1.0) * l_minus(F, s).value);
}

cplx omega_definitional(const FormExpansion& F, cplx s) {
  return -2.0 * xi_definitional(F, s) + double(F.weight) * lambda_definitional(F, s);
}

FrickePair FrickePair::swapped() const {
  const double sign = (weight % 2 == 0) ? 1.0 : -1.0;
  FrickePair out;
  out.level = level;
  out.weight = weight;
  out.f = g;
  out.h_f = h_g;
  Evaluator ff = f, hf = h_f;
  out.g = [ff, sign](cplx tau) { return sign * ff(tau); };
  out.h_g = [hf, sign](cplx tau) { return sign * hf(tau); };
  out.constants = {constants.g_plus0, constants.g_minus0, sign * constants.f_plus0, sign * constants.f_minus0};
  out.truncation_bound = truncation_bound;
  return out;
}

FrickePair make_fricke_pair(const FormExpansion& f, const FormExpansion& g, cplx g_scale) {
  validate(f);
  validate(g);
  if (f.weight != g.weight) throw PreconditionError("fricke pair: weights differ");
  const FormExpansion gs = g_scale == 1.0 ? g : scaled(g, g_scale);
  auto decaying = [](FormExpansion F) {
    F.c_plus[0] = 0.0;
    F.c_minus_zero = 0.0;
    return F;
  };
  const FormExpansion f0 = decaying(f), g0 = decaying(gs);
  FrickePair p;
  p.level = f.level;
  p.weight = f.weight;
  p.f = evaluator(f0);
  p.g = evaluator(g0);
  p.h_f = h_evaluator(f0);
  p.h_g = h_evaluator(g0);
  p.constants = {f.plus(0), f.c_minus_zero, gs.plus(0), gs.c_minus_zero};
  // lowest point touched by the default splits
  const cplx low(0.0, 1.0 / (1.5 * std::sqrt(double(f.level))));
  p.truncation_bound = std::max(evaluate(f, low).tail_bound, evaluate(gs, low).tail_bound);
  return p;
}

double default_upper_limit(int N, int k) {
  const double rootN = std::sqrt(double(N));
  return std::max(30.0 * (1 - k) / rootN, 5.0 * rootN * (1 - k));
}

Continuation::Continuation(const FrickePair& pair, const ContinuationOptions& opts)
    : k_(pair.weight), N_(pair.level), A_(opts.split), c_(pair.constants), ik_(i_pow(pair.weight)) {
  if (pair.weight >= 0) throw DomainError("continuation: weight must be negative");
  if (!(A_ > 0.0)) throw DomainError("continuation: split must be positive");
  if (opts.panel_nodes < 2 || !(opts.panel_width > 0.0)) throw DomainError("continuation: bad panel rule");
  T_ = opts.upper_limit > 0.0 ? opts.upper_limit : default_upper_limit(pair.level, pair.weight);
  if (T_ <= std::max(A_, 1.0 / A_)) throw DomainError("continuation: upper limit below the split");

  const double rootN = std::sqrt(N_);
  const double nu = 1 - k_;
  const auto& rule = gauss_legendre(opts.panel_nodes);

  auto build = [&](double lo, const Evaluator& F, const Evaluator& H, std::vector<Node>& out) {
    const int panels = int(std::ceil((T_ - lo) / opts.panel_width));
    const double w = (T_ - lo) / panels;
    const std::size_t m = rule.nodes.size();
    out.resize(std::size_t(panels) * m);
    detail::parallel_for(out.size(), [&](std::size_t idx) {
      const std::size_t p = idx / m, j = idx % m;
      const double a = lo + p * w;
      const double t = a + 0.5 * w * (rule.nodes[j] + 1.0);
      const double wt = 0.5 * w * rule.weights[j];
      const cplx tau(0.0, t / rootN);
      out[idx] = {std::log(t), wt * F(tau), wt * H(tau)};
    });
  };
  build(A_, pair.f, pair.h_f, f_nodes_);
  build(1.0 / A_, pair.g, pair.h_g, g_nodes_);

  // the integrands at T, scaled by the largest power of t the callers use
  const cplx tauT(0.0, T_ / rootN);
  const double phiT =
      std::abs(pair.f(tauT)) + std::abs(pair.g(tauT)) + std::abs(pair.h_f(tauT)) + std::abs(pair.h_g(tauT));
  tail_ = phiT * rootN / (2.0 * kPi) * std::pow(T_, nu + 4.0);
  if (!(tail_ <= opts.tail_tolerance)) {
    throw QuadratureError("continuation: integrand not negligible at T = " + std::to_string(T_), tail_);
  }
}

cplx Continuation::integrals(cplx s, bool omega) const {
  cplx If = 0.0, Ig = 0.0;
  const cplx ef = s - 1.0, eg = double(k_) - s - 1.0;
  for (const Node& n : f_nodes_) If += (omega ? n.phi_h : n.phi) * std::exp(ef * n.log_t);
  for (const Node& n : g_nodes_) Ig += (omega ? n.phi_h : n.phi) * std::exp(eg * n.log_t);
  return omega ? If - ik_ * Ig : If + ik_ * Ig;
}

std::vector<Continuation::Pole> Continuation::poles() const {
  const double norm = std::pow(N_, -(1.0 - k_) / 2.0);
  const double k = k_;
  return {
      {0.0, -c_.f_plus0, -k * c_.f_plus0},
      {k, ik_ * c_.g_plus0, -k * ik_ * c_.g_plus0},
      {1.0, ik_ * c_.g_minus0 * norm, -k * ik_ * c_.g_minus0 * norm},
      {k - 1.0, -c_.f_minus0 * norm, -k * c_.f_minus0 * norm},
  };
}

cplx Continuation::pole_part(cplx s, bool omega, bool corrected) const {
  cplx acc = 0.0;
  for (const Pole& p : poles()) {
    const cplx r = omega ? p.omega_residue : p.lambda_residue;
    if (r == 0.0) continue;
    if (corrected) {
      acc += split_correction(r, A_, s, p.at);
    } else {
      acc += r * std::exp((s - p.at) * std::log(A_)) / (s - p.at);
    }
  }
  return acc;
}

cplx Continuation::lambda(cplx s) const {
  if (is_pole(s, k_)) throw PoleError("Lambda has a pole at s = " + std::to_string(s.real()));
  return integrals(s, false) + pole_part(s, false, false);
}

cplx Continuation::omega(cplx s) const {
  if (is_pole(s, k_)) throw PoleError("Omega has a pole at s = " + std::to_string(s.real()));
  return integrals(s, true) + pole_part(s, true, false);
}

cplx Continuation::lambda_star(cplx s) const { return integrals(s, false) + pole_part(s, false, true); }
cplx Continuation::omega_star(cplx s) const { return integrals(s, true) + pole_part(s, true, true); }

cplx lambda_continued(const FrickePair& pair, cplx s, const ContinuationOptions& opts) {
  return Continuation(pair, opts).lambda(s);
}

cplx omega_continued(const FrickePair& pair, cplx s, const ContinuationOptions& opts) {
  return Continuation(pair, opts).omega(s);
}

bool is_pole(cplx s, int k) {
  if (std::abs(s.imag()) > 1e-12) return false;
  for (double p : {0.0, double(k), 1.0, double(k) - 1.0}) {
    if (std::abs(s.real() - p) < 1e-12) return true;
  }
  return false;
}

std::vector<cplx> rectangular_grid(double re0, double re1, int re_steps, double im0, double im1, int im_steps,
                                   int k, std::vector<cplx>* excluded) {
  if (re_steps < 1 || im_steps < 1) throw DomainError("grid: step counts must be positive");
  std::vector<cplx> out;
  for (int i = 0; i < re_steps; ++i) {
    const double re = re_steps == 1 ? re0 : re0 + (re1 - re0) * i / (re_steps - 1);
    for (int j = 0; j < im_steps; ++j) {
      const double im = im_steps == 1 ? im0 : im0 + (im1 - im0) * j / (im_steps - 1);
      const cplx s(re, im);
      if (is_pole(s, k)) {
        if (excluded) excluded->push_back(s);
      } else {
        out.push_back(s);
      }
    }
  }
  return out;
}

double ResidualReport::max_lambda() const {
  double m = 0.0;
  for (double r : lambda_residuals) m = std::max(m, r);
  return m;
}

double ResidualReport::max_omega() const {
  double m = 0.0;
  for (double r : omega_residuals) m = std::max(m, r);
  return m;
}

double ResidualReport::max_residual() const { return std::max(max_lambda(), max_omega()); }

ResidualReport fe_residuals(const FrickePair& pair, const std::vector<cplx>& grid, const ResidualOptions& opts) {
  const Continuation lf(pair, opts.f_side);
  const Continuation lg(pair.swapped(), opts.g_side);
  const cplx ik = i_pow(pair.weight);
  const double k = pair.weight;

  ResidualReport rep;
  rep.level = pair.level;
  rep.weight = pair.weight;
  rep.upper_limit = lf.upper_limit();
  rep.split_f = lf.split();
  rep.split_g = lg.split();
  rep.panel_nodes = opts.f_side.panel_nodes;
  rep.node_count = lf.node_count() + lg.node_count();
  rep.tail_bound = std::max(lf.tail_bound(), lg.tail_bound());
  rep.truncation_bound = pair.truncation_bound;
  for (const cplx& s : grid) {
    if (is_pole(s, pair.weight)) {
      rep.excluded.push_back(s);
      continue;
    }
    rep.grid.push_back(s);
    rep.lambda_residuals.push_back(std::abs(lf.lambda(s) - ik * lg.lambda(k - s)));
    rep.omega_residuals.push_back(std::abs(lf.omega(s) + ik * lg.omega(k - s)));
  }
  return rep;
}

TwistedPair make_twisted_pair(const FormExpansion& f, const FormExpansion& g, const DirichletCharacter& psi) {
  if (!psi.primitive) throw PreconditionError("twist: psi must be primitive");
  const int m = psi.modulus;
  if (std::gcd(m, f.level) != 1) throw PreconditionError("twist: gcd(m, N) must be 1");
  const cplx C = c_psi(f.character, psi, f.level);
  FormExpansion fpsi = twist(f, psi);
  FormExpansion gpsi = twist(g, conjugate(psi));
  TwistedPair out{make_fricke_pair(fpsi, gpsi, C), C, m};
  out.pair.level = f.level * m * m;
  return out;
}

TwistedValue twisted_lambda(const FormExpansion& f, const FormExpansion& g, const DirichletCharacter& psi, cplx s,
                            const ResidualOptions& opts) {
  const TwistedPair tp = make_twisted_pair(f, g, psi);
  const Continuation lf(tp.pair, opts.f_side);
  const Continuation lg(tp.pair.swapped(), opts.g_side);
  const cplx ik = i_pow(f.weight);
  const double k = f.weight;
  TwistedValue out;
  out.c_psi = tp.c_psi;
  out.lambda_f = lf.lambda(s);
  out.lambda_g = lg.lambda(k - s) / tp.c_psi;
  out.lambda_residual = std::abs(out.lambda_f - ik * tp.c_psi * out.lambda_g);
  out.omega_f = lf.omega(s);
  out.omega_g = lg.omega(k - s) / tp.c_psi;
  out.omega_residual = std::abs(out.omega_f + ik * tp.c_psi * out.omega_g);
  return out;
}

ResidualReport twisted_residuals(const FormExpansion& f, const FormExpansion& g, const DirichletCharacter& psi,
                                 const std::vector<cplx>& grid, const ResidualOptions& opts) {
  const TwistedPair tp = make_twisted_pair(f, g, psi);
  ResidualReport rep = fe_residuals(tp.pair, grid, opts);
  rep.c_psi = tp.c_psi;
  return rep;
}

Reconstruction reconstruct_from_lambda(const std::function<cplx(cplx)>& lambda, int N, int k, double t,
                                       double beta1, double H, int nodes, double tolerance) {
  (void)N;
  (void)k;
  if (!(t > 0.0)) throw DomainError("reconstruct: t must be positive");
  const double logt = std::log(t);
  MellinLineSpec line{beta1, H, nodes, tolerance};
  const LineIntegral r =
      vertical_line_integral([&](cplx s) { return std::exp(-s * logt) * lambda(s); }, line);
  return {r.value, r.refinement_error, r.tail_bound};
}

cplx contour_residue(const std::function<cplx(cplx)>& f, cplx s0, double r, int points) {
  cplx acc = 0.0;
  for (int j = 0; j < points; ++j) {
    const cplx e = std::polar(1.0, 2.0 * kPi * (j + 0.5) / points);
    acc += f(s0 + r * e) * r * e;
  }
  return acc / double(points);
}

ConductorSet verification_set(int N) {
  if (N == 7) return {7, {11, 17, 19, 23, 29, 41}, "paper"};
  if (N == 11) return {11, {13, 17, 19, 23, 29, 31, 37, 47, 59, 71}, "paper"};
  ConductorSet out{N, {}, "heuristic"};
  for (int m = 3; out.conductors.size() < 8; ++m) {
    bool prime = m % 2 == 1;
    for (int d = 3; prime && d * d <= m; d += 2) prime = m % d != 0;
    if ((prime || m == 4) && std::gcd(m, N) == 1) out.conductors.push_back(m);
  }
  return out;
}

} // namespace hmf
