#pragma once

#include "hmf/characters.hpp"
#include "hmf/forms.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hmf {

struct SeriesSum {
  cplx value;
  double tail_bound;  // infinite outside the half-plane of absolute convergence
  bool certified;     // Re(s) > alpha + 1
};

// sum_{n>=1} c+(n) n^{-s} and sum_{n>=1} c-(-n) n^{-s}, truncated at n_max
SeriesSum l_plus(const FormExpansion& F, cplx s);
SeriesSum l_minus(const FormExpansion& F, cplx s);

cplx lambda_definitional(const FormExpansion& F, cplx s);
cplx xi_definitional(const FormExpansion& F, cplx s);
cplx omega_definitional(const FormExpansion& F, cplx s);

struct PairConstants {
  cplx f_plus0 = 0.0, f_minus0 = 0.0;
  cplx g_plus0 = 0.0, g_minus0 = 0.0;
};

// f and g = f |_k omega(N) as pointwise evaluators of their decaying parts
// (c+(0) and c-(0) v^{1-k} removed, the constants kept separately), plus the
// H-transforms 2iv d/du + k of those parts, used by the Omega family. Removing
// the constants at the coefficient level avoids cancelling them numerically at
// large v.
struct FrickePair {
  int level = 1;
  int weight = -2;
  Evaluator f, g, h_f, h_g;
  PairConstants constants;
  double truncation_bound = 0.0;  // form truncation error at the lowest height used, if known

  // (g, g |_k omega(N)) = (g, (-1)^k f)
  FrickePair swapped() const;
};

FrickePair make_fricke_pair(const FormExpansion& f, const FormExpansion& g, cplx g_scale = 1.0);

struct ContinuationOptions {
  double upper_limit = 0.0;  // T; 0 selects default_upper_limit
  double split = 1.0;        // A: the f-integral runs over [A, T], the g-integral over [1/A, T]
  double panel_width = 0.125;
  int panel_nodes = 24;
  double tail_tolerance = 1e-10;
};

double default_upper_limit(int N, int k);

// The integral representation, sampled once and reused for every s.
//
//   Lambda(f,s) = int_A^T phi_f(t) t^{s-1} dt + i^k int_{1/A}^T phi_g(t) t^{k-s-1} dt
//                 + sum_j r_j A^{s-s_j} / (s - s_j)
//
// with phi the decaying part of the form on the line it/sqrt(N),
// and the four poles s_j in {0, k, 1, k-1}.
class Continuation {
public:
  Continuation(const FrickePair& pair, const ContinuationOptions& opts = {});

  cplx lambda(cplx s) const;
  cplx omega(cplx s) const;
  // pole-corrected, entire versions (independent of the split)
  cplx lambda_star(cplx s) const;
  cplx omega_star(cplx s) const;

  struct Pole {
    cplx at;
    cplx lambda_residue;
    cplx omega_residue;
  };
  std::vector<Pole> poles() const;

  double upper_limit() const { return T_; }
  double split() const { return A_; }
  double tail_bound() const { return tail_; }
  std::size_t node_count() const { return f_nodes_.size() + g_nodes_.size(); }

private:
  struct Node {
    double log_t;
    cplx phi;    // weighted sample of the Lambda integrand
    cplx phi_h;  // weighted sample of the Omega integrand
  };
  std::vector<Node> f_nodes_, g_nodes_;
  int k_;
  double N_;
  double A_, T_;
  double tail_;
  PairConstants c_;
  cplx ik_;

  cplx integrals(cplx s, bool omega) const;
  cplx pole_part(cplx s, bool omega, bool corrected) const;
};

cplx lambda_continued(const FrickePair& pair, cplx s, const ContinuationOptions& opts = {});
cplx omega_continued(const FrickePair& pair, cplx s, const ContinuationOptions& opts = {});

bool is_pole(cplx s, int k);

// re0:re1:steps x im0:im1:steps, pole points dropped (and listed in `excluded`)
std::vector<cplx> rectangular_grid(double re0, double re1, int re_steps, double im0, double im1, int im_steps,
                                   int k, std::vector<cplx>* excluded = nullptr);

struct ResidualReport {
  std::vector<cplx> grid;
  std::vector<double> lambda_residuals;  // |Lambda(f,s) - i^k Lambda(g,k-s)|
  std::vector<double> omega_residuals;   // |Omega(f,s) + i^k Omega(g,k-s)|
  std::vector<cplx> excluded;

  double upper_limit = 0.0;
  double split_f = 1.0, split_g = 1.0;
  int panel_nodes = 0;
  std::size_t node_count = 0;
  double tail_bound = 0.0;
  double truncation_bound = 0.0;
  int level = 1, weight = -2;
  cplx c_psi = 1.0;  // 1 for untwisted reports

  double max_lambda() const;
  double max_omega() const;
  double max_residual() const;
};

// The two sides are computed with different splits (A_f != 1/A_g), so the
// residual genuinely tests g = f | omega(N); with reciprocal splits the
// functional equation holds identically.
struct ResidualOptions {
  ContinuationOptions f_side{};
  ContinuationOptions g_side{0.0, 1.5};
};

ResidualReport fe_residuals(const FrickePair& pair, const std::vector<cplx>& grid,
                            const ResidualOptions& opts = {});

struct TwistedPair {
  FrickePair pair;  // (f_psi, C_psi g_psibar) at level N m^2
  cplx c_psi;
  int modulus;
};

TwistedPair make_twisted_pair(const FormExpansion& f, const FormExpansion& g, const DirichletCharacter& psi);

struct TwistedValue {
  cplx lambda_f;    // Lambda_N(f, s, psi)
  cplx lambda_g;    // Lambda_N(g, k - s, conj psi)
  double lambda_residual;
  cplx omega_f;
  cplx omega_g;
  double omega_residual;
  cplx c_psi;
};

TwistedValue twisted_lambda(const FormExpansion& f, const FormExpansion& g, const DirichletCharacter& psi,
                            cplx s, const ResidualOptions& opts = {});
ResidualReport twisted_residuals(const FormExpansion& f, const FormExpansion& g, const DirichletCharacter& psi,
                                 const std::vector<cplx>& grid, const ResidualOptions& opts = {});

struct Reconstruction {
  cplx value;
  double refinement_error;
  double tail_bound;
};

// (1/2 pi i) int_{beta1 - iH}^{beta1 + iH} t^{-s} Lambda(s) ds
Reconstruction reconstruct_from_lambda(const std::function<cplx(cplx)>& lambda, int N, int k, double t,
                                       double beta1, double H = 200.0, int nodes = 16, double tolerance = 1e-8);

// (1/2 pi i) of the integral over the circle |s - s0| = r, trapezoid rule
cplx contour_residue(const std::function<cplx(cplx)>& f, cplx s0, double r = 0.1, int points = 64);

struct ConductorSet {
  int level;
  std::vector<int> conductors;
  std::string source;  // "paper" or "heuristic"
};

ConductorSet verification_set(int N);

} // namespace hmf
