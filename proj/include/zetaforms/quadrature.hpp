#pragma once

#include <gmpxx.h>

#include <functional>
#include <vector>

#include "zetaforms/linform.hpp"
#include "zetaforms/numeric.hpp"
#include "zetaforms/params.hpp"

namespace zf {

// Gauss-Legendre rule on [-1, 1] with m nodes (cached).
struct GaussRule {
  std::vector<BigFloat> nodes;
  std::vector<BigFloat> weights;
};
const GaussRule& gauss_legendre(int m, prec_t prec);

// Vertical line Re z = mu in the scaled variable z = t/n.  The abscissa
// actually used is M = floor(n mu) + 1/2 in the original variable, which
// keeps every node at distance >= 1/2 from the poles of cot_k and sin.
struct ContourSpec {
  mpq_class mu;
  double height = 0;      // truncation |Im t| <= height; 0 picks it from the tail bound
  double panel = 1.0;     // base panel width in the original variable
  int nodes = 20;         // Gauss nodes per panel
  int min_refinements = 1;
  int max_refinements = 4;
  long target_bits = 100;  // relative accuracy goal
};

struct QuadratureResult {
  BigComplex value;
  BigFloat error;       // refinement delta + truncation + rounding
  BigFloat truncation;  // bound on the omitted |Im t| > height part
  BigFloat rounding;
  std::vector<BigFloat> deltas;  // |I_{2P} - I_P| per refinement
  mpq_class abscissa;             // M in the original variable
  double height = 0;
  long panels = 0;  // at the finest level
  prec_t working_prec = 0;
};

// Contour with M = floor(n mu0) + 1/2.
ContourSpec default_contour(const Params& p);
mpq_class contour_abscissa(const Params& p, const mpq_class& mu);

// S_n = (pi^{k-1} i / 2) int_{M - i inf}^{M + i inf} cot_k(pi t) R_n(t) dt.
QuadratureResult s_n_contour(const Params& p, const ContourSpec& spec, prec_t prec,
                             unsigned jobs = 1);

// S_n = prefactor * S~_n with prefactor = -n (qn)^{-(k-1+delta_k)} sqrt(2 r pi / (qn)).
BigFloat sn_prefactor(const Params& p, prec_t prec);

// g_n(z) = R_n(nz) pi^k (qn)^{k-1+delta_k} sqrt(qn / (2 r pi)) / (sin^k(n pi z) e^{n f(z)}).
BigComplex gn_eval(const Params& p, const BigComplex& z, prec_t prec);

// J_{n,lambda} = (1/2 pi i) int e^{n(f(z) - lambda pi i z)} g_n(z) dz on Re z = mu.
QuadratureResult j_integral(const Params& p, const mpq_class& lambda, const ContourSpec& spec,
                            prec_t prec, unsigned jobs = 1);

struct Decomposition {
  BigFloat s_tilde;     // S_n / prefactor
  BigFloat sum;         // sum_l c_l Re J_{n,l}
  BigFloat residual;    // |s_tilde - sum|
  BigFloat error;       // combined error bound
  std::vector<std::pair<long, QuadratureResult>> parts;
  bool ok() const { return residual <= error; }
};
// `s_n` is the exact-route value with its error bound.
Decomposition decomposition_check(const Params& p, const Certified& s_n, const ContourSpec& spec,
                                  prec_t prec, unsigned jobs = 1);

struct GnDeviation {
  long n;
  BigFloat max_rel;  // max |g_n / g - 1| over the segment
};
// Segment Re z = q/2, Im z in [1/10, 1].
std::vector<GnDeviation> gn_convergence(const Shape& s, const std::vector<long>& n_list,
                                        prec_t prec);

struct FitRow {
  long n;
  BigFloat log_s;      // log |S_n|
  BigFloat predicted;  // log of the saddle-point prediction
  BigFloat residual;   // (log|S_n| - log|cos(n omega + phi)| + alpha n) / n
  BigFloat cos_factor;
  bool excluded;  // |cos| < 1e-3
};
struct FitReport {
  Shape shape;
  BigFloat alpha;
  BigFloat omega;
  BigFloat phi;
  std::vector<FitRow> rows;
  // |residual| strictly decreasing over the retained rows.
  bool decreasing() const;
  // |log|S_n| - predicted| <= log n at the largest retained n.
  bool gaussian_ok() const;
};
FitReport asymptotic_fit(const Shape& s, const std::vector<long>& n_list, prec_t prec,
                         unsigned jobs = 1);

}  // namespace zf
