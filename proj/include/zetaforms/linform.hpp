#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zetaforms/numeric.hpp"
#include "zetaforms/params.hpp"

namespace zf {

struct CoefficientTable {
  Params params;
  // c[j] = numerators; the coefficient is c[j] / denominator.  The
  // denominator is 1 whenever every coefficient is integral (always, in
  // strict mode).
  std::vector<mpz_class> c;
  mpz_class denominator = 1;
  std::vector<mpq_class> a_factor;
  std::vector<mpq_class> b_factor;
  // Relaxed-mode observations (non-integral A/B/C), empty otherwise.
  std::vector<std::string> findings;

  bool integral() const { return denominator == 1; }
  mpq_class coefficient(long j) const;
};

struct LinearForm {
  Params params;
  mpq_class rho0;
  mpq_class rho1;
  std::map<long, mpq_class> rho_a;  // 1 <= a < q/2
};

CoefficientTable build_coefficients(const Params& p, unsigned jobs = 1);

// Exact integrality/symmetry/factorization checks; returns failed invariant
// names (empty on success).
std::vector<std::string> check_table(const CoefficientTable& t);

LinearForm rho(const Params& p, const CoefficientTable& t);

struct RhoDivisibility {
  bool q_rho1_integral;
  bool q_rho_a_integral;
  bool d_rho0_integral;
  bool all() const { return q_rho1_integral && q_rho_a_integral && d_rho0_integral; }
};
RhoDivisibility check_divisibility(const LinearForm& f);

BigFloat beta_value(const Shape& s, prec_t prec);

struct GrowthPoint {
  long n;
  BigFloat slope;  // log max_j |C_{n,j}| / n
};
std::vector<GrowthPoint> coefficient_growth(const std::vector<Params>& family, prec_t prec,
                                            unsigned jobs = 1);

// R_n^{(k-1)}(m) / (k-1)! as an exact rational.
mpq_class eval_R_derivative_term(const Params& p, const CoefficientTable& t, long m);

struct SeriesPartial {
  mpq_class partial;  // sum over m = 1..terms
  BigFloat tail;      // bound on |sum over m > terms|
};
SeriesPartial s_n_truncated(const Params& p, const CoefficientTable& t, long terms);

// Bound on the series tail after `terms` terms, without the partial sum.
BigFloat series_tail_bound(const Params& p, long terms, prec_t prec = 128);
// First M on the ladder 2qn, M + M/4 + 1, ... whose tail bound is below
// 2^target_exp.
long terms_for_tail(const Params& p, long target_exp);

}  // namespace zf
