#pragma once

#include <optional>
#include <vector>

#include "zetaforms/numeric.hpp"
#include "zetaforms/params.hpp"

namespace zf {

struct CriterionInput {
  BigFloat alpha;
  BigFloat beta;
  std::vector<BigFloat> gammas;           // gamma_1, gamma_2, ...
  std::optional<BigFloat> gamma_constant;  // used past the end of `gammas`
};

struct CriterionVerdict {
  bool divergent = false;
  long d = 0;  // smallest d with d >= 1 + (alpha + gamma_1 + ... + gamma_{d-1}) / beta
};

// Throws InvalidInput on non-positive alpha/beta, negative gammas, or a gamma
// list too short to settle the search without a constant rule.
CriterionVerdict nesterenko_bound(const CriterionInput& in);

struct BoundReport {
  long k, q, r;
  BigFloat alpha, beta, alpha_hat, beta_hat;
  BigFloat d_lower;         // 1 + alpha_hat / (beta_hat - krq)
  BigFloat ratio_to_log2q;  // d_lower / (log q / log 2)
  BigFloat omega, phi;
  bool alpha_hat_positive;
  // Second disjunct of the non-degeneracy condition, numerically:
  // omega in pi Z and phi in pi/2 + pi Z are tested to 2^-(prec/2).
  bool omega_in_pi_z;
  bool phi_in_half_pi_z;
};
BoundReport dimension_lower(long k, long q, long r, prec_t prec);

struct TrendRow {
  long q, r;
  BigFloat d_lower;
  BigFloat d_ratio;      // d_lower / (log q / log 2)
  BigFloat alpha_ratio;  // alpha / (q log^3 q)
  BigFloat beta_ratio;   // beta / (q log^2 q log 2)
  bool alpha_hat_positive;
};
std::vector<TrendRow> trend_scan(long k, const std::vector<long>& q_list, prec_t prec,
                                 unsigned jobs = 1);

// Each series approaches 1 with at most one step moving away from it, and
// ends strictly closer to 1 than it starts.
struct TrendVerdict {
  bool d_ratio, alpha_ratio, beta_ratio;
  bool all() const { return d_ratio && alpha_ratio && beta_ratio; }
};
TrendVerdict trend_verdict(const std::vector<TrendRow>& rows);

}  // namespace zf
