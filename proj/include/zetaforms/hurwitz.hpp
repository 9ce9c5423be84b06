#pragma once

#include <gmpxx.h>

#include <map>

#include "zetaforms/linform.hpp"
#include "zetaforms/numeric.hpp"
#include "zetaforms/params.hpp"

namespace zf {

struct ZetaValue {
  long k;
  long a;
  long q;
  BigFloat value;
  BigFloat error_bound;  // absolute, < 2^-bits
};

struct ZetaPair {
  BigFloat plus;
  BigFloat minus;
  BigFloat error_bound;
};

// Exact Bernoulli number B_j for even j >= 2 (tangent-number recurrence).
mpq_class bernoulli(long j);

// zeta(k, a/q) with absolute error < 2^-bits.  Results are cached by the
// reduced fraction and the requested bits.
ZetaValue hurwitz_zeta(long k, long a, long q, long bits);
ZetaPair zeta_pair(long k, long a, long q, long bits);

struct DistributionCheck {
  BigFloat residual;
  BigFloat threshold;  // (p + 2) 2^-bits
  bool ok() const { return residual < threshold; }
};
DistributionCheck verify_distribution(long k, long qprime, long p, long a, long bits);

Certified zeta_via_odd_parts(long k, long q, long bits);

// Basis values for S_n: zeta(k) (odd k only) and zeta^-(k, a/q), 1 <= a < q/2.
struct ZetaBasis {
  long k = 0;
  long q = 0;
  long bits = 0;
  Certified zeta_k{BigFloat(64), BigFloat(64)};
  std::map<long, Certified> minus;
};
ZetaBasis zeta_basis(long k, long q, long bits);

// S_n = rho0 + rho1 delta_k zeta(k) + sum_a rho_a zeta^-(k, a/q).  Throws
// NumericFailure if the propagated error cannot reach 2^-out_bits.
Certified s_n_via_zeta(const LinearForm& f, const ZetaBasis& z, long out_bits);

void clear_zeta_cache();
std::size_t zeta_cache_size();

}  // namespace zf
