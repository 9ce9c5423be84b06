#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "zetaforms/numeric.hpp"

namespace zf {

// Dense polynomial over Q; coefficient i multiplies X^i.
using QPoly = std::vector<mpq_class>;

QPoly poly_derivative(const QPoly& p);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_scale(const QPoly& a, const mpq_class& s);
void poly_trim(QPoly& p);
long poly_degree(const QPoly& p);
// Chebyshev T_l in the monomial basis.
QPoly chebyshev_t(long l);

struct CotkExpansion {
  long k;
  QPoly vk;
  std::map<long, mpq_class> c;  // 0 <= l <= k-2, l = k mod 2
};

// sin^k(z) cot_k(z) = V_k(cos z), cot_k = (-1)^{k-1}/(k-1)! d^{k-1} cot.
QPoly vk_polynomial(long k);
CotkExpansion cosine_expansion(const QPoly& vk, long k);
// Cached per k.
const CotkExpansion& cotk_expansion(long k);

// cot_k(pi z) via V_k(cos pi z) / sin^k(pi z).  Throws NumericFailure when z
// is within 2^(-prec/2) of an integer.
BigComplex cotk_eval(long k, const BigComplex& z, prec_t prec);

// pi^-k * symmetric lattice sum over |m - round(Re z)| <= M of (z - m)^-k,
// with a bound on the omitted terms.
struct CotkSeries {
  BigComplex value;
  BigFloat tail;
};
CotkSeries cotk_series(long k, const BigComplex& z, long M, prec_t prec);

}  // namespace zf
