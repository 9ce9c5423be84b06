#pragma once

#include <gmpxx.h>

#include <vector>

#include "zetaforms/numeric.hpp"

namespace zf {

// All complex roots of an integer polynomial (coeffs[i] multiplies z^i) by
// Aberth-Ehrlich simultaneous iteration, each root finished with Newton
// steps.  Throws NumericFailure if the iteration does not settle.
std::vector<BigComplex> polynomial_roots(const std::vector<mpz_class>& coeffs, prec_t prec,
                                         int max_iterations = 5000);

BigComplex poly_eval(const std::vector<mpz_class>& coeffs, const BigComplex& z, prec_t prec);

}  // namespace zf
