#pragma once

#include <gmpxx.h>

#include "zetaforms/numeric.hpp"
#include "zetaforms/params.hpp"

namespace zf {

// R_n(t) = K (2qt + rqn)^{1-delta_k} (t-qn)_{qn}^k (t+rn+1)_{qn}^k / (qt)_{rqn+1}
// with K = (rqn)! q^{2kqn} prod_p p^{2kqn/(p-1)} / (qn)!^{2k}.
class RnProduct {
 public:
  RnProduct(const Params& p, prec_t prec);

  const Params& params() const { return p_; }
  prec_t prec() const { return prec_; }
  const mpq_class& k_exact() const { return K_exact_; }
  const BigFloat& k_value() const { return K_; }

  BigComplex operator()(const BigComplex& t) const;
  BigFloat operator()(const BigFloat& t) const;
  // Exact value of R_n(t) (qt + j) at t = -j/q (residue data), straight from
  // the product, skipping the vanishing denominator factor.
  mpq_class residue_exact(long j) const;

 private:
  Params p_;
  prec_t prec_;
  mpq_class K_exact_;
  BigFloat K_;
};

}  // namespace zf
