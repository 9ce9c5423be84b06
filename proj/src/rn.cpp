#include "zetaforms/rn.hpp"

#include "zetaforms/errors.hpp"

namespace zf {

RnProduct::RnProduct(const Params& p, prec_t prec) : p_(p), prec_(prec), K_(prec) {
  const long qn = p.qn(), N = p.rqn(), k = p.k;
  mpz_class num, den, t;
  mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(N));
  mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(p.q), static_cast<unsigned long>(2 * k * qn));
  num *= t;
  for (long pr : p.primes) {
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(pr),
                  static_cast<unsigned long>(2 * k * qn / (pr - 1)));
    num *= t;
  }
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(qn));
  mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(2 * k));
  K_exact_ = mpq_class(num, den);
  K_exact_.canonicalize();
  K_ = BigFloat(K_exact_, prec);
}

BigComplex RnProduct::operator()(const BigComplex& t) const {
  const long q = p_.q, qn = p_.qn(), N = p_.rqn(), rn = p_.rn();
  prec_t w = prec_ + 32;
  BigComplex z(t.re.with_prec(w), t.im.with_prec(w));
  BigComplex num(BigFloat(1L, w)), den(BigFloat(1L, w)), f(w);
  for (long i = 0; i < qn; ++i) {
    f = z;
    f.re -= qn - i;
    num *= f;
    f = z;
    f.re += rn + 1 + i;
    num *= f;
  }
  num = pow(num, p_.k);
  if (p_.delta_k() == 0) {
    f = z * (2 * q);
    f.re += N;
    num *= f;
  }
  BigComplex qz = z * q;
  for (long i = 0; i <= N; ++i) {
    f = qz;
    f.re += i;
    den *= f;
  }
  BigComplex r = num / den;
  r *= K_.with_prec(w);
  r.re.set_prec(prec_);
  r.im.set_prec(prec_);
  return r;
}

BigFloat RnProduct::operator()(const BigFloat& t) const {
  return (*this)(BigComplex(t)).re;
}

mpq_class RnProduct::residue_exact(long j) const {
  const long q = p_.q, qn = p_.qn(), N = p_.rqn(), rn = p_.rn();
  if (j < 0 || j > N) throw InvalidInput("residue_exact: j out of range");
  mpq_class t(-j, q);
  mpq_class num = 1, a = 1, b = 1, den = 1;
  for (long i = 0; i < qn; ++i) {
    a *= t - qn + i;
    b *= t + rn + 1 + i;
  }
  mpq_class ab = a * b;
  for (long i = 0; i < p_.k; ++i) num *= ab;
  if (p_.delta_k() == 0) num *= 2 * q * t + N;
  for (long i = 0; i <= N; ++i)
    if (i != j) den *= q * t + i;
  mpq_class r = K_exact_ * num / den;
  r.canonicalize();
  return r;
}

}  // namespace zf
