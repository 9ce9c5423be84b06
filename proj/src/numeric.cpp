#include "zetaforms/numeric.hpp"

#include <climits>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace zf {

namespace {
constexpr mpfr_rnd_t RN = MPFR_RNDN;

prec_t pmax(const BigFloat& a, const BigFloat& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

BigFloat::BigFloat(prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, RN);
}

BigFloat::BigFloat(double v, prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, RN);
}

BigFloat::BigFloat(const mpz_class& v, prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, v.get_mpz_t(), RN);
}

BigFloat::BigFloat(const mpq_class& v, prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.get_mpq_t(), RN);
}

BigFloat::BigFloat(const std::string& decimal, prec_t prec) {
  mpfr_init2(v_, prec);
  if (mpfr_set_str(v_, decimal.c_str(), 10, RN) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("not a decimal number: " + decimal);
  }
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, RN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  // Leave the source as a valid 2-bit zero; cheaper than copying limbs.
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, RN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

void BigFloat::set_prec(prec_t p) { mpfr_prec_round(v_, p, RN); }

BigFloat BigFloat::with_prec(prec_t p) const {
  BigFloat r(p);
  mpfr_set(r.v_, v_, RN);
  return r;
}

long BigFloat::exponent2() const {
  if (mpfr_zero_p(v_)) return LONG_MIN / 2;
  if (!mpfr_number_p(v_)) return LONG_MAX / 2;
  return mpfr_get_exp(v_);
}

std::string BigFloat::to_string(int digits) const {
  if (digits < 1) digits = 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  if (o.prec() > prec()) set_prec(o.prec());
  mpfr_add(v_, v_, o.v_, RN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  if (o.prec() > prec()) set_prec(o.prec());
  mpfr_sub(v_, v_, o.v_, RN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  if (o.prec() > prec()) set_prec(o.prec());
  mpfr_mul(v_, v_, o.v_, RN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  if (o.prec() > prec()) set_prec(o.prec());
  mpfr_div(v_, v_, o.v_, RN);
  return *this;
}
BigFloat& BigFloat::operator+=(long o) {
  mpfr_add_si(v_, v_, o, RN);
  return *this;
}
BigFloat& BigFloat::operator-=(long o) {
  mpfr_sub_si(v_, v_, o, RN);
  return *this;
}
BigFloat& BigFloat::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, RN);
  return *this;
}
BigFloat& BigFloat::operator/=(long o) {
  mpfr_div_si(v_, v_, o, RN);
  return *this;
}
BigFloat BigFloat::operator-() const {
  BigFloat r(prec());
  mpfr_neg(r.v_, v_, RN);
  return r;
}

#define ZF_BINOP(OP, FN)                                        \
  BigFloat operator OP(const BigFloat& a, const BigFloat& b) { \
    BigFloat r(pmax(a, b));                                     \
    FN(r.get(), a.get(), b.get(), RN);                          \
    return r;                                                   \
  }
ZF_BINOP(+, mpfr_add)
ZF_BINOP(-, mpfr_sub)
ZF_BINOP(*, mpfr_mul)
ZF_BINOP(/, mpfr_div)
#undef ZF_BINOP

BigFloat operator+(const BigFloat& a, long b) { BigFloat r(a); r += b; return r; }
BigFloat operator-(const BigFloat& a, long b) { BigFloat r(a); r -= b; return r; }
BigFloat operator*(const BigFloat& a, long b) { BigFloat r(a); r *= b; return r; }
BigFloat operator/(const BigFloat& a, long b) { BigFloat r(a); r /= b; return r; }
BigFloat operator*(long a, const BigFloat& b) { return b * a; }
BigFloat operator-(long a, const BigFloat& b) {
  BigFloat r(b.prec());
  mpfr_si_sub(r.get(), a, b.get(), RN);
  return r;
}

BigFloat operator+(long a, const BigFloat& b) { return b + a; }

BigFloat operator/(long a, const BigFloat& b) {
  BigFloat r(b.prec());
  mpfr_si_div(r.get(), a, b.get(), RN);
  return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.get(), b.get());
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}
bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
std::partial_ordering operator<=>(const BigFloat& a, long b) {
  if (a.is_nan()) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.get(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}
bool operator==(const BigFloat& a, long b) { return !a.is_nan() && mpfr_cmp_si(a.get(), b) == 0; }
std::partial_ordering operator<=>(const BigFloat& a, double b) {
  if (a.is_nan() || std::isnan(b)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_d(a.get(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
  return os << x.to_string(static_cast<int>(os.precision()));
}

#define ZF_UNARY(NAME, FN)                 \
  BigFloat NAME(const BigFloat& x) {       \
    BigFloat r(x.prec());                  \
    FN(r.get(), x.get(), RN);              \
    return r;                              \
  }
ZF_UNARY(abs, mpfr_abs)
ZF_UNARY(sqrt, mpfr_sqrt)
ZF_UNARY(log, mpfr_log)
ZF_UNARY(exp, mpfr_exp)
ZF_UNARY(sin, mpfr_sin)
ZF_UNARY(cos, mpfr_cos)
ZF_UNARY(sinh, mpfr_sinh)
ZF_UNARY(cosh, mpfr_cosh)
ZF_UNARY(atan, mpfr_atan)
#undef ZF_UNARY

BigFloat floor(const BigFloat& x) {
  BigFloat r(x.prec());
  mpfr_floor(r.get(), x.get());
  return r;
}

BigFloat lngamma(const BigFloat& x) {
  BigFloat r(x.prec());
  mpfr_lngamma(r.get(), x.get(), RN);
  return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(pmax(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), RN);
  return r;
}

BigFloat pow(const BigFloat& x, long e) {
  BigFloat r(x.prec());
  mpfr_pow_si(r.get(), x.get(), e, RN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

BigFloat pow2(long e, prec_t prec) {
  BigFloat r(1L, prec);
  mpfr_mul_2si(r.get(), r.get(), e, RN);
  return r;
}

BigFloat const_pi(prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.get(), RN);
  return r;
}

BigFloat const_log2(prec_t prec) {
  BigFloat r(prec);
  mpfr_const_log2(r.get(), RN);
  return r;
}

BigFloat infinity(int sign, prec_t prec) {
  BigFloat r(prec);
  mpfr_set_inf(r.get(), sign);
  return r;
}

// ---- complex ----

BigComplex& BigComplex::operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
BigComplex& BigComplex::operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat t = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(t);
  return *this;
}
BigComplex& BigComplex::operator/=(const BigComplex& o) {
  BigFloat d = o.re * o.re + o.im * o.im;
  BigFloat t = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(t);
  return *this;
}
BigComplex& BigComplex::operator*=(const BigFloat& o) { re *= o; im *= o; return *this; }
BigComplex& BigComplex::operator/=(const BigFloat& o) { re /= o; im /= o; return *this; }
BigComplex& BigComplex::operator+=(const BigFloat& o) { re += o; return *this; }
BigComplex& BigComplex::operator-=(const BigFloat& o) { re -= o; return *this; }
BigComplex& BigComplex::operator*=(long o) { re *= o; im *= o; return *this; }
BigComplex& BigComplex::operator+=(long o) { re += o; return *this; }
BigComplex BigComplex::operator-() const { return BigComplex(-re, -im); }

BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
BigComplex operator+(BigComplex a, const BigFloat& b) { return a += b; }
BigComplex operator-(BigComplex a, const BigFloat& b) { return a -= b; }
BigComplex operator*(BigComplex a, const BigFloat& b) { return a *= b; }
BigComplex operator/(BigComplex a, const BigFloat& b) { return a /= b; }
BigComplex operator+(BigComplex a, long b) { return a += b; }
BigComplex operator-(BigComplex a, long b) { a.re -= b; return a; }
BigComplex operator*(BigComplex a, long b) { return a *= b; }
BigComplex operator-(const BigFloat& a, BigComplex b) {
  b.re = a - b.re;
  b.im = -b.im;
  return b;
}
BigComplex operator*(long a, BigComplex b) { return b *= a; }

BigFloat abs(const BigComplex& z) {
  BigFloat r(z.prec());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), RN);
  return r;
}

BigFloat norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }

BigFloat arg(const BigComplex& z) { return atan2(z.im, z.re); }

BigComplex conj(const BigComplex& z) { return BigComplex(z.re, -z.im); }

BigComplex log(const BigComplex& z) { return BigComplex(log(abs(z)), arg(z)); }

BigComplex exp(const BigComplex& z) {
  BigFloat m = exp(z.re);
  BigFloat s(z.prec()), c(z.prec());
  mpfr_sin_cos(s.get(), c.get(), z.im.get(), RN);
  return BigComplex(m * c, m * s);
}

BigComplex sqrt(const BigComplex& z) {
  prec_t p = z.prec();
  if (z.re.is_zero() && z.im.is_zero()) return BigComplex(p);
  BigFloat t = sqrt((abs(z) + abs(z.re)) / 2L);
  if (z.re.sign() >= 0) return BigComplex(t, z.im / (2L * t));
  BigFloat u = abs(z.im) / (2L * t);
  BigFloat v = t;
  if (mpfr_signbit(z.im.get())) v = -v;
  return BigComplex(u, v);
}

BigComplex sin(const BigComplex& z) {
  prec_t p = z.prec();
  BigFloat s(p), c(p), sh(p), ch(p);
  mpfr_sin_cos(s.get(), c.get(), z.re.get(), RN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im.get(), RN);
  return BigComplex(s * ch, c * sh);
}

BigComplex cos(const BigComplex& z) {
  prec_t p = z.prec();
  BigFloat s(p), c(p), sh(p), ch(p);
  mpfr_sin_cos(s.get(), c.get(), z.re.get(), RN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im.get(), RN);
  return BigComplex(c * ch, -(s * sh));
}

BigComplex pow(const BigComplex& z, long e) {
  if (e < 0) {
    BigComplex one(BigFloat(1L, z.prec()));
    return one / pow(z, -e);
  }
  BigComplex result(BigFloat(1L, z.prec()));
  BigComplex base = z;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

BigComplex mul_i(const BigComplex& z) { return BigComplex(-z.im, z.re); }

long err2exp(const BigFloat& err) {
  if (err.is_zero()) return LONG_MIN;
  return err.exponent2();
}

int digits_for(const BigFloat& value, long e) {
  if (value.is_zero() || e == LONG_MIN) return 20;
  long span = value.exponent2() - e;
  if (span < 1) return 2;
  return static_cast<int>(std::ceil(span * 0.30102999566398120)) + 2;
}

}  // namespace zf
