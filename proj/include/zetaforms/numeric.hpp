#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace zf {

using prec_t = mpfr_prec_t;

// Owning wrapper over mpfr_t.  Every value carries its own precision; binary
// operations produce the larger of the two operand precisions.  There is no
// process-wide default.
class BigFloat {
 public:
  explicit BigFloat(prec_t prec);
  BigFloat(long v, prec_t prec);
  BigFloat(double v, prec_t prec);
  BigFloat(const mpz_class& v, prec_t prec);
  BigFloat(const mpq_class& v, prec_t prec);
  BigFloat(const std::string& decimal, prec_t prec);

  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  prec_t prec() const { return mpfr_get_prec(v_); }
  // Round to a new precision in place.
  void set_prec(prec_t p);
  BigFloat with_prec(prec_t p) const;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat& operator+=(long o);
  BigFloat& operator-=(long o);
  BigFloat& operator*=(long o);
  BigFloat& operator/=(long o);
  template <std::floating_point D> BigFloat& operator+=(D) = delete;
  template <std::floating_point D> BigFloat& operator-=(D) = delete;
  template <std::floating_point D> BigFloat& operator*=(D) = delete;
  template <std::floating_point D> BigFloat& operator/=(D) = delete;
  BigFloat operator-() const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent2() const;
  // Decimal string with the given number of significant digits.
  std::string to_string(int digits) const;

 private:
  mpfr_t v_;
};

BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);
BigFloat operator+(const BigFloat& a, long b);
BigFloat operator-(const BigFloat& a, long b);
BigFloat operator*(const BigFloat& a, long b);
BigFloat operator/(const BigFloat& a, long b);
BigFloat operator*(long a, const BigFloat& b);
BigFloat operator-(long a, const BigFloat& b);
BigFloat operator+(long a, const BigFloat& b);
BigFloat operator/(long a, const BigFloat& b);
// A double would otherwise convert silently to long.
template <std::floating_point D> BigFloat operator+(const BigFloat&, D) = delete;
template <std::floating_point D> BigFloat operator-(const BigFloat&, D) = delete;
template <std::floating_point D> BigFloat operator*(const BigFloat&, D) = delete;
template <std::floating_point D> BigFloat operator/(const BigFloat&, D) = delete;
template <std::floating_point D> BigFloat operator*(D, const BigFloat&) = delete;
template <std::floating_point D> BigFloat operator-(D, const BigFloat&) = delete;
template <std::floating_point D> BigFloat operator+(D, const BigFloat&) = delete;
template <std::floating_point D> BigFloat operator/(D, const BigFloat&) = delete;

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);
bool operator==(const BigFloat& a, const BigFloat& b);
std::partial_ordering operator<=>(const BigFloat& a, long b);
bool operator==(const BigFloat& a, long b);
std::partial_ordering operator<=>(const BigFloat& a, double b);

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat sinh(const BigFloat& x);
BigFloat cosh(const BigFloat& x);
BigFloat atan(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat pow(const BigFloat& x, long e);
BigFloat lngamma(const BigFloat& x);
BigFloat floor(const BigFloat& x);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat min(const BigFloat& a, const BigFloat& b);
BigFloat pow2(long e, prec_t prec);
BigFloat const_pi(prec_t prec);
BigFloat const_log2(prec_t prec);
BigFloat infinity(int sign, prec_t prec);

struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(prec_t prec) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(BigFloat r) : re(r), im(r.prec()) {}

  prec_t prec() const { return std::max(re.prec(), im.prec()); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex& operator*=(const BigFloat& o);
  BigComplex& operator/=(const BigFloat& o);
  BigComplex& operator+=(const BigFloat& o);
  BigComplex& operator-=(const BigFloat& o);
  BigComplex& operator*=(long o);
  BigComplex& operator+=(long o);
  BigComplex operator-() const;
};

BigComplex operator+(BigComplex a, const BigComplex& b);
BigComplex operator-(BigComplex a, const BigComplex& b);
BigComplex operator*(BigComplex a, const BigComplex& b);
BigComplex operator/(BigComplex a, const BigComplex& b);
BigComplex operator+(BigComplex a, const BigFloat& b);
BigComplex operator-(BigComplex a, const BigFloat& b);
BigComplex operator*(BigComplex a, const BigFloat& b);
BigComplex operator/(BigComplex a, const BigFloat& b);
BigComplex operator+(BigComplex a, long b);
BigComplex operator-(BigComplex a, long b);
BigComplex operator*(BigComplex a, long b);
template <std::floating_point D> BigComplex operator+(BigComplex, D) = delete;
template <std::floating_point D> BigComplex operator-(BigComplex, D) = delete;
template <std::floating_point D> BigComplex operator*(BigComplex, D) = delete;
BigComplex operator-(const BigFloat& a, BigComplex b);
BigComplex operator*(long a, BigComplex b);

BigFloat abs(const BigComplex& z);
BigFloat norm(const BigComplex& z);
BigFloat arg(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex log(const BigComplex& z);  // principal branch
BigComplex exp(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);  // exp(log(z)/2)
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);
BigComplex pow(const BigComplex& z, long e);
BigComplex mul_i(const BigComplex& z);

// Value with an absolute error bound.
struct Certified {
  BigFloat value;
  BigFloat error;
};

// Error exponent e with err <= 2^e (rounded up); -inf maps to LONG_MIN.
long err2exp(const BigFloat& err);

// Decimal digits needed to show `value` down to absolute scale 2^e.
int digits_for(const BigFloat& value, long e);

}  // namespace zf
