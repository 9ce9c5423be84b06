#include "zetaforms/cotk.hpp"

#include <mutex>

#include "zetaforms/errors.hpp"

namespace zf {

void poly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

long poly_degree(const QPoly& p) {
  for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

QPoly poly_derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  poly_trim(d);
  return d;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

QPoly poly_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

QPoly poly_scale(const QPoly& a, const mpq_class& s) {
  QPoly r = a;
  for (auto& x : r) x *= s;
  poly_trim(r);
  return r;
}

QPoly chebyshev_t(long l) {
  QPoly t0{1}, t1{0, 1};
  if (l == 0) return t0;
  for (long i = 1; i < l; ++i) {
    QPoly t2 = poly_add(poly_mul(QPoly{0, 2}, t1), poly_scale(t0, -1));
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

QPoly vk_polynomial(long k) {
  if (k < 1) throw InvalidInput("vk_polynomial: k must be >= 1");
  QPoly v{0, 1};  // V_1 = X
  const QPoly one_minus_x2{1, 0, -1};
  for (long j = 1; j < k; ++j) {
    // V_{j+1} = ((1 - X^2) V_j' + j X V_j) / j
    QPoly next = poly_add(poly_mul(one_minus_x2, poly_derivative(v)), poly_mul(QPoly{0, j}, v));
    v = poly_scale(next, mpq_class(1, j));
  }
  return v;
}

CotkExpansion cosine_expansion(const QPoly& vk, long k) {
  CotkExpansion e{k, vk, {}};
  QPoly rest = vk;
  poly_trim(rest);
  // Peel off the leading Chebyshev term; T_l has leading coefficient 2^{l-1}.
  for (long d = poly_degree(rest); d >= 0; d = poly_degree(rest)) {
    QPoly t = chebyshev_t(d);
    mpq_class coef = rest[d] / t[d];
    e.c[d] = coef;
    rest = poly_add(rest, poly_scale(t, -coef));
  }
  return e;
}

const CotkExpansion& cotk_expansion(long k) {
  static std::mutex mutex;
  static std::map<long, CotkExpansion> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, cosine_expansion(vk_polynomial(k), k)).first;
  return it->second;
}

namespace {

BigComplex horner(const QPoly& p, const BigComplex& x, prec_t prec) {
  BigComplex acc(prec);
  for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) {
    acc *= x;
    acc += BigFloat(p[i], prec);
  }
  return acc;
}

}  // namespace

BigComplex cotk_eval(long k, const BigComplex& z, prec_t prec) {
  if (k < 1) throw InvalidInput("cotk_eval: k must be >= 1");
  prec_t w = prec + 16;
  BigComplex zw(z.re.with_prec(w), z.im.with_prec(w));
  BigFloat nearest = floor(zw.re + BigFloat(0.5, w));
  BigFloat dist = abs(BigComplex(zw.re - nearest, zw.im));
  if (dist < pow2(-prec / 2, 64))
    throw NumericFailure("cotk_eval: z within 2^-" + std::to_string(prec / 2) + " of an integer");
  // Reduce the real part to [-1/2, 1/2] (period 1) before scaling by pi.
  BigComplex u(zw.re - nearest, zw.im);
  BigFloat pi = const_pi(w);
  u *= pi;
  BigComplex s = sin(u), c = cos(u);
  BigComplex v = horner(cotk_expansion(k).vk, c, w) / pow(s, k);
  v.re.set_prec(prec);
  v.im.set_prec(prec);
  return v;
}

CotkSeries cotk_series(long k, const BigComplex& z, long M, prec_t prec) {
  if (k < 2) throw InvalidInput("cotk_series: k must be >= 2");
  if (M < 1) throw InvalidInput("cotk_series: M must be >= 1");
  prec_t w = prec + 16;
  BigFloat m0 = floor(z.re.with_prec(w) + BigFloat(0.5, w));
  long center = mpfr_get_si(m0.get(), MPFR_RNDN);
  BigComplex acc(w);
  for (long j = -M; j <= M; ++j) {
    BigComplex d(z.re.with_prec(w) - BigFloat(center + j, w), z.im.with_prec(w));
    acc += pow(d, -k);
  }
  BigFloat pik = pow(const_pi(w), k);
  acc /= pik;
  // |z - m| >= |m - m0| - 1/2, so the two tails are each at most
  // sum_{j>M} (j - 1/2)^-k <= (M - 1/2)^{1-k} / (k - 1).
  BigFloat half_off = BigFloat(M, 64) - BigFloat(0.5, 64);
  BigFloat tail = 2L * pow(half_off, 1 - k) / (k - 1) / pik.with_prec(64);
  acc.re.set_prec(prec);
  acc.im.set_prec(prec);
  return {acc, tail};
}

}  // namespace zf
