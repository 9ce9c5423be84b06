#include "zetaforms/hurwitz.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <tuple>

#include "zetaforms/errors.hpp"

namespace zf {

namespace {

std::mutex bernoulli_mutex;
std::vector<mpq_class> bernoulli_table;  // index i -> B_{2i}, i >= 1

void extend_bernoulli(long count) {
  // Tangent numbers T_1..T_count (Brent-Harvey), integer-only.
  std::vector<mpz_class> T(static_cast<std::size_t>(count + 1));
  T[1] = 1;
  for (long i = 2; i <= count; ++i) T[i] = (i - 1) * T[i - 1];
  for (long i = 2; i <= count; ++i)
    for (long j = i; j <= count; ++j) T[j] = (j - i) * T[j - 1] + (j - i + 2) * T[j];
  bernoulli_table.assign(static_cast<std::size_t>(count + 1), mpq_class(0));
  for (long i = 1; i <= count; ++i) {
    mpz_class four = mpz_class(1) << (2 * i);
    mpq_class b(2 * i * T[i], four * (four - 1));
    b.canonicalize();
    if ((i - 1) & 1) b = -b;
    bernoulli_table[i] = b;
  }
}

using ZetaKey = std::tuple<long, long, long, long>;
std::shared_mutex zeta_mutex;
std::map<ZetaKey, ZetaValue> zeta_cache;

struct EmResult {
  BigFloat value;
  BigFloat error;
};

// Euler-Maclaurin at cutoff N and working precision w; returns nullopt-like
// failure via `ok` when the remainder condition N + x > k + 2J breaks first.
bool euler_maclaurin(long k, const mpq_class& x, long N, prec_t w, long bits, EmResult& out) {
  BigFloat xf(x, w);
  BigFloat sum(w), abs_sum(w), t(w);
  for (long m = 0; m < N; ++m) {
    t = xf + m;
    mpfr_pow_si(t.get(), t.get(), -k, MPFR_RNDN);
    sum += t;
  }
  abs_sum = sum;
  BigFloat y = xf + N;
  BigFloat tail = pow(y, 1 - k) / (k - 1) + pow(y, -k) / 2L;
  sum += tail;
  abs_sum += tail;

  const BigFloat target = pow2(-bits - 2, 64);
  const double ylim = mpq_class(x + N).get_d() - static_cast<double>(k);
  BigFloat y2 = y * y;
  BigFloat P = BigFloat(k, w) / 2L * pow(y, -k - 1);  // (k)_{2j-1} / (2j)! y^{-k-2j+1}, j=1
  BigFloat omitted(w);
  long j = 1;
  for (;; ++j) {
    if (2.0 * (j - 1) >= ylim) return false;  // N + x > k + 2J must hold for the J kept terms
    {
      std::lock_guard lock(bernoulli_mutex);
      if (static_cast<long>(bernoulli_table.size()) <= j) extend_bernoulli(std::max<long>(2 * j, 64));
      omitted = BigFloat(bernoulli_table[j], w) * P;
    }
    if (abs(omitted) < target) break;
    sum += omitted;
    abs_sum += abs(omitted);
    P *= (k + 2 * j - 1) * (k + 2 * j);
    P /= (2 * j + 1) * (2 * j + 2);
    P /= y2;
  }
  // Rounding: a few ulps per term, summed over N + J terms.
  BigFloat rounding = abs_sum * pow2(-w + 3, 64) * (N + j + 8);
  out.value = sum;
  out.error = abs(omitted).with_prec(64) + rounding.with_prec(64);
  return true;
}

}  // namespace

mpq_class bernoulli(long j) {
  if (j < 2 || (j & 1)) throw InvalidInput("bernoulli: j must be even and >= 2");
  std::lock_guard lock(bernoulli_mutex);
  long i = j / 2;
  if (static_cast<long>(bernoulli_table.size()) <= i) extend_bernoulli(std::max<long>(i, 64));
  return bernoulli_table[i];
}

ZetaValue hurwitz_zeta(long k, long a, long q, long bits) {
  if (k < 2) throw InvalidInput("hurwitz_zeta: k must be >= 2");
  if (q < 1 || a < 1 || a > q) throw InvalidInput("hurwitz_zeta: need 1 <= a <= q");
  if (bits < 8) throw InvalidInput("hurwitz_zeta: bits too small");
  long g = std::gcd(a, q);
  ZetaKey key{k, a / g, q / g, bits};
  {
    std::shared_lock lock(zeta_mutex);
    auto it = zeta_cache.find(key);
    if (it != zeta_cache.end()) {
      ZetaValue v = it->second;
      v.a = a;
      v.q = q;
      return v;
    }
  }

  mpq_class x(a / g, q / g);
  // zeta(k, x) <= x^-k + zeta(k) <= x^-k + 2
  long mag = static_cast<long>(std::ceil(k * std::log2(static_cast<double>(q / g) / (a / g)))) + 2;
  long N = std::max<long>(2 * k, static_cast<long>(std::ceil(0.18 * bits)));
  prec_t w = bits + mag + 32 + static_cast<long>(std::log2(static_cast<double>(bits) + 64));
  EmResult res{BigFloat(w), BigFloat(64)};
  for (int attempt = 0;; ++attempt) {
    if (attempt > 40 || N > 50'000'000) throw NumericFailure("hurwitz_zeta: precision unreachable");
    if (!euler_maclaurin(k, x, N, w, bits, res)) {
      N += N / 2;
      continue;
    }
    if (res.error < pow2(-bits, 64)) break;
    w += 32;
  }
  ZetaValue v{k, a / g, q / g, res.value, res.error};
  {
    std::unique_lock lock(zeta_mutex);
    zeta_cache.emplace(key, v);
  }
  v.a = a;
  v.q = q;
  return v;
}

ZetaPair zeta_pair(long k, long a, long q, long bits) {
  if (!(1 <= a && a < q)) throw InvalidInput("zeta_pair: need 1 <= a < q");
  ZetaValue z1 = hurwitz_zeta(k, a, q, bits + 2);
  ZetaValue z2 = hurwitz_zeta(k, q - a, q, bits + 2);
  prec_t w = std::max(z1.value.prec(), z2.value.prec()) + 8;
  BigFloat v1 = z1.value.with_prec(w), v2 = z2.value.with_prec(w);
  BigFloat err = z1.error_bound + z2.error_bound + pow2(-w + 2, 64) * (v1 + v2);
  if (k & 1) return {v1 - v2, v1 + v2, err};
  return {v1 + v2, v1 - v2, err};
}

DistributionCheck verify_distribution(long k, long qprime, long p, long a, long bits) {
  if (!is_prime(p)) throw InvalidInput("verify_distribution: p must be prime");
  if (qprime < 1 || a < 1 || a >= qprime || std::gcd(a, qprime) != 1)
    throw InvalidInput("verify_distribution: need 1 <= a < q', gcd(a, q') = 1");
  const long q = p * qprime;
  long lifted = bits + static_cast<long>(std::ceil(k * std::log2(static_cast<double>(p)))) + 4;
  ZetaValue lhs = hurwitz_zeta(k, a, qprime, lifted);
  prec_t w = lhs.value.prec() + 16;
  BigFloat diff = pow(BigFloat(p, w), k) * lhs.value.with_prec(w);
  for (long j = 0; j < p; ++j) diff -= hurwitz_zeta(k, a + j * qprime, q, lifted).value.with_prec(w);
  return {abs(diff).with_prec(64), BigFloat(p + 2, 64) * pow2(-bits, 64)};
}

Certified zeta_via_odd_parts(long k, long q, long bits) {
  if ((k & 1) == 0) throw InvalidInput("zeta_via_odd_parts: k must be odd");
  if (q < 2) throw InvalidInput("zeta_via_odd_parts: q must be >= 2");
  long lifted = bits + static_cast<long>(std::ceil(std::log2(static_cast<double>(q)))) + 4;
  prec_t w = lifted + 32;
  BigFloat sum(w), err(64);
  for (long a = 1; a < q; ++a) {
    ZetaPair zp = zeta_pair(k, a, q, lifted);
    sum += zp.minus;
    err += zp.error_bound;
  }
  mpz_class qk;
  mpz_ui_pow_ui(qk.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(k));
  BigFloat denom(mpz_class(2 * (qk - 1)), w);
  return {sum / denom, err / denom.with_prec(64) + pow2(-w + 4, 64)};
}

ZetaBasis zeta_basis(long k, long q, long bits) {
  ZetaBasis b;
  b.k = k;
  b.q = q;
  b.bits = bits;
  if (k & 1) {
    ZetaValue z = hurwitz_zeta(k, 1, 1, bits);
    b.zeta_k = {z.value, z.error_bound};
  }
  for (long a = 1; 2 * a < q; ++a) {
    ZetaPair zp = zeta_pair(k, a, q, bits);
    b.minus.emplace(a, Certified{zp.minus, zp.error_bound});
  }
  return b;
}

Certified s_n_via_zeta(const LinearForm& f, const ZetaBasis& z, long out_bits) {
  const Params& p = f.params;
  if (z.k != p.k || z.q != p.q) throw InvalidInput("s_n_via_zeta: basis does not match params");
  // Room for the largest coefficient on top of the basis precision.
  long coef_bits = 0;
  auto track = [&](const mpq_class& v) {
    if (v == 0) return;
    long e = static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 2)) + 1;
    coef_bits = std::max(coef_bits, e);
  };
  track(f.rho0);
  track(f.rho1);
  for (const auto& [a, v] : f.rho_a) track(v);
  prec_t w = z.bits + coef_bits + 64;

  BigFloat sum(f.rho0, w);
  BigFloat err(64), mag = abs(sum).with_prec(64);
  auto add = [&](const mpq_class& coef, const Certified& val) {
    BigFloat c(coef, w);
    BigFloat term = c * val.value.with_prec(w);
    sum += term;
    err += abs(c).with_prec(64) * val.error;
    mag += abs(term).with_prec(64);
  };
  if (p.delta_k() == 1) add(f.rho1, z.zeta_k);
  for (const auto& [a, v] : f.rho_a) {
    auto it = z.minus.find(a);
    if (it == z.minus.end()) throw InvalidInput("s_n_via_zeta: missing basis value");
    add(v, it->second);
  }
  err += mag * pow2(-w + 4, 64);
  if (sum.is_zero() && mag.is_zero()) return {sum, err};
  if (!(err <= abs(sum).with_prec(64) * pow2(-out_bits, 64)))
    throw NumericFailure("s_n_via_zeta: error " + err.to_string(4) + " exceeds 2^-" +
                         std::to_string(out_bits) + " relative to |S_n| = " + abs(sum).to_string(4));
  return {sum, err};
}

void clear_zeta_cache() {
  std::unique_lock lock(zeta_mutex);
  zeta_cache.clear();
}

std::size_t zeta_cache_size() {
  std::shared_lock lock(zeta_mutex);
  return zeta_cache.size();
}

}  // namespace zf
