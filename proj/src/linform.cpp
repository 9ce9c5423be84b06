#include "zetaforms/linform.hpp"

#include <cmath>
#include <optional>

#include "zetaforms/errors.hpp"
#include "zetaforms/parallel.hpp"

namespace zf {

namespace {

// prod_{i<m}(x + d i) * prod_{p} p^{v_p(m!)} / m!.  Each prefix is integral
// (the p-free part of nu divides the running product), so the division is
// checked rather than assumed.  Returns false if a division is inexact.
bool ap_quotient(mpz_class& out, const mpz_class& x, long d, long m, const std::vector<long>& primes) {
  out = 1;
  mpz_class term;
  for (long nu = 1; nu <= m; ++nu) {
    term = x + d * (nu - 1);
    out *= term;
    unsigned long rest = static_cast<unsigned long>(nu);
    for (long p : primes)
      while (rest % p == 0) rest /= p;
    if (rest == 1) continue;
    if (!mpz_divisible_ui_p(out.get_mpz_t(), rest)) return false;
    mpz_divexact_ui(out.get_mpz_t(), out.get_mpz_t(), rest);
  }
  return true;
}

mpq_class ap_rational(const mpz_class& x, long d, long m) {
  mpz_class num = 1, den = 1;
  for (long nu = 0; nu < m; ++nu) num *= x + d * nu;
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(m));
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

mpz_class pow_z(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

mpq_class CoefficientTable::coefficient(long j) const {
  mpq_class v(c.at(static_cast<std::size_t>(j)), denominator);
  v.canonicalize();
  return v;
}

CoefficientTable build_coefficients(const Params& p, unsigned jobs) {
  const long qn = p.qn(), N = p.rqn();
  const auto& primes = p.primes;

  // prod_p p^{qn/(p-1) - v_p((qn)!)}: restores the prime powers not used to
  // cancel (qn)!.
  mpz_class outer = 1;
  for (long pr : primes) {
    long e = qn / (pr - 1) - factorial_valuation(qn, pr);
    outer *= pow_z(pr, static_cast<unsigned long>(e));
  }
  mpq_class outer_full = 1;
  for (long pr : primes) outer_full *= mpq_class(pow_z(pr, static_cast<unsigned long>(qn / (pr - 1))));

  // Binomials by multiplicative recurrence.
  std::vector<mpz_class> binom(static_cast<std::size_t>(N + 1));
  binom[0] = 1;
  for (long j = 0; j < N; ++j) binom[j + 1] = binom[j] * (N - j) / (j + 1);

  CoefficientTable t;
  t.params = p;
  t.a_factor.resize(static_cast<std::size_t>(N + 1));
  t.b_factor.resize(static_cast<std::size_t>(N + 1));
  std::vector<char> exact(static_cast<std::size_t>(N + 1), 1);

  parallel_for(static_cast<std::size_t>(N + 1), jobs, [&](std::size_t idx) {
    long j = static_cast<long>(idx);
    mpz_class xa = -j - p.q * qn;
    mpz_class xb = N + p.q - j;
    mpz_class a, b;
    bool ok_a = ap_quotient(a, xa, p.q, qn, primes);
    bool ok_b = ap_quotient(b, xb, p.q, qn, primes);
    t.a_factor[idx] = ok_a ? mpq_class(a * outer) : ap_rational(xa, p.q, qn) * outer_full;
    t.b_factor[idx] = ok_b ? mpq_class(b * outer) : ap_rational(xb, p.q, qn) * outer_full;
    exact[idx] = ok_a && ok_b;
  });

  std::vector<mpq_class> value(static_cast<std::size_t>(N + 1));
  mpz_class common = 1;
  for (long j = 0; j <= N; ++j) {
    mpq_class ab = t.a_factor[j] * t.b_factor[j];
    mpq_class abk;
    mpz_pow_ui(abk.get_num_mpz_t(), ab.get_num_mpz_t(), static_cast<unsigned long>(p.k));
    mpz_pow_ui(abk.get_den_mpz_t(), ab.get_den_mpz_t(), static_cast<unsigned long>(p.k));
    mpq_class v = abk * mpq_class(binom[j]);
    if (p.delta_k() == 0) v *= (N - 2 * j);
    if (j & 1) v = -v;
    v.canonicalize();
    if (v.get_den() != 1) {
      std::string msg = "C_" + std::to_string(j) + " is not an integer";
      if (p.mode == Divisibility::strict) throw VerificationFailure(msg);
      t.findings.push_back(msg);
    } else if (!exact[j]) {
      t.findings.push_back("A/B factor at j=" + std::to_string(j) + " is not an integer");
    }
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), v.get_den_mpz_t());
    value[j] = std::move(v);
  }
  if (!t.findings.empty() && p.mode == Divisibility::strict)
    throw VerificationFailure(t.findings.front());

  t.denominator = common;
  t.c.resize(static_cast<std::size_t>(N + 1));
  for (long j = 0; j <= N; ++j) t.c[j] = value[j].get_num() * (common / value[j].get_den());
  return t;
}

std::vector<std::string> check_table(const CoefficientTable& t) {
  std::vector<std::string> failed;
  const Params& p = t.params;
  const long N = p.rqn();
  if (static_cast<long>(t.c.size()) != N + 1) return {"size"};
  if (p.mode == Divisibility::strict && !t.integral()) failed.push_back("integrality");

  const bool odd_sign = (p.k - 1) % 2 != 0;
  for (long j = 0; j <= N; ++j) {
    const mpz_class& mirror = t.c[N - j];
    if (odd_sign ? (t.c[j] != -mirror) : (t.c[j] != mirror)) {
      failed.push_back("symmetry");
      break;
    }
  }

  mpz_class binom = 1;
  for (long j = 0; j <= N; ++j) {
    mpq_class ab = t.a_factor[j] * t.b_factor[j];
    mpq_class v = 1;
    for (long i = 0; i < p.k; ++i) v *= ab;
    v *= mpq_class(binom);
    if (p.delta_k() == 0) v *= (N - 2 * j);
    if (j & 1) v = -v;
    if (v != t.coefficient(j)) {
      failed.push_back("factorization");
      break;
    }
    binom = binom * (N - j) / (j + 1);
  }
  if (p.delta_k() == 0 && N % 2 == 0 && t.c[N / 2] != 0) failed.push_back("center");
  return failed;
}

LinearForm rho(const Params& p, const CoefficientTable& t) {
  const long q = p.q, rn = p.rn(), N = p.rqn(), k = p.k;
  const bool k_odd_sign = ((k - 1) & 1) != 0;  // (-1)^{k-1} = -1
  LinearForm f;
  f.params = p;

  // Residue-class sums s_a = sum_j C_{qj+a}.
  std::vector<mpz_class> class_sum(static_cast<std::size_t>(q), 0);
  for (long j = 0; j <= N; ++j) class_sum[j % q] += t.c[j];

  auto scaled = [&](const mpz_class& s) {
    mpq_class v(k_odd_sign ? mpz_class(-s) : s, t.denominator * q);
    v.canonicalize();
    return v;
  };
  for (long a = 1; 2 * a < q; ++a) f.rho_a[a] = scaled(class_sum[a]);
  f.rho1 = scaled(class_sum[0]);
  if (q % 2 == 0) f.rho1 += ((mpz_class(1) << k) - 1) * scaled(class_sum[q / 2]);
  f.rho1.canonicalize();

  // rho0 with common denominator D = d_N^k; every m^k and (qm+a)^k divides D.
  mpz_class d = lcm_upto(static_cast<unsigned long>(N));
  mpz_class D = pow_z(d, static_cast<unsigned long>(k));
  mpz_class qk = pow_z(q, static_cast<unsigned long>(k));
  mpz_class num = 0, suffix, quot, base;

  // a = 0: sum_{m=1}^{rn} (1/m^k) sum_{j=m}^{rn} C_{qj}
  suffix = 0;
  for (long m = rn; m >= 1; --m) {
    suffix += t.c[q * m];
    base = m;
    mpz_pow_ui(base.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_divexact(quot.get_mpz_t(), D.get_mpz_t(), base.get_mpz_t());
    num += suffix * quot;
  }
  // a >= 1: sum_{m=0}^{rn-1} q^k/(qm+a)^k sum_{j=m}^{rn-1} C_{qj+a}
  for (long a = 1; a < q; ++a) {
    suffix = 0;
    for (long m = rn - 1; m >= 0; --m) {
      suffix += t.c[q * m + a];
      base = q * m + a;
      mpz_pow_ui(base.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
      mpz_divexact(quot.get_mpz_t(), D.get_mpz_t(), base.get_mpz_t());
      num += suffix * quot * qk;
    }
  }
  if (k & 1) num = -num;  // (-1)^k
  f.rho0 = mpq_class(num, D * q * t.denominator);
  f.rho0.canonicalize();
  return f;
}

RhoDivisibility check_divisibility(const LinearForm& f) {
  const Params& p = f.params;
  RhoDivisibility r{};
  r.q_rho1_integral = mpq_class(f.rho1 * p.q).get_den() == 1;
  r.q_rho_a_integral = true;
  for (const auto& [a, v] : f.rho_a)
    if (mpq_class(v * p.q).get_den() != 1) r.q_rho_a_integral = false;
  mpz_class D = pow_z(lcm_upto(static_cast<unsigned long>(p.rqn())), static_cast<unsigned long>(p.k));
  r.d_rho0_integral = mpq_class(f.rho0 * D).get_den() == 1;
  return r;
}

BigFloat beta_value(const Shape& s, prec_t prec) {
  prec_t w = prec + 16;
  BigFloat lg2 = const_log2(w);
  BigFloat sum_p(w);
  for (long pr : prime_divisors(s.q)) sum_p += log(BigFloat(pr, w)) / (pr - 1);
  BigFloat half_r = BigFloat(s.r, w) / 2L;
  BigFloat inner = (2 * s.q + s.r) * log(half_r + s.q) - s.r * log(half_r) + 2 * s.q * sum_p;
  BigFloat beta = (s.r * s.q) * lg2 + s.k * inner;
  beta.set_prec(prec);
  return beta;
}

std::vector<GrowthPoint> coefficient_growth(const std::vector<Params>& family, prec_t prec,
                                            unsigned jobs) {
  std::vector<GrowthPoint> out;
  for (const Params& p : family) {
    CoefficientTable t = build_coefficients(p, jobs);
    mpz_class best = 0;
    for (const auto& c : t.c)
      if (mpz_cmpabs(c.get_mpz_t(), best.get_mpz_t()) > 0) best = abs(c);
    BigFloat v = log(BigFloat(best, prec)) - log(BigFloat(t.denominator, prec));
    out.push_back({p.n, v / p.n});
  }
  return out;
}

mpq_class eval_R_derivative_term(const Params& p, const CoefficientTable& t, long m) {
  if (m < 1) throw InvalidInput("eval_R_derivative_term: m must be >= 1");
  const long N = p.rqn();
  mpq_class s = 0;
  mpz_class den;
  for (long j = 0; j <= N; ++j) {
    if (t.c[j] == 0) continue;
    den = p.q * m + j;
    mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(p.k));
    s += mpq_class(t.c[j], den);
  }
  s *= mpq_class(pow_z(p.q, static_cast<unsigned long>(p.k - 1)), t.denominator);
  if ((p.k - 1) & 1) s = -s;
  s.canonicalize();
  return s;
}

namespace {

struct TermBound {
  BigFloat log_u;  // log max_{|z-t|=1} |R_n(z)|
  BigFloat slope;  // sup over t' >= t of d log U / d log t'
};

// |term(m)| <= max_{|z-m|=1} |R_n(z)| =: U(m), bounding each linear factor of
// the product form on the unit circle around m.
TermBound term_bound(const Params& p, long m, prec_t prec) {
  const long q = p.q, qn = p.qn(), N = p.rqn(), k = p.k, rn = p.rn();
  BigFloat t(m, prec);
  BigFloat logU = lngamma(BigFloat(N + 1, prec)) - (2 * k) * lngamma(BigFloat(qn + 1, prec)) +
                  (2 * k * qn) * log(BigFloat(q, prec));
  for (long pr : p.primes) logU += (2 * k * qn / (pr - 1)) * log(BigFloat(pr, prec));

  BigFloat slope(prec);
  if (p.delta_k() == 0) {
    logU += log(BigFloat(2 * q * (m + 1) + N, prec));
    slope += 1L;  // 2qt / (2q(t+1) + N) increases to 1
  }
  for (long i = 0; i < qn; ++i) {
    BigFloat u = t - (qn - i - 1);  // >= 1
    BigFloat v = t + (rn + 2 + i);
    logU += k * (log(u) + log(v));
    // t/(t-c) with c >= 0 decreases (sup at m); t/(t+c) increases to 1.
    slope += k * (t / u) + k;
  }
  for (long i = 0; i <= N; ++i) {
    BigFloat w = q * (t - 1L) + BigFloat(i, prec);
    logU -= log(w);
    // t q / (q(t-1) + i): decreasing when i > q, increasing to 1 otherwise.
    if (i >= q)
      slope -= (q * t) / w;
    else
      slope -= 1L;
  }
  return {logU, slope};
}

// Tail bound from the power decay U(t) <= U(M) (M/t)^E, valid once E > 1.
std::optional<BigFloat> decay_tail(const Params& p, long M, prec_t prec) {
  TermBound tb = term_bound(p, std::max(M, 2L), prec);
  BigFloat E = -tb.slope;
  if (!(E > 1L)) return std::nullopt;
  // sum_{m>M} U(m) <= int_M^inf U(M) (M/t)^E dt = U(M) M / (E - 1)
  return exp(tb.log_u) * BigFloat(std::max(M, 2L), prec) / (E - 1L) * BigFloat(1.01, prec);
}

}  // namespace

BigFloat series_tail_bound(const Params& p, long M, prec_t prec) {
  if (M < p.qn()) throw InvalidInput("series tail: terms must be >= qn");
  // Before the decay sets in, add the single-term bounds up to the first
  // point where it does.
  BigFloat head(prec);
  for (long m = M;; ++m) {
    if (auto tail = decay_tail(p, m, prec)) return head + *tail;
    if (m - M > 64 * p.rqn()) throw NumericFailure("series tail: no decay regime found");
    head += exp(term_bound(p, m + 1, prec).log_u);
  }
}

long terms_for_tail(const Params& p, long target_exp) {
  long M = 2 * p.qn();
  for (int it = 0; it < 200; ++it) {
    auto b = decay_tail(p, M, 128);
    if (b && b->exponent2() <= target_exp) return M;
    M += M / 4 + 1;
  }
  throw NumericFailure("series tail: no feasible truncation found");
}

SeriesPartial s_n_truncated(const Params& p, const CoefficientTable& t, long terms) {
  if (terms < p.qn()) throw InvalidInput("s_n_truncated: terms must be >= qn");
  const long q = p.q, N = p.rqn(), k = p.k;
  const long M = terms;

  // sum_{m=1}^{M} sum_j C_j/(qm+j)^k = sum_i w_i / i^k, i = qm + j, where w_i
  // collects C_{i-qm} over admissible m via residue-class prefix sums.
  std::vector<std::vector<mpz_class>> prefix(static_cast<std::size_t>(q));
  for (long a = 0; a < q; ++a) {
    auto& pf = prefix[a];
    pf.push_back(0);
    for (long j = a; j <= N; j += q) pf.push_back(pf.back() + t.c[j]);
  }
  const long imin = q, imax = q * M + N;
  mpz_class L = pow_z(lcm_upto(static_cast<unsigned long>(imax)), static_cast<unsigned long>(k));
  mpz_class num = 0, base, quot, w;
  for (long i = imin; i <= imax; ++i) {
    long m_lo = i > N ? std::max<long>(1, (i - N + q - 1) / q) : 1;
    long m_hi = std::min<long>(M, i / q);
    if (m_lo > m_hi) continue;
    long a = i % q;
    long j_lo = i - q * m_hi, j_hi = i - q * m_lo;
    const auto& pf = prefix[a];
    w = pf[(j_hi - a) / q + 1] - pf[(j_lo - a) / q];
    if (w == 0) continue;
    base = i;
    mpz_pow_ui(base.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_divexact(quot.get_mpz_t(), L.get_mpz_t(), base.get_mpz_t());
    num += w * quot;
  }
  num *= pow_z(q, static_cast<unsigned long>(k - 1));
  if ((k - 1) & 1) num = -num;
  SeriesPartial out{mpq_class(num, L * t.denominator), series_tail_bound(p, M)};
  out.partial.canonicalize();
  return out;
}

}  // namespace zf
