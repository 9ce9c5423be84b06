#include "zetaforms/bound.hpp"

#include "zetaforms/errors.hpp"
#include "zetaforms/linform.hpp"
#include "zetaforms/parallel.hpp"
#include "zetaforms/saddle.hpp"

namespace zf {

CriterionVerdict nesterenko_bound(const CriterionInput& in) {
  if (!(in.alpha.sign() > 0) || !(in.beta.sign() > 0))
    throw InvalidInput("nesterenko_bound: alpha and beta must be positive");
  for (const auto& g : in.gammas)
    if (g.sign() < 0) throw InvalidInput("nesterenko_bound: gammas must be non-negative");
  if (in.gamma_constant && in.gamma_constant->sign() < 0)
    throw InvalidInput("nesterenko_bound: gammas must be non-negative");

  prec_t w = std::max(in.alpha.prec(), in.beta.prec()) + 16;
  // d satisfies the inequality iff (d - 1) beta - sum_{j<d} gamma_j >= alpha.
  auto holds = [&](long d, const BigFloat& gsum) { return (d - 1) * in.beta - gsum >= in.alpha; };

  BigFloat gsum(w);
  long d = 1;
  for (; d <= static_cast<long>(in.gammas.size()) + 1; ++d) {
    if (d > 1) gsum += in.gammas[d - 2];
    if (holds(d, gsum)) return {false, d};
  }
  if (!in.gamma_constant) throw InvalidInput("nesterenko_bound: gamma list exhausted");
  const BigFloat& g = *in.gamma_constant;
  if (g >= in.beta) return {true, 0};

  // Past the list each step gains beta - g; jump close, then step exactly.
  --d;
  BigFloat gap = in.alpha - ((d - 1) * in.beta - gsum);
  BigFloat jumps = floor(gap / (in.beta - g)) - 1L;
  if (jumps.sign() > 0) {
    if (jumps > BigFloat(1e15, 64)) throw InvalidInput("nesterenko_bound: bound exceeds 1e15");
    long j = mpfr_get_si(jumps.get(), MPFR_RNDD);
    d += j;
    gsum += g * j;
  }
  for (;;) {
    ++d;
    gsum += g;
    if (holds(d, gsum)) return {false, d};
  }
}

BoundReport dimension_lower(long k, long q, long r, prec_t prec) {
  Shape s = make_shape(k, q, r);
  SaddleData sd = saddle_constants(s, prec);
  BigFloat beta = beta_value(s, prec);
  BigFloat krq(k * r * q, prec);
  BoundReport b{k, q, r, sd.alpha, beta, sd.alpha - krq, beta + krq, BigFloat(prec),
                BigFloat(prec), sd.omega, sd.phi, false, false, false};
  b.d_lower = 1L + b.alpha_hat / (b.beta_hat - krq);
  b.ratio_to_log2q = b.d_lower * const_log2(prec) / log(BigFloat(q, prec));
  b.alpha_hat_positive = b.alpha_hat.sign() > 0;

  BigFloat pi = const_pi(prec), tol = pow2(-prec / 2, prec);
  auto near_multiple = [&](const BigFloat& x, const BigFloat& shift) {
    BigFloat t = (x - shift) / pi;
    return abs(t - floor(t + BigFloat(0.5, prec))) < tol;
  };
  b.omega_in_pi_z = near_multiple(sd.omega, BigFloat(prec));
  b.phi_in_half_pi_z = near_multiple(sd.phi, pi / 2L);
  return b;
}

std::vector<TrendRow> trend_scan(long k, const std::vector<long>& q_list, prec_t prec,
                                 unsigned jobs) {
  std::vector<TrendRow> rows(q_list.size(), TrendRow{0, 0, BigFloat(prec), BigFloat(prec),
                                                     BigFloat(prec), BigFloat(prec), false});
  parallel_for(q_list.size(), jobs, [&](std::size_t i) {
    long q = q_list[i];
    long r = log_squared_floor(q);
    BoundReport b = dimension_lower(k, q, r, prec);
    BigFloat lq = log(BigFloat(q, prec));
    BigFloat q_l2 = q * lq * lq;
    rows[i] = {q,
               r,
               b.d_lower,
               b.ratio_to_log2q,
               b.alpha / (q_l2 * lq),
               b.beta / (q_l2 * const_log2(prec)),
               b.alpha_hat_positive};
  });
  return rows;
}

namespace {

bool approaches_one(const std::vector<BigFloat>& v) {
  if (v.size() < 2) return true;
  auto dist = [](const BigFloat& x) { return abs(x - 1L); };
  int away = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(dist(v[i]) < dist(v[i - 1]))) ++away;
  return away <= 1 && dist(v.back()) < dist(v.front());
}

}  // namespace

TrendVerdict trend_verdict(const std::vector<TrendRow>& rows) {
  std::vector<BigFloat> d, a, b;
  for (const auto& r : rows) {
    d.push_back(r.d_ratio);
    a.push_back(r.alpha_ratio);
    b.push_back(r.beta_ratio);
  }
  return {approaches_one(d), approaches_one(a), approaches_one(b)};
}

}  // namespace zf
