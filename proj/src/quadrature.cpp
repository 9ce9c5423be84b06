#include "zetaforms/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>

#include "zetaforms/cotk.hpp"
#include "zetaforms/errors.hpp"
#include "zetaforms/hurwitz.hpp"
#include "zetaforms/parallel.hpp"
#include "zetaforms/rn.hpp"
#include "zetaforms/saddle.hpp"

namespace zf {

const GaussRule& gauss_legendre(int m, prec_t prec) {
  static std::mutex mu;
  static std::map<std::pair<int, prec_t>, GaussRule> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(m, prec);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (m < 1) throw InvalidInput("gauss_legendre: need m >= 1");

  prec_t w = prec + 32;
  GaussRule rule;
  for (int i = 0; i < m; ++i) {
    BigFloat x(std::cos(M_PI * (i + 0.75) / (m + 0.5)), w);
    BigFloat dp(w);
    for (int it = 0; it < 200; ++it) {
      BigFloat p0(1L, w), p1 = x;
      for (int j = 2; j <= m; ++j) {
        BigFloat p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / static_cast<long>(j);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      if (m == 1) p0 = BigFloat(1L, w);
      dp = m * (x * p1 - p0) / (x * x - 1L);
      BigFloat step = p1 / dp;
      x -= step;
      if (step.is_zero() || step.exponent2() < -(w - 8)) break;
    }
    BigFloat wt = 2L / ((1L - x * x) * dp * dp);
    x.set_prec(prec);
    wt.set_prec(prec);
    rule.nodes.push_back(std::move(x));
    rule.weights.push_back(std::move(wt));
  }
  return cache.emplace(key, std::move(rule)).first->second;
}

namespace {

struct LineSum {
  BigComplex sum;
  BigFloat abs_sum;
};

// Composite Gauss rule for int_{-T}^{T} fn(y) dy with uniform panels of
// width h.  Node values are reduced in index order.
LineSum integrate_line(const std::function<BigComplex(const BigFloat&)>& fn, double T, double h,
                       int m, prec_t w, unsigned jobs) {
  const GaussRule& g = gauss_legendre(m, w);
  const long per_side = static_cast<long>(std::ceil(T / h - 1e-9));
  const long panels = 2 * per_side;
  const long count = panels * m;
  std::vector<BigComplex> vals(static_cast<std::size_t>(count), BigComplex(w));
  BigFloat half(h / 2, w);
  parallel_for(static_cast<std::size_t>(count), jobs, [&](std::size_t idx) {
    long pnl = static_cast<long>(idx) / m;
    int i = static_cast<int>(idx % m);
    BigFloat mid = BigFloat(h, w) * (pnl - per_side) + half;
    BigFloat y = mid + half * g.nodes[i];
    vals[idx] = fn(y) * (g.weights[i] * half);
  });
  LineSum out{BigComplex(w), BigFloat(w)};
  for (const auto& v : vals) {
    out.sum += v;
    out.abs_sum += abs(v);
  }
  return out;
}

struct LineProblem {
  std::function<BigComplex(const BigFloat&, prec_t)> integrand;  // in y = Im t
  std::function<BigFloat(double, prec_t)> tail;                   // bound on |int_{|y|>T}|
  BigFloat scale{64};                                             // value = scale * int
};

QuadratureResult run_line(const LineProblem& lp, const ContourSpec& spec, prec_t prec,
                          unsigned jobs, std::size_t factors) {
  if (spec.nodes < 2 || !(spec.panel > 0)) throw InvalidInput("quadrature: bad panel spec");
  long target = std::max<long>(spec.target_bits, 8);
  prec_t w = std::max<prec_t>(128, target + 64 + static_cast<prec_t>(std::log2(factors + 2.0)));
  if (w > prec) w = prec;

  auto at = [&](prec_t wp) {
    return [&, wp](const BigFloat& y) { return lp.integrand(y, wp); };
  };

  // Coarse pass: magnitude and cancellation, which fix the working precision
  // and the truncation height.
  double T = spec.height > 0 ? spec.height : 8.0;
  LineSum coarse = integrate_line(at(w), T, spec.panel, spec.nodes, w, jobs);
  BigFloat mag = abs(coarse.sum).with_prec(64);
  if (mag.is_zero()) mag = coarse.abs_sum.with_prec(64);
  if (mag.is_zero()) throw NumericFailure("quadrature: integrand vanishes on the sample grid");
  long cancel = std::max(0L, coarse.abs_sum.exponent2() - mag.exponent2());
  prec_t need = target + 64 + cancel + static_cast<prec_t>(std::log2(factors + 2.0));
  if (need > prec)
    throw NumericFailure("quadrature: needs " + std::to_string(need) + " bits, cap is " +
                         std::to_string(prec));
  w = std::max(w, need);

  BigFloat goal = mag * pow2(-target - 8, 64);
  if (spec.height <= 0) {
    for (int i = 0; lp.tail(T, 64) > goal; ++i) {
      if (i > 60) throw NumericFailure("quadrature: truncation bound does not decay");
      T *= 1.25;
    }
    T = std::ceil(T / spec.panel) * spec.panel;
  }

  QuadratureResult r{BigComplex(w), BigFloat(64), lp.tail(T, 64), BigFloat(64), {}, 0, T, 0, w};
  double h = spec.panel;
  LineSum prev = integrate_line(at(w), T, h, spec.nodes, w, jobs);
  BigFloat target_abs = mag * pow2(-target, 64);
  for (int level = 1; level <= spec.max_refinements; ++level) {
    h /= 2;
    LineSum cur = integrate_line(at(w), T, h, spec.nodes, w, jobs);
    r.deltas.push_back((abs(cur.sum - prev.sum) * abs(lp.scale)).with_prec(64));
    prev = std::move(cur);
    if (level >= spec.min_refinements && r.deltas.back() <= target_abs * abs(lp.scale).with_prec(64))
      break;
  }
  BigFloat s = abs(lp.scale).with_prec(64);
  if (r.deltas.back() > mag * s * pow2(-target / 2, 64))
    throw NumericFailure("quadrature: refinement did not converge, last delta " +
                         r.deltas.back().to_string(4));
  r.value = prev.sum * lp.scale;
  r.rounding = (prev.abs_sum * s * pow2(-(w - 10), 64)).with_prec(64);
  r.truncation = lp.tail(T, 64) * s;
  r.error = r.deltas.back() + r.truncation + r.rounding;
  r.panels = static_cast<long>(2 * std::ceil(T / h - 1e-9));
  return r;
}

// log of the bound K C_T T^deg on |R_n(M + iy)| for |y| >= T.
BigFloat log_rn_envelope(const Params& p, const BigFloat& M, double T, const BigFloat& logK) {
  const long q = p.q, k = p.k, qn = p.qn(), N = p.rqn(), rn = p.rn();
  const int dk = p.delta_k();
  prec_t w = 64;
  BigFloat Tb(T, w), T2 = Tb * Tb;
  BigFloat acc = logK.with_prec(w);
  auto lift = [&](const BigFloat& a) { return log(1L + (a * a) / T2) / 2L; };
  if (dk == 0) acc += log(BigFloat(2 * q, w)) + lift((2L * q * M + N) / (2L * q));
  BigFloat kb(k, w);
  for (long i = 0; i < qn; ++i) {
    acc += kb * lift(M - (qn - i));
    acc += kb * lift(M + (rn + 1 + i));
  }
  acc -= (N + 1) * log(BigFloat(q, w));
  long deg = (1 - dk) + 2 * k * qn - (N + 1);
  acc += deg * log(Tb);
  return acc;
}

BigFloat vk_abs_sum(long k) {
  BigFloat s(64);
  for (const auto& c : cotk_expansion(k).vk) s += BigFloat(mpq_class(abs(c)), 64);
  return s;
}

}  // namespace

mpq_class contour_abscissa(const Params& p, const mpq_class& mu) {
  mpq_class nm = mu * p.n;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), nm.get_num_mpz_t(), nm.get_den_mpz_t());
  mpq_class M = mpq_class(fl) + mpq_class(1, 2);
  if (!(M > 0) || !(M < p.qn())) throw InvalidInput("contour abscissa must lie in (0, qn)");
  return M;
}

ContourSpec default_contour(const Params& p) {
  PhasePoint m0 = mu0_point(p.shape(), 96);
  BigFloat nm = m0.z.re * p.n;
  long fl = mpfr_get_si(floor(nm).get(), MPFR_RNDD);
  fl = std::clamp(fl, 0L, p.qn() - 1);
  ContourSpec spec;
  spec.mu = mpq_class(2 * fl + 1, 2 * p.n);
  spec.mu.canonicalize();
  return spec;
}

BigFloat sn_prefactor(const Params& p, prec_t prec) {
  prec_t w = prec + 16;
  BigFloat qn(p.qn(), w);
  BigFloat v = -(BigFloat(p.n, w) / pow(qn, p.k - 1 + p.delta_k()));
  v *= sqrt(2L * BigFloat(p.r, w) * const_pi(w) / qn);
  v.set_prec(prec);
  return v;
}

QuadratureResult s_n_contour(const Params& p, const ContourSpec& spec, prec_t prec,
                             unsigned jobs) {
  mpq_class Mq = contour_abscissa(p, spec.mu);
  std::map<prec_t, RnProduct> rn_cache;
  std::mutex rn_mu;
  auto rn_at = [&](prec_t w) -> const RnProduct& {
    std::lock_guard lock(rn_mu);
    auto it = rn_cache.find(w);
    if (it == rn_cache.end()) it = rn_cache.emplace(w, RnProduct(p, w)).first;
    return it->second;
  };
  rn_at(prec);  // exact K, reused for the envelope
  const BigFloat logK = log(BigFloat(rn_cache.begin()->second.k_exact(), 64));
  const BigFloat vabs = vk_abs_sum(p.k);

  LineProblem lp;
  lp.integrand = [&](const BigFloat& y, prec_t w) {
    BigComplex t(BigFloat(Mq, w), y.with_prec(w));
    return cotk_eval(p.k, t, w) * rn_at(w)(t);
  };
  lp.tail = [&](double T, prec_t) {
    BigFloat M(Mq, 64);
    BigFloat lr = log_rn_envelope(p, M, T, logK);
    BigFloat pi = const_pi(64);
    // |cot_k(pi(M+iy))| <= vabs / cosh^2(pi y) <= 4 vabs e^{-2 pi |y|}
    BigFloat b = exp(lr - 2L * pi * BigFloat(T, 64)) * vabs * 2L / pi;
    return b;  // on both sides, before the pi^{k-1}/2 factor
  };
  prec_t w0 = std::min<prec_t>(prec, 64 + spec.target_bits + 256);
  lp.scale = -(pow(const_pi(w0), p.k - 1) / 2L);
  lp.scale = lp.scale.with_prec(prec);
  QuadratureResult r = run_line(lp, spec, prec, jobs, static_cast<std::size_t>(p.rqn()));
  r.abscissa = Mq;
  return r;
}

BigComplex gn_eval(const Params& p, const BigComplex& z, prec_t prec) {
  prec_t w = prec + 32;
  BigComplex zw(z.re.with_prec(w), z.im.with_prec(w));
  RnProduct R(p, w);
  BigComplex nz = zw * p.n;
  BigFloat pi = const_pi(w);
  BigComplex s = pow(sin(nz * pi), p.k);
  BigComplex e = exp(f_eval(p.shape(), zw) * p.n);
  BigFloat qn(p.qn(), w);
  BigFloat c = pow(pi, p.k) * pow(qn, p.k - 1 + p.delta_k()) * sqrt(qn / (2L * BigFloat(p.r, w) * pi));
  BigComplex g = R(nz) * c / (s * e);
  g.re.set_prec(prec);
  g.im.set_prec(prec);
  return g;
}

QuadratureResult j_integral(const Params& p, const mpq_class& lambda, const ContourSpec& spec,
                            prec_t prec, unsigned jobs) {
  if (!(abs(lambda) < p.k)) throw InvalidInput("j_integral: need |lambda| < k");
  mpq_class Mq = contour_abscissa(p, spec.mu);
  std::map<prec_t, RnProduct> rn_cache;
  std::mutex rn_mu;
  auto rn_at = [&](prec_t w) -> const RnProduct& {
    std::lock_guard lock(rn_mu);
    auto it = rn_cache.find(w);
    if (it == rn_cache.end()) it = rn_cache.emplace(w, RnProduct(p, w)).first;
    return it->second;
  };
  rn_at(prec);
  const BigFloat logK = log(BigFloat(rn_cache.begin()->second.k_exact(), 64));
  // 1 / prefactor of g_n: pi^k (qn)^{k-1+delta_k} sqrt(qn / (2 r pi))
  auto inv_pref = [&](prec_t w) {
    BigFloat pi = const_pi(w), qn(p.qn(), w);
    return pow(pi, p.k) * pow(qn, p.k - 1 + p.delta_k()) * sqrt(qn / (2L * BigFloat(p.r, w) * pi));
  };
  const double lam = mpq_class(abs(lambda)).get_d();

  LineProblem lp;
  lp.integrand = [&](const BigFloat& y, prec_t w) {
    BigFloat pi = const_pi(w);
    BigComplex t(BigFloat(Mq, w), y.with_prec(w));
    BigComplex s = pow(sin(t * pi), p.k);
    BigFloat lp_ = BigFloat(lambda, w) * pi;
    // e^{-lambda pi i t}
    BigComplex ph = exp(BigComplex(t.im * lp_, -(t.re * lp_)));
    return rn_at(w)(t) * ph * inv_pref(w) / s;
  };
  lp.tail = [&](double T, prec_t) {
    BigFloat M(Mq, 64), pi = const_pi(64);
    BigFloat lr = log_rn_envelope(p, M, T, logK);
    BigFloat decay = BigFloat(p.k - lam, 64) * pi;
    // |1/sin^k| <= 2^k e^{-k pi |y|}, |e^{-lambda pi i t}| <= e^{|lambda| pi |y|}
    return exp(lr - decay * BigFloat(T, 64)) * inv_pref(64) * pow2(p.k + 1, 64) / decay;
  };
  lp.scale = 1L / (2L * const_pi(prec) * p.n);
  QuadratureResult r = run_line(lp, spec, prec, jobs, static_cast<std::size_t>(p.rqn()));
  r.abscissa = Mq;
  return r;
}

Decomposition decomposition_check(const Params& p, const Certified& s_n, const ContourSpec& spec,
                                  prec_t prec, unsigned jobs) {
  const CotkExpansion& ce = cotk_expansion(p.k);
  BigFloat pref = sn_prefactor(p, prec);
  Decomposition d{s_n.value.with_prec(prec) / pref, BigFloat(prec), BigFloat(64),
                  (s_n.error / abs(pref)).with_prec(64), {}};
  for (const auto& [l, c] : ce.c) {
    QuadratureResult j = j_integral(p, mpq_class(l), spec, prec, jobs);
    BigFloat cl(c, prec);
    d.sum += cl * j.value.re;
    d.error += abs(cl).with_prec(64) * j.error;
    d.parts.emplace_back(l, std::move(j));
  }
  d.residual = abs(d.s_tilde - d.sum).with_prec(64);
  return d;
}

std::vector<GnDeviation> gn_convergence(const Shape& s, const std::vector<long>& n_list,
                                        prec_t prec) {
  std::vector<GnDeviation> out;
  for (long n : n_list) {
    Params p = make_params(s.k, s.q, s.r, n);
    GnDeviation dv{n, BigFloat(64)};
    for (int j = 1; j <= 10; ++j) {
      BigComplex z(BigFloat(mpq_class(s.q, 2), prec), BigFloat(mpq_class(j, 10), prec));
      BigComplex ratio = gn_eval(p, z, prec) / g_eval(s, z);
      ratio.re -= 1L;
      dv.max_rel = max(dv.max_rel, abs(ratio).with_prec(64));
    }
    out.push_back(std::move(dv));
  }
  return out;
}

bool FitReport::decreasing() const {
  std::optional<BigFloat> prev;
  for (const auto& r : rows) {
    if (r.excluded) continue;
    BigFloat a = abs(r.residual);
    if (prev && !(a < *prev)) return false;
    prev = std::move(a);
  }
  return true;
}

bool FitReport::gaussian_ok() const {
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (it->excluded) continue;
    BigFloat gap = abs(it->log_s - it->predicted);
    return gap <= log(BigFloat(it->n, 64));
  }
  return false;
}

FitReport asymptotic_fit(const Shape& s, const std::vector<long>& n_list, prec_t prec,
                         unsigned jobs) {
  prec_t sp = std::min<prec_t>(prec, 256);
  SaddleData sd = saddle_constants(s, sp);
  FitReport rep{s, sd.alpha, sd.omega, sd.phi, {}};
  if (n_list.empty()) return rep;
  const double alpha = sd.alpha.to_double();
  const double beta = beta_value(s, 64).to_double();
  const BigFloat ck(cotk_expansion(s.k).c.at(s.k - 2), sp);
  long last = 0;
  for (long n : n_list) {
    if (n <= last) throw InvalidInput("asymptotic_fit: n list must be increasing");
    last = n;
    Params p = make_params(s.k, s.q, s.r, n);
    long bits = required_precision(p, std::max(alpha, 0.0), beta).bits;
    if (bits > prec)
      throw NumericFailure("asymptotic_fit: n = " + std::to_string(n) + " needs " +
                           std::to_string(bits) + " bits");
    CoefficientTable t = build_coefficients(p, jobs);
    LinearForm f = rho(p, t);
    Certified S = s_n_via_zeta(f, zeta_basis(s.k, s.q, bits), 64);
    if (S.value.is_zero()) throw NumericFailure("asymptotic_fit: S_n vanishes");

    FitRow row{n, log(abs(S.value)).with_prec(sp), BigFloat(sp), BigFloat(sp), BigFloat(sp), false};
    row.cos_factor = abs(cos(sd.omega * n + sd.phi));
    row.excluded = row.cos_factor < 1e-3;
    BigFloat an = sd.alpha * n;
    row.residual = (row.log_s - log(row.cos_factor) + an) / n;
    BigFloat pi = const_pi(sp);
    row.predicted = log(abs(sn_prefactor(p, sp))) + log(abs(ck)) - an + log(abs(sd.g_at_tau)) -
                    log(2L * pi * n * abs(sd.fpp_at_tau)) / 2L + log(row.cos_factor);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace zf
