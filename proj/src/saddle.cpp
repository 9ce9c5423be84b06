#include "zetaforms/saddle.hpp"

#include <cmath>

#include "zetaforms/errors.hpp"
#include "zetaforms/polyroots.hpp"

namespace zf {

namespace {

constexpr long kGuard = 32;

BigFloat Q(const mpq_class& v, prec_t p) { return BigFloat(v, p); }

BigFloat prime_log_sum(long q, prec_t p) {
  BigFloat s(p);
  for (long pr : prime_divisors(q)) s += log(BigFloat(pr, p)) / (pr - 1);
  return s;
}

struct Logs {
  BigComplex lz, lzr, lzrq, lqz;
};

Logs logs_at(const Shape& s, const PhasePoint& P) {
  prec_t w = P.z.prec();
  return {log(P.z), log(P.z + BigFloat(s.r, w)), log(P.z + BigFloat(s.r + s.q, w)), log(P.q_minus_z)};
}

BigFloat reduce_angle(const BigFloat& t) {
  // Into (-pi, pi].
  BigFloat pi = const_pi(t.prec());
  BigFloat two_pi = 2L * pi;
  BigFloat r = t - two_pi * floor((t + pi) / two_pi);
  if (r <= -pi) r += two_pi;
  return r;
}

}  // namespace

PhasePoint phase_point(const Shape& s, const BigComplex& z) {
  if (z.im.is_zero() && (z.re.sign() <= 0 || z.re >= s.q))
    throw BranchError("z = " + z.re.to_string(10) + " lies on (-inf, 0] or [q, inf)");
  return {z, BigFloat(s.q, z.prec()) - z};
}

PhasePoint phase_point_log(const Shape& s, const BigComplex& u) {
  BigComplex ur(u.re, reduce_angle(u.im));
  BigComplex e = exp(ur);
  BigComplex z = BigFloat(s.q, u.prec()) - e;
  if (z.im.is_zero() && (z.re.sign() <= 0 || e.re.sign() <= 0))
    throw BranchError("point on the real cut");
  return {z, e};
}

BigComplex fprime_eval(const Shape& s, const PhasePoint& P) {
  Logs L = logs_at(s, P);
  return (L.lz - L.lzr) * (s.q + s.k) + (L.lzrq - L.lqz) * s.k;
}

BigComplex f_eval(const Shape& s, const PhasePoint& P) {
  prec_t w = P.z.prec();
  Logs L = logs_at(s, P);
  BigComplex v = (P.z + BigFloat(s.r + s.q, w)) * L.lzrq * s.k;
  v += P.q_minus_z * L.lqz * s.k;
  v += P.z * L.lz * (s.q + s.k);
  v -= (P.z + BigFloat(s.r, w)) * L.lzr * (s.q + s.k);
  v += (s.r * s.q) * log(BigFloat(s.r, w)) + (2 * s.k * s.q) * prime_log_sum(s.q, w);
  return v;
}

BigComplex f0_eval(const Shape& s, const PhasePoint& P) {
  prec_t w = P.z.prec();
  Logs L = logs_at(s, P);
  BigComplex v = L.lzrq * (s.k * (s.r + s.q));
  v += L.lqz * (s.k * s.q);
  v -= L.lzr * (s.r * (s.q + s.k));
  v += (s.r * s.q) * log(BigFloat(s.r, w)) + (2 * s.k * s.q) * prime_log_sum(s.q, w);
  return v;
}

BigComplex fpp_eval(const Shape& s, const PhasePoint& P) {
  // [(r-2k)q(2z+r)^2 - rq(r+2q)(r+2k+2q)] / [4 z (z+r)(z+r+q)(z-q)]
  prec_t w = P.z.prec();
  const long q = s.q, r = s.r, k = s.k;
  BigComplex t = P.z * 2L + BigFloat(r, w);
  BigComplex num = t * t * ((r - 2 * k) * q);
  num -= BigFloat(mpz_class(mpz_class(r * q) * (r + 2 * q) * (r + 2 * k + 2 * q)), w);
  BigComplex den = P.z * 4L;
  den *= P.z + BigFloat(r, w);
  den *= P.z + BigFloat(r + q, w);
  den *= -P.q_minus_z;
  return num / den;
}

BigComplex g_eval(const Shape& s, const PhasePoint& P) {
  prec_t w = P.z.prec();
  Logs L = logs_at(s, P);
  BigComplex lg = (L.lz + L.lzr) * BigFloat(-0.5, w);
  lg += (L.lqz + L.lzrq - L.lz - L.lzr) * (BigFloat(s.k, w) / 2L);
  BigComplex g = exp(lg);
  if (s.delta_k() == 0) g *= P.z * 2L + BigFloat(s.r, w);
  return g;
}

BigComplex f_eval(const Shape& s, const BigComplex& z) { return f_eval(s, phase_point(s, z)); }
BigComplex fprime_eval(const Shape& s, const BigComplex& z) { return fprime_eval(s, phase_point(s, z)); }
BigComplex f0_eval(const Shape& s, const BigComplex& z) { return f0_eval(s, phase_point(s, z)); }
BigComplex fpp_eval(const Shape& s, const BigComplex& z) { return fpp_eval(s, phase_point(s, z)); }
BigComplex g_eval(const Shape& s, const BigComplex& z) { return g_eval(s, phase_point(s, z)); }

// ---- h-plane ----

PhaseContext make_context(const Shape& s) {
  PhaseContext c{s, mpq_class(s.q), mpq_class(s.k), mpq_class(2 * s.q, s.r)};
  c.s.canonicalize();
  return c;
}

HParams h_params(const PhaseContext& c) { return {c.a, c.b, c.s}; }

void check_h_params(const HParams& h) {
  if (!(h.b > 0) || !(h.s > 0) || !(h.a > h.s * h.b))
    throw InvalidInput("h-plane parameters need a > s b > 0");
}

BigComplex h_eval(const HParams& h, const BigComplex& w_in, prec_t prec) {
  prec_t w = prec + kGuard;
  BigComplex z(w_in.re.with_prec(w), w_in.im.with_prec(w));
  BigFloat one(1L, w), ops = Q(h.s + 1, w);
  BigComplex v = (log(z - one) - log(z + one)) * Q(h.a + h.b, w);
  v += (log(z + ops) - log(ops - z)) * Q(h.b, w);
  return v;
}

BigComplex h_derivative(const HParams& h, const BigComplex& w_in, prec_t prec) {
  prec_t w = prec + kGuard;
  BigComplex z(w_in.re.with_prec(w), w_in.im.with_prec(w));
  BigComplex one(BigFloat(1L, w));
  BigFloat ops = Q(h.s + 1, w);
  BigComplex v = (one / (z - BigFloat(1L, w)) - one / (z + BigFloat(1L, w))) * Q(h.a + h.b, w);
  v += (one / (z + ops) + one / (ops - z)) * Q(h.b, w);
  return v;
}

BigFloat H_eval(const HParams& h, const BigFloat& x_in, const BigFloat& y_in, prec_t prec) {
  prec_t w = prec + kGuard;
  BigFloat x = x_in.with_prec(w), y = y_in.with_prec(w);
  BigFloat y2 = y * y, ops = Q(h.s + 1, w);
  auto d2 = [&](const BigFloat& c) {
    BigFloat t = x - c;
    return t * t + y2;
  };
  BigFloat one(1L, w);
  BigFloat v = (log(d2(one)) - log(d2(-one))) * Q(h.a + h.b, w) / 2L;
  v += (log(d2(-ops)) - log(d2(ops))) * Q(h.b, w) / 2L;
  v.set_prec(prec);
  return v;
}

BigFloat H_dx(const HParams& h, const BigFloat& x_in, const BigFloat& y_in, prec_t prec) {
  prec_t w = prec + kGuard;
  BigFloat x = x_in.with_prec(w), y = y_in.with_prec(w);
  BigFloat y2 = y * y, ops = Q(h.s + 1, w), one(1L, w);
  auto term = [&](const BigFloat& c) {
    BigFloat t = x - c;
    return t / (t * t + y2);
  };
  BigFloat v = (term(one) - term(-one)) * Q(h.a + h.b, w);
  v += (term(-ops) - term(ops)) * Q(h.b, w);
  v.set_prec(prec);
  return v;
}

BigFloat H_dy(const HParams& h, const BigFloat& x_in, const BigFloat& y_in, prec_t prec) {
  prec_t w = prec + kGuard;
  BigFloat x = x_in.with_prec(w), y = y_in.with_prec(w);
  BigFloat y2 = y * y, ops = Q(h.s + 1, w), one(1L, w);
  auto term = [&](const BigFloat& c) {
    BigFloat t = x - c;
    return y / (t * t + y2);
  };
  BigFloat v = (term(one) - term(-one)) * Q(h.a + h.b, w);
  v += (term(-ops) - term(ops)) * Q(h.b, w);
  v.set_prec(prec);
  return v;
}

namespace {

// Bisection on a sign change of fn over [lo, hi]; fn(lo) and fn(hi) must have
// opposite signs (infinite values allowed).
template <class Fn>
BigFloat bisect(Fn&& fn, BigFloat lo, BigFloat hi, prec_t prec) {
  int s_lo = fn(lo).sign();
  BigFloat width_tol = pow2(-prec, 64) * max(abs(lo), abs(hi)).with_prec(64);
  for (long it = 0; it < 4 * prec + 200; ++it) {
    BigFloat mid = (lo + hi) / 2L;
    if (!(mid > lo) || !(mid < hi)) break;
    int s_mid = fn(mid).sign();
    if (s_mid == 0) return mid;
    if (s_mid == s_lo)
      lo = mid;
    else
      hi = mid;
    if ((hi - lo).with_prec(64) <= width_tol) break;
  }
  return (lo + hi) / 2L;
}

}  // namespace

EtaRoots eta_roots(const HParams& h, prec_t prec) {
  check_h_params(h);
  prec_t w = prec + kGuard;
  BigFloat zero(w), one(1L, w), ops = Q(h.s + 1, w);
  auto H0 = [&](const BigFloat& x) { return H_eval(h, x, zero, w); };
  if (!(H0(one).sign() < 0) || !(H0(ops).sign() > 0))
    throw NumericFailure("eta_roots: no sign change on (1, 1+s)");
  BigFloat eta0 = bisect(H0, one, ops, w);

  BigFloat hi = ops * 2L;
  for (int i = 0; H0(hi).sign() >= 0; ++i) {
    if (i > 4 * w) throw NumericFailure("eta_roots: no upper bracket for eta1");
    hi *= 2L;
  }
  BigFloat eta1 = bisect(H0, ops, hi, w);
  EtaRoots r{eta0, eta1, H_dx(h, eta0, zero, w), H_dx(h, eta1, zero, w)};
  if (!(r.dHdx_eta0.sign() > 0) || !(r.dHdx_eta1.sign() < 0))
    throw NumericFailure("eta_roots: derivative signs at eta0/eta1 have the wrong sign");
  for (BigFloat* v : {&r.eta0, &r.eta1, &r.dHdx_eta0, &r.dHdx_eta1}) v->set_prec(prec);
  return r;
}

BigFloat y0_curve(const HParams& h, const BigFloat& x_in, prec_t prec) {
  check_h_params(h);
  prec_t w = prec + kGuard;
  BigFloat x = x_in.with_prec(w), zero(w);
  if (!(H_eval(h, x, zero, w).sign() > 0))
    throw NumericFailure("y0_curve: x is outside (eta0, eta1)");
  auto Hy = [&](const BigFloat& y) { return H_eval(h, x, y, w); };
  BigFloat hi(1L, w);
  for (int i = 0; Hy(hi).sign() >= 0; ++i) {
    if (i > w) throw NumericFailure("y0_curve: no upper bracket");
    hi *= 2L;
  }
  BigFloat y = bisect(Hy, zero, hi, w);
  if (!(H_dy(h, x, y, w).sign() < 0)) throw NumericFailure("y0_curve: dH/dy >= 0 on the curve");
  y.set_prec(prec);
  return y;
}

std::vector<CurvePoint> y0_scan(const HParams& h, long count, prec_t prec) {
  EtaRoots e = eta_roots(h, prec);
  std::vector<CurvePoint> out;
  BigFloat span = e.eta1 - e.eta0;
  for (long i = 0; i < count; ++i) {
    BigFloat x = e.eta0 + span * (i + 1) / (count + 1);
    out.push_back({x, y0_curve(h, x, prec), Plane::h});
  }
  return out;
}

std::vector<CurvePoint> y_curve_scan(const Shape& s, long count, prec_t prec) {
  HParams h = h_params(make_context(s));
  std::vector<CurvePoint> out;
  for (auto& p : y0_scan(h, count, prec)) {
    BigFloat x = (p.x - 1L) * s.r / 2L;
    BigFloat y = p.y * s.r / 2L;
    out.push_back({x, y, Plane::f});
  }
  return out;
}

std::vector<AxisSample> imag_axis_scan(const HParams& h, const std::vector<BigFloat>& grid, prec_t prec) {
  check_h_params(h);
  std::vector<AxisSample> out;
  for (const auto& y : grid) {
    BigComplex w(BigFloat(prec), y.with_prec(prec));
    out.push_back({y, h_eval(h, w, prec).im.with_prec(prec)});
  }
  return out;
}

namespace {

// Newton polish of h(w) = lambda pi i from a good starting point.
BigComplex polish_h(const HParams& h, BigComplex w0, const BigFloat& target_im, prec_t prec) {
  prec_t w = prec + kGuard;
  BigComplex z(w0.re.with_prec(w), w0.im.with_prec(w));
  BigComplex target(BigFloat(w), target_im.with_prec(w));
  for (int it = 0; it < 100; ++it) {
    BigComplex step = (h_eval(h, z, w) - target) / h_derivative(h, z, w);
    z -= step;
    if (abs(step).with_prec(64) < pow2(-(w - 16), 64) * max(abs(z).with_prec(64), BigFloat(1L, 64))) break;
  }
  return z;
}

BigFloat signed_zero(int sign, prec_t p) {
  BigFloat z(p);
  mpfr_set_zero(z.get(), sign);
  return z;
}

}  // namespace

HSolutionSet solve_h(const HParams& h, const mpq_class& lambda, prec_t prec) {
  check_h_params(h);
  prec_t w = prec + kGuard;
  const int sgn = ::sgn(lambda);
  mpq_class al = abs(lambda);
  BigFloat pi = const_pi(w);
  BigFloat target = BigFloat(lambda, w) * pi;

  auto residual = [&](const BigComplex& z) {
    BigComplex v = h_eval(h, z, w);
    v.im -= target;
    return abs(v).with_prec(64);
  };
  auto bank = [&](const BigFloat& x, int side) {
    BigComplex z(x.with_prec(w), signed_zero(side, w));
    return HSolution{side > 0 ? HSolution::upper_bank : HSolution::lower_bank, z, residual(z)};
  };

  HSolutionSet out{0, {}};
  if (al > h.a + h.b) {
    out.case_number = 6;
    return out;
  }
  if (al == h.a + h.b) {
    out.case_number = 3;
    out.solutions.push_back(bank(BigFloat(w), sgn));
    return out;
  }
  EtaRoots e = eta_roots(h, w);
  if (sgn == 0) {
    out.case_number = 1;
    BigComplex z(e.eta0.with_prec(w), BigFloat(w));
    out.solutions.push_back({HSolution::interior, z, residual(z)});
    out.solutions.push_back(bank(-e.eta0, 1));
    out.solutions.push_back(bank(-e.eta0, -1));
    return out;
  }
  if (al == h.b) {
    out.case_number = 2;
    out.solutions.push_back(bank(-e.eta1, sgn));
    out.solutions.push_back(bank(e.eta1, sgn));
    return out;
  }
  BigFloat abs_target = abs(target);
  prec_t coarse = std::min<prec_t>(w, 96);
  if (al > h.b) {
    out.case_number = 4;
    // Im h(iy) = 2(a+b) atan(1/y) + 2b atan(y/(1+s)) decreases from (a+b)pi to b pi.
    BigFloat ops = Q(h.s + 1, coarse);
    auto g = [&](const BigFloat& y) {
      BigFloat one(1L, coarse);
      return 2L * Q(h.a + h.b, coarse) * atan(one / y) + 2L * Q(h.b, coarse) * atan(y / ops) -
             abs_target.with_prec(coarse);
    };
    BigFloat lo = pow2(-8, coarse), hi(1L, coarse);
    while (g(lo).sign() <= 0) lo /= 256L;
    while (g(hi).sign() >= 0) hi *= 2L;
    BigFloat y = bisect(g, lo, hi, coarse);
    BigComplex z0(BigFloat(w), sgn > 0 ? y.with_prec(w) : -y.with_prec(w));
    BigComplex z = polish_h(h, z0, target, prec);
    z.re = BigFloat(w);  // the solution is purely imaginary
    out.solutions.push_back({HSolution::interior, z, residual(z)});
    return out;
  }
  out.case_number = 5;
  // x in (eta0, eta1) with Im h(x + i Y0(x)) = |lambda| pi; Im h increases along the curve.
  auto g = [&](const BigFloat& x) {
    BigFloat y = y0_curve(h, x, coarse);
    return h_eval(h, BigComplex(x.with_prec(coarse), y), coarse).im - abs_target.with_prec(coarse);
  };
  BigFloat span = e.eta1.with_prec(coarse) - e.eta0.with_prec(coarse);
  BigFloat lo = e.eta0.with_prec(coarse) + span * pow2(-40, coarse);
  BigFloat hi = e.eta1.with_prec(coarse) - span * pow2(-40, coarse);
  if (!(g(lo).sign() < 0) || !(g(hi).sign() > 0))
    throw NumericFailure("solve_h: target not bracketed on the Y0 curve");
  BigFloat x = bisect(g, lo, hi, 80);
  BigFloat y = y0_curve(h, x, coarse);
  BigComplex z0(x.with_prec(w), y.with_prec(w));
  BigComplex target_pos(BigFloat(w), abs_target);
  BigComplex z = polish_h(h, z0, abs_target, prec);
  if (sgn < 0) z = conj(z);
  out.solutions.push_back({HSolution::interior, z, residual(z)});
  BigComplex mirror(-z.re, z.im);
  out.solutions.push_back({HSolution::interior, mirror, residual(mirror)});
  return out;
}

// ---- saddle points ----

std::string to_string(TauStrategy s) {
  switch (s) {
    case TauStrategy::newton: return "newton";
    case TauStrategy::census: return "census";
    case TauStrategy::curve: return "curve";
  }
  return "?";
}

PhasePoint mu0_point(const Shape& s, prec_t prec) {
  // f' increases on (0, q); in u = log(q - z) it decreases, so solve
  // F(u) = f'(q - e^u) = 0 by bracketed Newton.
  prec_t w = prec + kGuard;
  const BigFloat logq = log(BigFloat(s.q, w));
  auto F = [&](const BigFloat& u) {
    return fprime_eval(s, phase_point_log(s, BigComplex(u))).re;
  };
  BigFloat hi(w), lo(w);
  for (long j = 1;; ++j) {  // z = q 2^-j, F < 0
    if (j > w) throw NumericFailure("mu0: no lower bracket");
    hi = logq + log(1L - pow2(-j, w));
    if (F(hi).sign() < 0) break;
  }
  for (long j = 0;; ++j) {  // z -> q, F > 0
    if (j > 60) throw NumericFailure("mu0: no upper bracket");
    lo = logq - pow2(j, w);
    if (F(lo).sign() > 0) break;
  }
  BigFloat u = (lo + hi) / 2L;
  for (int it = 0; it < 4 * w; ++it) {
    PhasePoint P = phase_point_log(s, BigComplex(u));
    BigFloat Fu = fprime_eval(s, P).re;
    if (Fu.is_zero()) break;
    if (Fu.sign() > 0)
      lo = u;
    else
      hi = u;
    BigFloat dF = -(fpp_eval(s, P).re * P.q_minus_z.re);
    BigFloat next = u - Fu / dF;
    if (!(next > lo && next < hi)) next = (lo + hi) / 2L;
    BigFloat step = abs(next - u).with_prec(64);
    u = next;
    if (step < pow2(-(w - 12), 64) * max(abs(u).with_prec(64), BigFloat(1L, 64))) break;
    if (!((hi - lo).with_prec(64) > pow2(-(w - 4), 64) * max(abs(u).with_prec(64), BigFloat(1L, 64)))) break;
  }
  PhasePoint P = phase_point_log(s, BigComplex(u));
  P.z.im = BigFloat(prec);
  P.q_minus_z.im = BigFloat(prec);
  P.z.re.set_prec(prec);
  P.q_minus_z.re.set_prec(prec);
  return P;
}

namespace {

struct NewtonOutcome {
  bool ok;
  PhasePoint point;
  int iterations;
  std::string why;
};

NewtonOutcome newton_u(const Shape& s, const mpq_class& lambda, BigComplex u, prec_t w) {
  BigFloat target = BigFloat(lambda, w) * const_pi(w);
  BigComplex best_u = u;
  for (int it = 1; it <= 200; ++it) {
    PhasePoint P{BigComplex(w), BigComplex(w)};
    try {
      P = phase_point_log(s, u);
    } catch (const BranchError& e) {
      return {false, P, it, e.what()};
    }
    BigComplex F = fprime_eval(s, P);
    F.im -= target;
    BigComplex dF = -(fpp_eval(s, P) * P.q_minus_z);
    BigComplex step = F / dF;
    if (!step.re.is_finite() || !step.im.is_finite()) return {false, P, it, "non-finite Newton step"};
    u -= step;
    u.im = reduce_angle(u.im);
    BigFloat size = abs(step).with_prec(64);
    if (size < pow2(-(w - 12), 64) * max(abs(u).with_prec(64), BigFloat(1L, 64)))
      return {true, phase_point_log(s, u), it, ""};
  }
  return {false, phase_point_log(s, u), 200, "no convergence in 200 iterations"};
}

BigFloat tau_residual(const Shape& s, const PhasePoint& P, const mpq_class& lambda, prec_t w) {
  BigComplex F = fprime_eval(s, P);
  F.im -= BigFloat(lambda, w) * const_pi(w);
  return abs(F).with_prec(64);
}

// Accept only tau_lambda itself: upper half-plane, right of -r/2 and with
// mu0 < Re tau < mu1 (compared through q - tau to keep precision near q).
std::string validate_tau(const Shape& s, const mpq_class& lambda, const PhasePoint& P, prec_t prec) {
  if (lambda > 0 && !(P.z.im.sign() > 0)) return "Im tau <= 0";
  if (lambda == 0 && !P.z.im.is_zero()) return "tau_0 must be real";
  if (lambda > 0) {
    PhasePoint m0 = mu0_point(s, 64 + prec / 4);
    if (!(P.q_minus_z.re < m0.q_minus_z.re.with_prec(P.z.prec()))) return "Re tau <= mu0";
  }
  HParams h = h_params(make_context(s));
  EtaRoots e = eta_roots(h, 96);
  BigFloat mu1 = (e.eta1 - 1L) * s.r / 2L;
  if (!(P.z.re < mu1)) return "Re tau >= mu1";
  return "";
}

TauResult finish(const Shape& s, const mpq_class& lambda, const PhasePoint& P, prec_t prec,
                 TauStrategy st, int iterations) {
  prec_t w = prec + kGuard;
  BigFloat res = tau_residual(s, P, lambda, w);
  if (!(res < pow2(-prec / 2, 64)))
    throw NumericFailure(to_string(st) + ": residual " + res.to_string(4) + " above 2^-" +
                         std::to_string(prec / 2));
  std::string bad = validate_tau(s, lambda, P, prec);
  if (!bad.empty()) throw NumericFailure(to_string(st) + ": converged to the wrong root (" + bad + ")");
  TauResult r{P.z, P.q_minus_z, res, st, iterations};
  r.tau.re.set_prec(prec);
  r.tau.im.set_prec(prec);
  r.q_minus_tau.re.set_prec(prec);
  r.q_minus_tau.im.set_prec(prec);
  return r;
}

TauResult polish_from(const Shape& s, const mpq_class& lambda, const BigComplex& z0, prec_t prec,
                      TauStrategy st) {
  prec_t w = prec + kGuard;
  BigComplex zw(z0.re.with_prec(w), z0.im.with_prec(w));
  BigComplex u = log(BigFloat(s.q, w) - zw);
  NewtonOutcome o = newton_u(s, lambda, u, w);
  if (!o.ok) throw NumericFailure(to_string(st) + ": polishing failed (" + o.why + ")");
  return finish(s, lambda, o.point, prec, st, o.iterations);
}

}  // namespace

TauResult find_tau(const Shape& s, const mpq_class& lambda, prec_t prec, TauStrategy strategy) {
  if (lambda < 0 || lambda >= s.k) throw InvalidInput("find_tau: need 0 <= lambda < k");
  prec_t w = prec + kGuard;
  if (lambda == 0) {
    PhasePoint P = mu0_point(s, w);
    return finish(s, lambda, P, prec, strategy, 0);
  }
  switch (strategy) {
    case TauStrategy::newton: {
      // Seed near q, then the linearised seed u ~ (C - lambda pi i)/k with
      // C = (q+k) log(q/(q+r)) + k log(2q+r).
      BigFloat q(s.q, w);
      BigComplex z0(q * BigFloat(0.999, w), q * BigFloat(0.001, w));
      std::vector<BigComplex> seeds{log(q - z0)};
      BigFloat C = (s.q + s.k) * log(q / (q + s.r)) + s.k * log(2L * q + s.r);
      seeds.emplace_back(C / s.k, -(BigFloat(lambda, w) * const_pi(w)) / s.k);
      std::string why;
      for (const auto& u0 : seeds) {
        NewtonOutcome o = newton_u(s, lambda, u0, w);
        if (!o.ok) {
          why += o.why + "; ";
          continue;
        }
        try {
          return finish(s, lambda, o.point, prec, strategy, o.iterations);
        } catch (const NumericFailure& e) {
          why += std::string(e.what()) + "; ";
        }
      }
      throw NumericFailure("newton: all seeds failed: " + why);
    }
    case TauStrategy::curve: {
      HParams h = h_params(make_context(s));
      HSolutionSet set = solve_h(h, lambda, prec);
      if (set.case_number != 5) throw NumericFailure("curve: unexpected solution case");
      const BigComplex& wsol = set.solutions.front().w;
      BigComplex z0 = (wsol - BigFloat(1L, wsol.prec())) * BigFloat(s.r, wsol.prec()) / BigFloat(2L, 64);
      return polish_from(s, lambda, z0, prec, strategy);
    }
    case TauStrategy::census: {
      if (lambda.get_den() != 1 || (lambda.get_num() - s.k) % 2 != 0)
        throw InvalidInput("census: tau_lambda is a root of P only for integer lambda = k mod 2");
      if (s.q + 2 * s.k - 1 > 200) throw InvalidInput("census: degree above 200");
      CensusReport c = p_roots_census(s, std::max<prec_t>(w, 256));
      BigFloat target = BigFloat(lambda, w) * const_pi(w);
      const BigComplex* best = nullptr;
      BigFloat best_res = infinity(1, 64);
      for (const auto& z : c.roots) {
        if (!(z.im.sign() > 0) || !(z.re > BigFloat(-s.r, 64) / 2L)) continue;
        BigComplex F = fprime_eval(s, z);
        F.im -= target;
        BigFloat res = abs(F).with_prec(64);
        if (res < best_res) {
          best_res = res;
          best = &z;
        }
      }
      if (!best) throw NumericFailure("census: no root in the upper right quadrant matches");
      return polish_from(s, lambda, *best, prec, strategy);
    }
  }
  throw InvalidInput("find_tau: unknown strategy");
}

TauResult find_tau_auto(const Shape& s, const mpq_class& lambda, prec_t prec) {
  std::string why;
  for (TauStrategy st : {TauStrategy::newton, TauStrategy::curve, TauStrategy::census}) {
    try {
      return find_tau(s, lambda, prec, st);
    } catch (const NumericFailure& e) {
      why += std::string(e.what()) + " | ";
    } catch (const InvalidInput& e) {
      why += std::string(e.what()) + " | ";
    }
  }
  throw NumericFailure("find_tau: every strategy failed: " + why);
}

std::vector<mpz_class> census_polynomial(const Shape& s) {
  auto power = [](std::vector<mpz_class> base, long e) {
    std::vector<mpz_class> r{1};
    for (long i = 0; i < e; ++i) {
      std::vector<mpz_class> t(r.size() + base.size() - 1, 0);
      for (std::size_t a = 0; a < r.size(); ++a)
        for (std::size_t b = 0; b < base.size(); ++b) t[a + b] += r[a] * base[b];
      r = std::move(t);
    }
    return r;
  };
  auto mul = [](const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
    std::vector<mpz_class> t(x.size() + y.size() - 1, 0);
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = 0; b < y.size(); ++b) t[a + b] += x[a] * y[b];
    return t;
  };
  const long q = s.q, k = s.k, r = s.r;
  auto left = mul(power({r, 1}, q + k), power({-q, 1}, k));
  auto right = mul(power({0, 1}, q + k), power({q + r, 1}, k));
  std::vector<mpz_class> p(std::max(left.size(), right.size()), 0);
  for (std::size_t i = 0; i < left.size(); ++i) p[i] += left[i];
  for (std::size_t i = 0; i < right.size(); ++i) p[i] -= right[i];
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

bool CensusReport::consistent() const {
  return on_line + right + left == degree && min_distance.sign() > 0;
}

CensusReport p_roots_census(const Shape& s, prec_t prec) {
  auto coeffs = census_polynomial(s);
  CensusReport c{static_cast<long>(coeffs.size()) - 1, 0, 0, 0, BigFloat(64), {}};
  if (c.degree > 200) throw InvalidInput("census: degree above 200");
  c.roots = polynomial_roots(coeffs, prec);
  BigFloat half(-s.r, prec);
  half /= 2L;
  BigFloat tol = pow2(-prec / 4, 64);
  for (const auto& z : c.roots) {
    BigFloat d = (z.re - half).with_prec(64);
    if (abs(d) < tol)
      ++c.on_line;
    else if (d.sign() > 0)
      ++c.right;
    else
      ++c.left;
  }
  c.min_distance = infinity(1, 64);
  for (std::size_t i = 0; i < c.roots.size(); ++i)
    for (std::size_t j = i + 1; j < c.roots.size(); ++j)
      c.min_distance = min(c.min_distance, abs(c.roots[i] - c.roots[j]).with_prec(64));
  return c;
}

SaddleData saddle_constants(const Shape& s, prec_t prec) {
  prec_t w = prec + kGuard;
  mpq_class lambda(s.k - 2);
  PhasePoint P{BigComplex(w), BigComplex(w)};
  BigFloat residual(64);
  if (s.k == 2) {
    P = mu0_point(s, w);
    residual = tau_residual(s, P, lambda, w);
  } else {
    TauResult t = find_tau_auto(s, lambda, w);
    P = {t.tau, t.q_minus_tau};
    residual = t.residual;
  }
  BigComplex f0 = f0_eval(s, P), fpp = fpp_eval(s, P), g = g_eval(s, P);
  BigFloat phi = -arg(fpp) / 2L + arg(g);
  SaddleData d{lambda, P.z, P.q_minus_z, -f0.re, f0.im, phi, f0, fpp, g, residual};
  for (BigFloat* v : {&d.alpha, &d.omega, &d.phi}) v->set_prec(prec);
  return d;
}

long log_squared_floor(long q) {
  BigFloat l = log(BigFloat(q, 128));
  return mpfr_get_si(floor(l * l).get(), MPFR_RNDD);
}

std::vector<TauRatio> tau_asymptotic_scan(long k, const std::vector<long>& q_list, prec_t prec) {
  std::vector<TauRatio> out;
  for (long q : q_list) {
    long r = log_squared_floor(q);
    Shape s = make_shape(k, q, r);
    BigComplex qmt(prec);
    if (k == 2) {
      qmt = mu0_point(s, prec).q_minus_z;
    } else {
      qmt = find_tau_auto(s, mpq_class(k - 2), prec).q_minus_tau;
    }
    BigFloat l = log(BigFloat(q, prec));
    out.push_back({q, r, log(abs(qmt)) / (l * l)});
  }
  return out;
}

}  // namespace zf
