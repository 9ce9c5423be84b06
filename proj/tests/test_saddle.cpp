#include <gtest/gtest.h>

#include <random>

#include "zetaforms/errors.hpp"
#include "zetaforms/saddle.hpp"

using namespace zf;

namespace {

BigComplex cz(double re, double im, prec_t w) { return {BigFloat(re, w), BigFloat(im, w)}; }

HParams hp(long a, long b, mpq_class s) {
  s.canonicalize();
  return {mpq_class(a), mpq_class(b), s};
}

const HParams kCases[] = {hp(3, 2, mpq_class(6, 5)), hp(5, 2, mpq_class(4, 5)), hp(4, 3, mpq_class(1, 2))};

// mu0 by plain bisection on the sign of f' over (0, q).
BigFloat mu0_bisect(const Shape& s, prec_t w) {
  BigFloat lo = pow2(-20, w), hi = BigFloat(s.q, w) - pow2(-20, w);
  auto fp = [&](const BigFloat& x) { return fprime_eval(s, BigComplex(x)).re; };
  int slo = fp(lo).sign();
  for (int i = 0; i < 120; ++i) {
    BigFloat mid = (lo + hi) / 2L;
    if (fp(mid).sign() == slo)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2L;
}

}  // namespace

TEST(Phase, F0Identity) {
  std::mt19937_64 rng(3);
  prec_t w = 192;
  for (Shape s : {make_shape(2, 3, 5), make_shape(3, 5, 7)}) {
    std::uniform_real_distribution<double> X(0.2, s.q - 0.2), Y(-2, 2);
    for (int i = 0; i < 10; ++i) {
      BigComplex z = cz(X(rng), Y(rng), w);
      BigComplex lhs = f0_eval(s, z), rhs = f_eval(s, z) - fprime_eval(s, z) * z;
      EXPECT_LT(abs(lhs - rhs), pow2(-w + 4, 64) * max(abs(rhs), BigFloat(1L, 64)));
    }
  }
}

TEST(Phase, DerivativesMatchCentralDifferences) {
  std::mt19937_64 rng(5);
  prec_t w = 192;
  BigFloat h = pow2(-w / 4, w);
  BigComplex hz(h, BigFloat(w));
  for (Shape s : {make_shape(2, 3, 5), make_shape(3, 5, 7), make_shape(4, 6, 11)}) {
    std::uniform_real_distribution<double> X(0.3, s.q - 0.3), Y(0.05, 2);
    for (int i = 0; i < 20; ++i) {
      BigComplex z = cz(X(rng), (i % 2 ? 1 : -1) * Y(rng), w);
      BigComplex d1 = (f_eval(s, z + hz) - f_eval(s, z - hz)) / (2L * h);
      BigComplex fp = fprime_eval(s, z);
      EXPECT_LT(abs(d1 - fp) / abs(fp), pow2(-w / 3, 64));
      BigComplex d2 = (fprime_eval(s, z + hz) - fprime_eval(s, z - hz)) / (2L * h);
      BigComplex fpp = fpp_eval(s, z);
      EXPECT_LT(abs(d2 - fpp) / abs(fpp), pow2(-w / 3, 64));
    }
  }
}

TEST(Phase, ImaginaryPartSign) {
  std::mt19937_64 rng(9);
  Shape s = make_shape(3, 5, 7);
  std::uniform_real_distribution<double> X(-20, 20), Y(0.01, 5);
  for (int i = 0; i < 50; ++i) {
    double y = (i % 2 ? 1 : -1) * Y(rng);
    BigComplex z = cz(X(rng), y, 128);
    EXPECT_EQ(fprime_eval(s, z).im.sign(), y > 0 ? 1 : -1);
  }
}

TEST(Phase, BranchCutRejected) {
  Shape s = make_shape(2, 3, 5);
  EXPECT_THROW(phase_point(s, cz(-1, 0, 128)), BranchError);
  EXPECT_THROW(phase_point(s, cz(4, 0, 128)), BranchError);
}

TEST(HPlane, Symmetries) {
  prec_t w = 128;
  for (const auto& h : kCases) {
    for (double y : {0.1, 1.0, 7.0}) {
      BigFloat Y(y, w);
      EXPECT_TRUE(H_eval(h, BigFloat(w), Y, w).is_zero() ||
                  abs(H_eval(h, BigFloat(w), Y, w)) < pow2(-w + 8, 64));
      for (double x : {0.3, 1.7, 4.2}) {
        BigFloat X(x, w);
        EXPECT_LT(abs(H_eval(h, -X, Y, w) + H_eval(h, X, Y, w)), pow2(-w + 8, 64));
      }
    }
  }
}

TEST(HPlane, SubstitutionMatchesPhase) {
  std::mt19937_64 rng(13);
  prec_t w = 160;
  for (Shape s : {make_shape(2, 3, 5), make_shape(3, 5, 7)}) {
    HParams h = h_params(make_context(s));
    EXPECT_EQ(h.a, s.q);
    EXPECT_EQ(h.b, s.k);
    EXPECT_EQ(h.s, mpq_class(2 * s.q, s.r));
    std::uniform_real_distribution<double> X(-3, 3), Y(0.05, 3);
    for (int i = 0; i < 10; ++i) {
      BigComplex wv = cz(X(rng), (i % 2 ? 1 : -1) * Y(rng), w);
      BigComplex z = (wv - 1L) * BigFloat(mpq_class(s.r, 2), w);
      BigComplex lhs = fprime_eval(s, z), rhs = h_eval(h, wv, w);
      EXPECT_LT(abs(lhs - rhs), pow2(-w + 12, 64));
    }
  }
}

TEST(HPlane, EtaRootsAndSigns) {
  prec_t w = 128;
  for (const auto& h : kCases) {
    EtaRoots e = eta_roots(h, w);
    BigFloat ops(h.s + 1, w);
    EXPECT_GT(e.eta0, 1L);
    EXPECT_LT(e.eta0, ops);
    EXPECT_GT(e.eta1, ops);
    EXPECT_GT(e.dHdx_eta0.sign(), 0);
    EXPECT_LT(e.dHdx_eta1.sign(), 0);
    BigFloat zero(w);
    for (double t : {0.1, 0.5, 0.9}) {
      EXPECT_LT(H_eval(h, e.eta0 * BigFloat(t, w), zero, w).sign(), 0);
      EXPECT_GT(H_eval(h, e.eta0 + (e.eta1 - e.eta0) * BigFloat(t, w), zero, w).sign(), 0);
      EXPECT_LT(H_eval(h, e.eta1 * BigFloat(1 + 3 * t, w), zero, w).sign(), 0);
    }
  }
  auto e = eta_roots(kCases[0], w);
  EXPECT_LT(e.eta0, 2.2);
  EXPECT_GT(e.eta1, 2.2);
}

TEST(HPlane, SignGridAboveAxis) {
  const HParams& h = kCases[0];
  prec_t w = 96;
  EtaRoots e = eta_roots(h, w);
  for (int i = 1; i <= 50; ++i) {
    for (int j = 1; j <= 50; ++j) {
      BigFloat x = e.eta1 * BigFloat(1.5 * i / 50.0, w), y(0.08 * j, w);
      BigFloat H = H_eval(h, x, y, w);
      if (x <= e.eta0 || x >= e.eta1) {
        EXPECT_LT(H.sign(), 0) << x.to_double() << " " << y.to_double();
      } else if (y < y0_curve(h, x, w)) {
        EXPECT_GT(H.sign(), 0) << x.to_double() << " " << y.to_double();
      }
    }
  }
}

TEST(HPlane, CurveStartsAtZero) {
  prec_t w = 128;
  for (const auto& h : kCases) {
    EtaRoots e = eta_roots(h, w);
    BigFloat y = y0_curve(h, e.eta0 + BigFloat(1e-3, w), w);
    EXPECT_GT(y.sign(), 0);
    EXPECT_LT(y, 0.1);
  }
}

TEST(HPlane, ImaginaryAxisClosedForm) {
  prec_t w = 128;
  for (const auto& h : kCases) {
    BigFloat ops(h.s + 1, w), a(h.a, w), b(h.b, w);
    auto s = imag_axis_scan(h, {ops}, w);
    ASSERT_EQ(s.size(), 1u);
    BigFloat expect = 2L * (a + b) * atan(1L / ops) + b * const_pi(w) / 2L;
    EXPECT_LT(abs(s[0].im_h - expect), pow2(-w + 8, 64));
    BigComplex up = h_eval(h, BigComplex(BigFloat(w), ops), w);
    BigComplex dn = h_eval(h, BigComplex(BigFloat(w), -ops), w);
    EXPECT_LT(abs(up.im + dn.im), pow2(-w + 8, 64));
  }
}

TEST(HSolve, CaseStructure) {
  prec_t w = 128;
  const HParams& h = kCases[0];  // a = 3, b = 2
  EtaRoots e = eta_roots(h, w);

  HSolutionSet c1 = solve_h(h, 0, w);
  EXPECT_EQ(c1.case_number, 1);
  ASSERT_EQ(c1.solutions.size(), 3u);
  EXPECT_EQ(c1.solutions[0].kind, HSolution::interior);
  EXPECT_LT(abs(c1.solutions[0].w.re - e.eta0), pow2(-w + 8, 64));
  EXPECT_EQ(c1.solutions[1].kind, HSolution::upper_bank);
  EXPECT_EQ(c1.solutions[2].kind, HSolution::lower_bank);
  EXPECT_LT(abs(c1.solutions[1].w.re + e.eta0), pow2(-w + 8, 64));

  HSolutionSet c4 = solve_h(h, mpq_class(7, 2), w);  // b < lambda < a + b
  EXPECT_EQ(c4.case_number, 4);
  ASSERT_EQ(c4.solutions.size(), 1u);
  EXPECT_TRUE(c4.solutions[0].w.re.is_zero());
  BigFloat im_h = h_eval(h, c4.solutions[0].w, w).im;
  EXPECT_LT(abs(im_h - BigFloat(3.5, w) * const_pi(w)), pow2(-w / 2, 64));

  HSolutionSet c5 = solve_h(h, 1, w);  // 0 < lambda < b
  EXPECT_EQ(c5.case_number, 5);
  ASSERT_EQ(c5.solutions.size(), 2u);
  for (const auto& s : c5.solutions) {
    EXPECT_LT(s.residual, pow2(-w / 2, 64));
    EXPECT_GT(s.w.im.sign(), 0);
  }
  EXPECT_LT(abs(c5.solutions[0].w.re + c5.solutions[1].w.re), pow2(-w + 8, 64));

  EXPECT_EQ(solve_h(h, 2, w).case_number, 2);
  EXPECT_EQ(solve_h(h, 5, w).case_number, 3);
  HSolutionSet c6 = solve_h(h, 6, w);
  EXPECT_EQ(c6.case_number, 6);
  EXPECT_TRUE(c6.solutions.empty());
}

TEST(Tau, WeightTwoIsBisectionRoot) {
  prec_t w = 256;
  Shape s = make_shape(2, 3, 5);
  TauResult t = find_tau(s, 0, w, TauStrategy::newton);
  EXPECT_TRUE(t.tau.im.is_zero());
  EXPECT_LT(abs(t.tau.re - mu0_bisect(s, w)), pow2(-100, 64));
  EXPECT_NEAR(t.tau.re.to_double(), 2.38464386086, 1e-10);
}

TEST(Tau, StrategiesAgree) {
  prec_t w = 256;
  Shape s = make_shape(3, 5, 7);
  TauResult a = find_tau(s, 1, w, TauStrategy::newton);
  TauResult b = find_tau(s, 1, w, TauStrategy::curve);
  TauResult c = find_tau(s, 1, w, TauStrategy::census);
  EXPECT_GT(a.tau.im.sign(), 0);
  EXPECT_LT(a.residual, pow2(-w / 2, 64));
  EXPECT_LT(abs(a.tau - b.tau), pow2(-w / 2, 64));
  EXPECT_LT(abs(a.tau - c.tau), pow2(-w / 4, 64));
  EXPECT_NEAR(a.tau.re.to_double(), 4.09831206002507, 1e-12);
  EXPECT_NEAR(a.tau.im.to_double(), 0.753700544508238, 1e-12);

  // Mirror root -r - conj(tau).
  BigComplex m(-(a.tau.re + s.r), a.tau.im);
  BigComplex v = fprime_eval(s, m);
  v.im -= const_pi(w);
  EXPECT_LT(abs(v), pow2(-w / 2 + 8, 64));
}

TEST(Census, SmallCases) {
  CensusReport a = p_roots_census(make_shape(2, 3, 5), 256);
  EXPECT_EQ(a.degree, 6);
  EXPECT_EQ(a.on_line, 2);
  EXPECT_EQ(a.right, 2);
  EXPECT_EQ(a.left, 2);
  EXPECT_TRUE(a.consistent());

  CensusReport b = p_roots_census(make_shape(2, 4, 5), 256);
  EXPECT_EQ(b.degree, 7);
  EXPECT_EQ(b.on_line, 3);
  EXPECT_EQ(b.right, 2);
  EXPECT_EQ(b.left, 2);

  SaddleData sd = saddle_constants(make_shape(2, 4, 5), 256);
  BigFloat best = infinity(1, 64);
  for (const auto& z : b.roots) best = min(best, abs(z - sd.tau));
  EXPECT_LT(best, pow2(-64, 64));
}

TEST(Constants, WeightTwo) {
  SaddleData sd = saddle_constants(make_shape(2, 3, 5), 256);
  EXPECT_TRUE(sd.omega.is_zero());
  EXPECT_TRUE(sd.phi.is_zero());
  EXPECT_TRUE(sd.tau.im.is_zero());
  EXPECT_GT(sd.fpp_at_tau.re.sign(), 0);
  EXPECT_GT(sd.g_at_tau.re.sign(), 0);
  EXPECT_NEAR(sd.alpha.to_double(), -15.2801012302, 1e-9);
}

TEST(Constants, WeightThreeOmegaWindow) {
  // Large q with r = floor(log^2 q): omega + (k-2) q pi ~ k Im tau.
  for (long q : {1000L, 100000L}) {
    SaddleData sd = saddle_constants(make_shape(3, q, log_squared_floor(q)), 256);
    BigFloat pi = const_pi(256);
    BigFloat shifted = sd.omega + q * pi;
    EXPECT_GT(shifted.sign(), 0) << q;
    EXPECT_LT(shifted, pi) << q;
    BigFloat ratio = shifted / sd.tau.im;
    EXPECT_NEAR(ratio.to_double(), 3.0, 0.01) << q;
  }
}

TEST(Constants, ReF0IncreasesInLambda) {
  Shape s = make_shape(3, 5, 7);
  std::optional<BigFloat> prev;
  for (long j = 0; j < 9; ++j) {
    mpq_class lam(3 * j, 9);
    lam.canonicalize();
    TauResult t = find_tau_auto(s, lam, 256);
    BigFloat re = f0_eval(s, PhasePoint{t.tau, t.q_minus_tau}).re;
    if (prev) EXPECT_GT(re, *prev) << j;
    prev = re;
  }
}

TEST(Constants, TauAsymptotics) {
  auto r2 = tau_asymptotic_scan(2, {10000, 1000000}, 256);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_LT(abs(r2[0].ratio + BigFloat(0.5, 64)), 0.35);
  EXPECT_LT(abs(r2[1].ratio + BigFloat(0.5, 64)), abs(r2[0].ratio + BigFloat(0.5, 64)));
  EXPECT_EQ(r2[0].r, 84);
}

TEST(Constants, LogSquaredFloor) {
  EXPECT_EQ(log_squared_floor(1000), 47);
  EXPECT_EQ(log_squared_floor(10000), 84);
}
