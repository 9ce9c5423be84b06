#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zetaforms/errors.hpp"
#include "zetaforms/hurwitz.hpp"
#include "zetaforms/linform.hpp"

using namespace zf;

namespace {

const CoefficientTable& table_2356() {
  static const CoefficientTable t = build_coefficients(make_params(2, 3, 5, 6));
  return t;
}

// exact rational as a BigFloat
BigFloat bf(const mpq_class& v, prec_t prec = 256) { return BigFloat(v, prec); }

}  // namespace

TEST(Linform, TableIsIntegralAndSymmetric) {
  const auto& t = table_2356();
  ASSERT_EQ(t.c.size(), 91u);
  EXPECT_TRUE(t.integral());
  EXPECT_TRUE(check_table(t).empty());
  for (long j = 0; j <= 90; ++j) EXPECT_EQ(t.c[j], -t.c[90 - j]) << j;
  EXPECT_EQ(t.c[45], 0);
}

TEST(Linform, MatchesStraightProduct) {
  Params p = make_params(2, 3, 5, 6);
  const auto& t = table_2356();
  for (long j : {0L, 1L, 2L, 17L, 44L, 45L, 46L, 89L, 90L}) {
    mpq_class ref = oracle::coefficient(p, j);
    EXPECT_EQ(t.coefficient(j), ref) << "j = " << j;
  }
  // j = 0: binom(90, 0) * 90 * (A B)^2
  mpq_class ab = t.a_factor[0] * t.b_factor[0];
  EXPECT_EQ(mpq_class(90) * ab * ab, oracle::coefficient(p, 0));
}

TEST(Linform, OddWeightStraightProduct) {
  Params p = make_params(3, 3, 7, 6);
  CoefficientTable t = build_coefficients(p, 2);
  EXPECT_TRUE(check_table(t).empty());
  for (long j : {0L, 5L, 63L, 126L}) EXPECT_EQ(t.coefficient(j), oracle::coefficient(p, j));
  for (long j = 0; j <= p.rqn(); ++j) ASSERT_EQ(t.c[j], t.c[p.rqn() - j]);
}

TEST(Linform, ParallelBuildIsIdentical) {
  Params p = make_params(2, 3, 5, 12);
  CoefficientTable a = build_coefficients(p, 1), b = build_coefficients(p, 3);
  EXPECT_EQ(a.c, b.c);
}

TEST(Linform, RhoDivisibility) {
  Params p = make_params(2, 3, 5, 6);
  LinearForm f = rho(p, table_2356());
  RhoDivisibility d = check_divisibility(f);
  EXPECT_TRUE(d.all());

  mpq_class q_rho1 = f.rho1 * 3;
  EXPECT_EQ(q_rho1.get_den(), 1);
  ASSERT_TRUE(f.rho_a.count(1));
  mpq_class q_rho_a = f.rho_a.at(1) * 3;
  EXPECT_EQ(q_rho_a.get_den(), 1);
  mpz_class d90 = oracle::lcm_fold(90);
  mpq_class scaled = f.rho0 * mpq_class(d90 * d90);
  EXPECT_EQ(scaled.get_den(), 1);

  // Deterministic on regeneration.
  LinearForm g = rho(p, build_coefficients(p));
  EXPECT_EQ(f.rho0, g.rho0);
  EXPECT_EQ(f.rho1, g.rho1);
  EXPECT_EQ(f.rho_a, g.rho_a);
}

TEST(Linform, RhoFromDefinition) {
  // rho_{a/q} = ((-1)^{k-1}/q) sum_j C_{qj+a}; for odd q rho_1 is the a = q
  // class.
  Params p = make_params(3, 3, 7, 6);
  CoefficientTable t = build_coefficients(p);
  LinearForm f = rho(p, t);
  mpq_class sa = 0, s1 = 0;
  for (long j = 0; j <= p.rqn(); ++j) {
    if (j % 3 == 0) s1 += t.coefficient(j);
    if (j % 3 == 1) sa += t.coefficient(j);
  }
  EXPECT_EQ(f.rho_a.at(1), sa / 3);
  EXPECT_EQ(f.rho1, s1 / 3);
}

TEST(Linform, EvenModulusDivisibility) {
  Params p = make_params(2, 4, 5, 24);
  CoefficientTable t = build_coefficients(p, 2);
  EXPECT_TRUE(check_table(t).empty());
  EXPECT_TRUE(check_divisibility(rho(p, t)).all());
}

TEST(Linform, BetaValue) {
  prec_t w = 200;
  BigFloat expected = 15L * const_log2(w) +
                      2L * (11L * log(BigFloat(5.5, w)) - 5L * log(BigFloat(2.5, w)) +
                            3L * log(BigFloat(3L, w)));
  BigFloat beta = beta_value(make_shape(2, 3, 5), w);
  EXPECT_LT(abs(beta - expected), pow2(-w + 8, 64));
  EXPECT_NEAR(beta.to_double(), 45.33, 0.01);

  BigFloat prev = beta_value(make_shape(2, 3, 5), 128);
  for (long r = 6; r <= 54; ++r) {
    BigFloat b = beta_value(make_shape(2, 3, r), 128);
    EXPECT_GT(b, prev) << "r = " << r;
    prev = b;
  }

  BigFloat lo = beta_value(make_shape(2, 3, 5), 128), hi = beta_value(make_shape(2, 3, 5), 256);
  EXPECT_LT(abs(lo - hi), pow2(-128 + 2 + lo.exponent2(), 64));
}

TEST(Linform, CoefficientGrowth) {
  std::vector<Params> fam;
  for (long n : {6L, 12L, 18L, 24L}) fam.push_back(make_params(2, 3, 5, n));
  auto g = coefficient_growth(fam, 128);
  ASSERT_EQ(g.size(), 4u);
  BigFloat beta = beta_value(make_shape(2, 3, 5), 128);
  EXPECT_LE(g[0].slope, beta + 1L);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_LE(g[i].slope, beta) << g[i].n;
    if (i) EXPECT_GE(g[i].slope, g[i - 1].slope);
  }
  EXPECT_TRUE(coefficient_growth({}, 64).empty());
}

TEST(Linform, DerivativeTermVanishesOnLeadingZeros) {
  Params p = make_params(2, 3, 5, 6);
  for (long m = 1; m <= p.qn(); ++m) EXPECT_EQ(eval_R_derivative_term(p, table_2356(), m), 0) << m;
  EXPECT_NE(eval_R_derivative_term(p, table_2356(), p.qn() + 1), 0);
}

TEST(Linform, DerivativeTermFiniteDifference) {
  // Exact central differences of R_n with step 2^-60.
  mpq_class h(1);
  h /= mpz_class(1) << 60;
  {
    Params p = make_params(2, 3, 5, 6);
    long m = p.qn() + 1;
    mpq_class exact = eval_R_derivative_term(p, table_2356(), m);
    mpq_class fd = (oracle::r_exact(p, m + h) - oracle::r_exact(p, m - h)) / (2 * h);
    EXPECT_LT(abs(bf(fd - exact) / bf(exact)), BigFloat(1e-20, 64));
  }
  {
    Params p = make_params(3, 3, 7, 6);
    CoefficientTable t = build_coefficients(p);
    long m = p.qn() + 2;
    mpq_class exact = eval_R_derivative_term(p, t, m);
    mpq_class fd =
        (oracle::r_exact(p, m + h) - 2 * oracle::r_exact(p, mpq_class(m)) + oracle::r_exact(p, m - h)) /
        (2 * h * h);
    EXPECT_LT(abs(bf(fd - exact) / bf(exact)), BigFloat(1e-15, 64));
  }
}

TEST(Linform, SeriesTruncation) {
  Params p = make_params(2, 3, 5, 6);
  SeriesPartial z = s_n_truncated(p, table_2356(), p.qn());
  EXPECT_EQ(z.partial, 0);
  EXPECT_GT(z.tail, 0L);
  EXPECT_THROW(s_n_truncated(p, table_2356(), p.qn() - 1), InvalidInput);

  // The tail bound must dominate the observed change when the cut moves out.
  SeriesPartial a = s_n_truncated(p, table_2356(), 2000), b = s_n_truncated(p, table_2356(), 8000);
  EXPECT_LE(abs(bf(a.partial - b.partial)), a.tail);
  EXPECT_LT(b.tail, a.tail);
}

TEST(Linform, SeriesMatchesZetaRoute) {
  Params p = make_params(2, 3, 5, 6);
  LinearForm f = rho(p, table_2356());
  Certified zr = s_n_via_zeta(f, zeta_basis(2, 3, 512), 64);
  long terms = terms_for_tail(p, zr.value.exponent2() - 40);
  SeriesPartial sp = s_n_truncated(p, table_2356(), terms);
  EXPECT_LE(abs(bf(sp.partial, 512) - zr.value), sp.tail + zr.error);
  // Reference value computed separately in arbitrary precision.
  BigFloat ref("-1.760585676572330301808539e38", 128);
  EXPECT_LT(abs(zr.value / ref - 1L), BigFloat(1e-22, 64));
}

TEST(Linform, ZeroFormGivesZero) {
  Params p = make_params(2, 3, 5, 6);
  LinearForm f{p, 0, 0, {{1, mpq_class(0)}}};
  Certified z = s_n_via_zeta(f, zeta_basis(2, 3, 256), 64);
  EXPECT_TRUE(z.value.is_zero());
}
