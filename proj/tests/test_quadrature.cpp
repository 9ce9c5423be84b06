#include <gtest/gtest.h>

#include "zetaforms/errors.hpp"
#include "zetaforms/hurwitz.hpp"
#include "zetaforms/linform.hpp"
#include "zetaforms/quadrature.hpp"

using namespace zf;

namespace {

Certified exact_sn(const Params& p, long bits) {
  CoefficientTable t = build_coefficients(p);
  return s_n_via_zeta(rho(p, t), zeta_basis(p.k, p.q, bits), 64);
}

}  // namespace

TEST(Gauss, IntegratesPolynomialsExactly) {
  prec_t w = 200;
  for (int m : {4, 10, 20}) {
    const GaussRule& g = gauss_legendre(m, w);
    ASSERT_EQ(g.nodes.size(), static_cast<std::size_t>(m));
    for (long e = 0; e < 2 * m; e += 2) {
      BigFloat s(w);
      for (int i = 0; i < m; ++i) s += g.weights[i] * pow(g.nodes[i], e);
      EXPECT_LT(abs(s - BigFloat(mpq_class(2, e + 1), w)), pow2(-w + 10, 64)) << m << " " << e;
    }
  }
}

TEST(Contour, AbscissaIsHalfInteger) {
  Params p = make_params(2, 3, 5, 6);
  ContourSpec spec = default_contour(p);
  mpq_class M = contour_abscissa(p, spec.mu);
  EXPECT_EQ(M, mpq_class(29, 2));  // floor(6 * 2.3846) + 1/2
}

TEST(Contour, MatchesExactRoute) {
  Params p = make_params(2, 3, 5, 6);
  Certified ex = exact_sn(p, 512);
  QuadratureResult q = s_n_contour(p, default_contour(p), 512);
  EXPECT_LE(abs(q.value.re - ex.value), q.error + ex.error);
  EXPECT_LE(abs(q.value.im), q.error);
  EXPECT_LT(abs(q.value.re / ex.value - 1L), BigFloat(1e-10, 64));
}

TEST(Contour, IndependentOfAbscissa) {
  Params p = make_params(2, 3, 5, 6);
  ContourSpec a = default_contour(p), b = a;
  b.mu = mpq_class(3, 2);
  ASSERT_NE(contour_abscissa(p, a.mu), contour_abscissa(p, b.mu));
  QuadratureResult qa = s_n_contour(p, a, 384), qb = s_n_contour(p, b, 384);
  EXPECT_LE(abs(qa.value.re - qb.value.re), qa.error + qb.error);
}

TEST(Contour, PanelHalvingOrder) {
  Params p = make_params(2, 3, 5, 6);
  ContourSpec spec = default_contour(p);
  spec.nodes = 4;
  spec.panel = 2.0;
  spec.height = 12;
  spec.min_refinements = 3;
  spec.max_refinements = 3;
  spec.target_bits = 60;
  QuadratureResult q = s_n_contour(p, spec, 512);
  ASSERT_GE(q.deltas.size(), 3u);
  for (std::size_t i = 1; i < q.deltas.size(); ++i)
    EXPECT_GE(q.deltas[i - 1], 4L * q.deltas[i]) << i;
}

TEST(Contour, TruncationBoundIsSound) {
  Params p = make_params(2, 3, 5, 6);
  ContourSpec a = default_contour(p);
  a.height = 6;
  ContourSpec b = a;
  b.height = 12;
  QuadratureResult qa = s_n_contour(p, a, 256), qb = s_n_contour(p, b, 256);
  EXPECT_LE(abs(qa.value.re - qb.value.re), qa.truncation + qa.error + qb.error);
  EXPECT_LT(qb.truncation, qa.truncation);
}

TEST(JIntegral, ConjugateSymmetry) {
  Params p = make_params(3, 3, 7, 6);
  ContourSpec spec = default_contour(p);
  QuadratureResult a = j_integral(p, 1, spec, 256), b = j_integral(p, -1, spec, 256);
  EXPECT_LE(abs(a.value - conj(b.value)), a.error + b.error);
}

TEST(JIntegral, DecompositionRecoversSn) {
  for (Params p : {make_params(2, 3, 5, 6), make_params(3, 3, 7, 6)}) {
    Certified ex = exact_sn(p, 512);
    Decomposition d = decomposition_check(p, ex, default_contour(p), 384);
    EXPECT_TRUE(d.ok()) << d.residual.to_string(5) << " > " << d.error.to_string(5);
  }
}

TEST(JIntegral, GnApproachesG) {
  auto dev = gn_convergence(make_shape(2, 3, 5), {6, 12, 24}, 192);
  ASSERT_EQ(dev.size(), 3u);
  for (std::size_t i = 1; i < dev.size(); ++i)
    EXPECT_LE(dev[i].max_rel, dev[i - 1].max_rel * BigFloat(0.6, 64));
  for (const auto& d : dev) EXPECT_LE(d.max_rel * d.n, 1L);
}

TEST(Fit, SmallFamily) {
  FitReport r = asymptotic_fit(make_shape(2, 3, 5), {6, 12, 18}, 2048);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_TRUE(r.decreasing());
  EXPECT_TRUE(r.gaussian_ok());
  for (const auto& row : r.rows) EXPECT_FALSE(row.excluded);

  FitReport e = asymptotic_fit(make_shape(2, 3, 5), {}, 256);
  EXPECT_TRUE(e.rows.empty());
  EXPECT_THROW(asymptotic_fit(make_shape(2, 3, 5), {12, 6}, 2048), InvalidInput);
}
