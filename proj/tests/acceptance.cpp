// Acceptance runner: one PASS/FAIL line per criterion.
//
//   zetaforms_acceptance [--cli PATH] [ID...]
//
// Exit status is 0 only if every selected criterion passes.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "oracles.hpp"
#include "zetaforms/bound.hpp"
#include "zetaforms/cotk.hpp"
#include "zetaforms/errors.hpp"
#include "zetaforms/hurwitz.hpp"
#include "zetaforms/linform.hpp"
#include "zetaforms/quadrature.hpp"
#include "zetaforms/saddle.hpp"

using namespace zf;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string sci(const BigFloat& x, int digits = 3) { return x.to_string(digits); }

// Significant digits on which a and b agree.
double agreement_digits(const BigFloat& a, const BigFloat& b) {
  BigFloat rel = abs(a - b) / abs(a);
  if (rel.is_zero()) return 1e9;
  return -std::log10(rel.to_double());
}

// ---- 1 ----
void integrality(Outcome& o) {
  const long tuples[][4] = {{2, 3, 5, 6}, {2, 3, 5, 12}, {3, 3, 7, 6}, {2, 4, 5, 24}, {2, 5, 5, 120}};
  for (const auto& t : tuples) {
    Params p = make_params(t[0], t[1], t[2], t[3]);
    std::string tag = "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                      std::to_string(t[2]) + "," + std::to_string(t[3]) + ")";
    CoefficientTable table = build_coefficients(p);
    std::vector<std::string> failed = check_table(table);
    o.require(table.integral(), tag + " integral");
    o.require(failed.empty(), tag + " table invariants");
    const long N = p.rqn();
    bool sym = true;
    const bool flip = (p.k - 1) % 2 != 0;
    for (long j = 0; j <= N; ++j) sym = sym && table.c[j] == (flip ? -table.c[N - j] : table.c[N - j]);
    o.require(sym, tag + " symmetry");
    // Independent straight products at a few indices.
    for (long j : {0L, N / 3, N / 2 + 1}) {
      mpq_class ref = oracle::coefficient(p, j);
      o.require(ref.get_den() == 1 && table.coefficient(j) == ref, tag + " j=" + std::to_string(j));
    }
    RhoDivisibility d = check_divisibility(rho(p, table));
    o.require(d.q_rho1_integral, tag + " q rho_1");
    o.require(d.q_rho_a_integral, tag + " q rho_a");
    o.require(d.d_rho0_integral, tag + " d^k rho_0");
    o.detail << " " << tag << ":" << table.c.size();
  }
}

// ---- 2 ----
void triple_oracle(Outcome& o) {
  const long bits = 4096;
  const long tuples[][4] = {{2, 3, 5, 6}, {2, 3, 5, 12}, {2, 4, 5, 24}};
  for (const auto& t : tuples) {
    Params p = make_params(t[0], t[1], t[2], t[3]);
    std::string tag = "n=" + std::to_string(p.n) + ",q=" + std::to_string(p.q);
    CoefficientTable table = build_coefficients(p);
    Certified zr = s_n_via_zeta(rho(p, table), zeta_basis(p.k, p.q, bits), 64);

    long terms = terms_for_tail(p, zr.value.exponent2() - 60);
    SeriesPartial sp = s_n_truncated(p, table, terms);
    BigFloat series(sp.partial, bits);

    QuadratureResult qr = s_n_contour(p, default_contour(p), bits);
    const BigFloat& contour = qr.value.re;

    o.require(abs(series - zr.value) <= sp.tail + zr.error, tag + " series/zeta bound");
    o.require(abs(contour - zr.value) <= qr.error + zr.error, tag + " contour/zeta bound");
    o.require(abs(contour - series) <= qr.error + sp.tail, tag + " contour/series bound");
    o.require(abs(qr.value.im) <= qr.error, tag + " contour imaginary part");
    double d1 = agreement_digits(zr.value, series), d2 = agreement_digits(zr.value, contour),
           d3 = agreement_digits(series, contour);
    double dmin = std::min({d1, d2, d3});
    o.require(dmin >= 10, tag + " digits");
    o.detail << " " << tag << ": S=" << sci(zr.value, 12) << " digits>=" << static_cast<int>(dmin);
  }
}

// ---- 3 ----
void cotk_suite(Outcome& o) {
  for (long k = 2; k <= 5; ++k) {
    std::map<long, mpq_class> got;
    for (const auto& [l, v] : cotk_expansion(k).c)
      if (v != 0) got[l] = v;
    o.require(got == oracle::cos_coefficients(oracle::vk_oracle(k)),
              "c_l table k=" + std::to_string(k));
  }

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> U(-5, 5), V(-2, 2);
  prec_t w = 128;
  BigFloat pi = const_pi(w);
  long violations = 0;
  for (long k = 2; k <= 5; ++k) {
    for (int i = 0; i < 100; ++i) {
      BigComplex z(BigFloat(U(rng), w), BigFloat(V(rng), w));
      BigFloat dx = z.re - floor(z.re + BigFloat(0.5, w));
      BigFloat dist = sqrt(dx * dx + z.im * z.im);
      if (!(abs(cotk_eval(k, z, w)) * pow(pi, k) <= 2L / pow(dist, k) + 4L)) ++violations;
    }
  }
  o.require(violations == 0, std::to_string(violations) + " bound violations");

  // Pole normalization at distance 1e-3, four directions, poles m = -2, 0, 3.
  const double eps = 1e-3;
  for (long k = 2; k <= 5; ++k) {
    BigFloat worst(64);
    for (long m : {-2L, 0L, 3L}) {
      for (auto [dx, dy] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
        BigComplex d(BigFloat(dx * eps, w), BigFloat(dy * eps, w));
        BigComplex v = cotk_eval(k, d + m, w) * pow(d * pi, k);
        worst = max(worst, abs(v - 1L).with_prec(64));
      }
    }
    o.detail << " pole_dev(k=" << k << ")=" << sci(worst);
    o.require(worst <= 1e-6, "pole normalization k=" + std::to_string(k));
  }
}

// ---- 4 ----
void distribution(Outcome& o) {
  const long bits = 256;
  std::mt19937_64 rng(424242);
  int done = 0;
  BigFloat worst(64);
  while (done < 20) {
    long k = 2 + static_cast<long>(rng() % 4);
    long qp = 2 + static_cast<long>(rng() % 14);
    long p = std::vector<long>{2, 3, 5, 7, 11, 13}[rng() % 6];
    if (p * qp > 30) continue;
    long a = 1 + static_cast<long>(rng() % (qp - 1));
    if (std::gcd(a, qp) != 1) continue;
    DistributionCheck d = verify_distribution(k, qp, p, a, bits);
    o.require(d.ok(), "k=" + std::to_string(k) + " q'=" + std::to_string(qp) + " p=" + std::to_string(p));
    worst = max(worst, d.residual / d.threshold);
    ++done;
  }
  o.detail << " worst residual/threshold=" << sci(worst);
  for (long k = 2; k <= 5; ++k) {
    long lifted = bits + k + 4;
    ZetaValue h = hurwitz_zeta(k, 1, 2, lifted), z = hurwitz_zeta(k, 1, 1, lifted);
    BigFloat res = abs(h.value - z.value * ((1L << k) - 1));
    o.require(res < BigFloat(4L, 64) * pow2(-bits, 64), "zeta(k,1/2) k=" + std::to_string(k));
  }
}

// ---- 5 ----
void saddle_suite(Outcome& o) {
  const prec_t w = 512;
  const long shapes[][3] = {{2, 3, 5},  {2, 4, 5},  {3, 5, 7},  {2, 10, 6}, {4, 7, 9},
                            {3, 20, 8}, {5, 11, 11}, {2, 30, 7}, {2, 57, 5}};
  for (const auto& t : shapes) {
    Shape s = make_shape(t[0], t[1], t[2]);
    std::string tag = "(" + std::to_string(s.k) + "," + std::to_string(s.q) + "," + std::to_string(s.r) + ")";
    CensusReport c = p_roots_census(s, w);
    o.require(c.degree == s.q + 2 * s.k - 1, tag + " degree");
    o.require(c.on_line == s.q - 1 && c.right == s.k && c.left == s.k, tag + " census");
    o.require(c.min_distance > 1e-6, tag + " simple roots");

    TauResult tau = find_tau_auto(s, s.k - 2, w);
    BigComplex v = fprime_eval(s, PhasePoint{tau.tau, tau.q_minus_tau});
    v.im -= const_pi(w) * (s.k - 2);
    o.require(abs(v) < pow2(-200, 64), tag + " tau residual");
    BigFloat near = infinity(1, 64);
    for (const auto& z : c.roots) near = min(near, abs(z - tau.tau).with_prec(64));
    o.require(near < pow2(-w / 4, 64), tag + " tau among roots");

    std::optional<BigFloat> prev;
    for (long j = 0; j < 9; ++j) {
      mpq_class lam(j * s.k, 9);
      lam.canonicalize();
      TauResult tl = find_tau_auto(s, lam, w);
      BigFloat re = f0_eval(s, PhasePoint{tl.tau, tl.q_minus_tau}).re;
      if (prev) o.require(re > *prev, tag + " Re f0 at j=" + std::to_string(j));
      prev = re;
    }
    o.detail << " " << tag << ":" << c.on_line << "/" << c.right << "/" << c.left;
  }
}

// ---- 6 ----
void h_structure(Outcome& o) {
  const prec_t w = 128;
  const BigFloat pi = const_pi(w), tol = pi * BigFloat(1e-3, w);
  struct Case {
    long a, b;
    mpq_class s;
  };
  const Case cases[] = {{3, 2, mpq_class(6, 5)}, {5, 2, mpq_class(4, 5)}, {4, 3, mpq_class(1, 2)}};
  for (const auto& cs : cases) {
    HParams h{cs.a, cs.b, cs.s};
    std::string tag = "(" + std::to_string(cs.a) + "," + std::to_string(cs.b) + "," + cs.s.get_str() + ")";
    EtaRoots e = eta_roots(h, w);
    BigFloat ops(h.s + 1, w);
    o.require(e.eta0 > 1L && e.eta0 < ops, tag + " eta0 range");
    o.require(e.eta1 > ops, tag + " eta1 range");
    o.require(e.dHdx_eta0.sign() > 0 && e.dHdx_eta1.sign() < 0, tag + " derivative signs");

    auto pts = y0_scan(h, 200, w);
    int changes = 0;
    bool first_up = pts.size() > 1 && pts[1].y > pts[0].y;
    for (std::size_t i = 2; i < pts.size(); ++i)
      if ((pts[i].y > pts[i - 1].y) != (pts[i - 1].y > pts[i - 2].y)) ++changes;
    o.require(first_up && changes == 1, tag + " Y0 unimodal");

    bool up = true;
    std::optional<BigFloat> prev;
    for (const auto& pt : pts) {
      BigFloat im = h_eval(h, BigComplex(pt.x, pt.y), w).im;
      if (prev && !(im > *prev)) up = false;
      prev = im;
    }
    o.require(up, tag + " Im h on curve increasing");
    BigFloat span = e.eta1 - e.eta0, edge = span * BigFloat(1e-9, w);
    BigFloat x_lo = e.eta0 + edge, x_hi = e.eta1 - edge;
    BigFloat im_lo = h_eval(h, BigComplex(x_lo, y0_curve(h, x_lo, w)), w).im;
    BigFloat im_hi = h_eval(h, BigComplex(x_hi, y0_curve(h, x_hi, w)), w).im;
    o.require(abs(im_lo) < tol, tag + " curve limit 0");
    o.require(abs(im_hi - pi * cs.b) < tol, tag + " curve limit b pi");

    std::vector<BigFloat> grid;
    for (int i = -24; i <= 24; ++i) grid.push_back(pow2(i, w));
    auto axis = imag_axis_scan(h, grid, w);
    bool down = true;
    for (std::size_t i = 1; i < axis.size(); ++i) down = down && axis[i].im_h < axis[i - 1].im_h;
    o.require(down, tag + " Im h(iy) decreasing");
    auto ends = imag_axis_scan(h, {BigFloat(1e-6, w), BigFloat(1e6, w)}, w);
    o.require(abs(ends[0].im_h - pi * (cs.a + cs.b)) < tol, tag + " axis limit (a+b) pi");
    o.require(abs(ends[1].im_h - pi * cs.b) < tol, tag + " axis limit b pi");
    o.detail << " " << tag << ": eta=" << sci(e.eta0, 6) << "," << sci(e.eta1, 6);
  }
}

// ---- 7 ----
void fit(Outcome& o) {
  std::vector<long> ns;
  for (long n = 6; n <= 48; n += 6) ns.push_back(n);
  FitReport r = asymptotic_fit(make_shape(2, 3, 5), ns, 8192);
  o.require(r.rows.size() == ns.size(), "row count");
  o.require(r.decreasing(), "residual magnitudes decreasing");
  BigFloat last = abs(r.rows.back().residual);
  o.require(last < abs(r.alpha) / 10L, "final residual below 0.1 |alpha|");
  o.detail << " alpha=" << sci(r.alpha, 8) << " residuals:";
  for (const auto& row : r.rows) o.detail << " " << sci(row.residual);
  o.detail << " gaussian=" << (r.gaussian_ok() ? "ok" : "off");
}

// ---- 8 ----
void trends(Outcome& o) {
  const std::vector<long> qs = {1000, 10000, 100000, 1000000};
  const prec_t w = 192;
  auto tau = tau_asymptotic_scan(2, qs, w);
  BigFloat half(0.5, 64);
  auto dtau = [&](std::size_t i) { return abs(tau[i].ratio + half); };
  o.require(dtau(1) <= 0.35, "tau ratio at 1e4");
  for (std::size_t i = 2; i < tau.size(); ++i)
    o.require(dtau(i) < dtau(i - 1), "tau ratio closer at q=" + std::to_string(qs[i]));

  auto rows = trend_scan(2, qs, w);
  auto d1 = [](const BigFloat& x) { return abs(x - 1L); };
  o.require(d1(rows.back().alpha_ratio) < d1(rows.front().alpha_ratio), "alpha ratio");
  o.require(d1(rows.back().beta_ratio) < d1(rows.front().beta_ratio), "beta ratio");
  o.require(d1(rows.back().d_ratio) < d1(rows.front().d_ratio), "d ratio");
  o.detail << " tau:";
  for (const auto& t : tau) o.detail << " " << sci(t.ratio, 4);
  o.detail << " d:";
  for (const auto& r : rows) o.detail << " " << sci(r.d_ratio, 4);
}

// ---- 9 ----
void determinism(Outcome& o, const std::string& cli) {
  if (cli.empty()) {
    o.require(false, "no --cli path given");
    return;
  }
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("zetaforms_det_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<nlohmann::ordered_json> bodies;
  for (int run = 0; run < 2; ++run) {
    fs::path out = dir / ("run" + std::to_string(run) + ".json");
    std::string cmd = "\"" + cli + "\" verify-all --k 2 --q 3 --r 5 --n 6 --precision-bits 4096 -o \"" +
                      out.string() + "\"";
    int rc = std::system(cmd.c_str());
    o.require(rc == 0, "verify-all exit status run " + std::to_string(run));
    std::ifstream in(out);
    if (!in) {
      o.require(false, "report missing");
      return;
    }
    bodies.push_back(nlohmann::ordered_json::parse(in)["body"]);
  }
  fs::remove_all(dir);
  std::string a = bodies[0].dump(), b = bodies[1].dump();
  o.require(a == b, "bodies differ");
  o.detail << " body bytes=" << a.size();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string cli;
  std::vector<int> ids;
  app.add_option("--cli", cli, "path of the zetaforms executable");
  app.add_option("ids", ids, "criteria to run (default all)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) ids = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const std::map<int, std::pair<std::string, std::function<void(Outcome&)>>> table = {
      {1, {"integrality", integrality}},
      {2, {"triple-oracle S_n", triple_oracle}},
      {3, {"cot_k suite", cotk_suite}},
      {4, {"distribution relations", distribution}},
      {5, {"saddle/census suite", saddle_suite}},
      {6, {"h-plane structure", h_structure}},
      {7, {"asymptotics of S_n", fit}},
      {8, {"large-q trends", trends}},
      {9, {"determinism", [&](Outcome& o) { determinism(o, cli); }}},
  };

  bool all = true;
  for (int id : ids) {
    const auto& [name, fn] = table.at(id);
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d (%s): %s (%.1fs)%s\n", id, name.c_str(), o.pass ? "PASS" : "FAIL", secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
