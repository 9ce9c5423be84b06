#include "zetaforms/verify.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "zetaforms/bound.hpp"
#include "zetaforms/cotk.hpp"
#include "zetaforms/errors.hpp"
#include "zetaforms/hurwitz.hpp"
#include "zetaforms/linform.hpp"
#include "zetaforms/quadrature.hpp"
#include "zetaforms/saddle.hpp"

namespace zf {

bool VerifyReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

bool VerifyReport::any_numeric_error() const {
  for (const auto& c : checks)
    if (c.numeric_error) return true;
  return false;
}

Json VerifyReport::body() const {
  Json j;
  j["params"] = {{"k", params.k},
                 {"q", params.q},
                 {"r", params.r},
                 {"n", params.n},
                 {"mode", params.mode == Divisibility::strict ? "strict" : "relaxed"}};
  j["precision_bits"] = bits;
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json o;
    o["name"] = c.name;
    o["passed"] = c.passed;
    if (c.numeric_error) o["numeric_error"] = true;
    o["detail"] = c.detail;
    arr.push_back(std::move(o));
  }
  j["checks"] = std::move(arr);
  j["all_passed"] = all_passed();
  return j;
}

namespace {

struct Runner {
  VerifyReport& rep;

  void run(const std::string& name, const std::function<bool(Json&)>& fn) {
    Json detail = Json::object();
    try {
      bool ok = fn(detail);
      rep.checks.push_back({name, ok, std::move(detail)});
    } catch (const NumericFailure& e) {
      detail["error"] = e.what();
      rep.checks.push_back({name, false, std::move(detail), true});
    } catch (const VerificationFailure& e) {
      detail["error"] = e.what();
      rep.checks.push_back({name, false, std::move(detail)});
    }
  }
};

bool within(const BigFloat& diff, const BigFloat& bound) { return abs(diff) <= bound; }

}  // namespace

VerifyReport verify_all(const Params& p, long bits, unsigned jobs) {
  VerifyReport rep{p, bits, {}};
  Runner R{rep};
  const Shape s = p.shape();
  const prec_t sp = std::min<long>(bits, 512);

  std::optional<CoefficientTable> table;
  R.run("linform.coefficients", [&](Json& d) {
    table = build_coefficients(p, jobs);
    d["count"] = table->c.size();
    d["integral"] = table->integral();
    return true;
  });
  if (!table) return rep;

  std::vector<std::string> failed = check_table(*table);
  for (const char* inv : {"integrality", "symmetry", "factorization", "center"}) {
    bool ok = std::find(failed.begin(), failed.end(), inv) == failed.end();
    rep.checks.push_back({std::string("linform.") + inv, ok, Json::object()});
  }

  LinearForm form = rho(p, *table);
  RhoDivisibility dv = check_divisibility(form);
  rep.checks.push_back({"linform.q_rho1_integral", dv.q_rho1_integral, Json::object()});
  rep.checks.push_back({"linform.q_rho_a_integral", dv.q_rho_a_integral, Json::object()});
  rep.checks.push_back({"linform.d_rho0_integral", dv.d_rho0_integral, Json::object()});

  std::optional<Certified> sn;
  R.run("s_n.zeta_route", [&](Json& d) {
    sn = s_n_via_zeta(form, zeta_basis(p.k, p.q, bits), 64);
    d["s_n"] = json_certified(sn->value, sn->error);
    return true;
  });

  if (sn) {
    R.run("s_n.series_agreement", [&](Json& d) {
      long target = sn->value.is_zero() ? -64 : sn->value.exponent2() - 48;
      long terms = terms_for_tail(p, target);
      SeriesPartial sp_ = s_n_truncated(p, *table, terms);
      BigFloat partial(sp_.partial, bits);
      BigFloat diff = partial - sn->value;
      d["terms"] = terms;
      d["tail_bound_exp"] = err2exp(sp_.tail);
      d["difference"] = json_number(abs(diff), 6);
      return within(diff, sp_.tail + sn->error);
    });

    R.run("s_n.contour_agreement", [&](Json& d) {
      ContourSpec spec = default_contour(p);
      QuadratureResult q = s_n_contour(p, spec, bits, jobs);
      BigFloat diff = q.value.re - sn->value;
      d["abscissa"] = json_rational(q.abscissa);
      d["value"] = json_certified(q.value.re, q.error, 30);
      d["imag"] = json_number(q.value.im, 6);
      d["difference"] = json_number(abs(diff), 6);
      return within(diff, q.error + sn->error) && within(q.value.im, q.error);
    });

    R.run("quadrature.decomposition", [&](Json& d) {
      Decomposition dc = decomposition_check(p, *sn, default_contour(p), bits, jobs);
      d["s_tilde"] = json_number(dc.s_tilde, 20);
      d["sum"] = json_number(dc.sum, 20);
      d["residual"] = json_number(dc.residual, 6);
      d["error"] = json_number(dc.error, 6);
      return dc.ok();
    });
  }

  R.run("hurwitz.distribution", [&](Json& d) {
    bool ok = true;
    Json rows = Json::array();
    for (long pr : p.primes) {
      long qp = p.q / pr;
      if (qp < 2) continue;
      DistributionCheck dc = verify_distribution(p.k, qp, pr, 1, 256);
      rows.push_back({{"p", pr}, {"q_prime", qp}, {"residual", json_number(dc.residual, 6)}});
      ok = ok && dc.ok();
    }
    ZetaValue half = hurwitz_zeta(p.k, 1, 2, 260), whole = hurwitz_zeta(p.k, 1, 1, 260);
    BigFloat res = abs(half.value - whole.value * ((1L << p.k) - 1));
    rows.push_back({{"zeta_half_residual", json_number(res, 6)}});
    d["instances"] = std::move(rows);
    return ok && res < BigFloat(3L, 64) * pow2(-256, 64);
  });

  R.run("cotk.expansion", [&](Json& d) {
    const CotkExpansion& ce = cotk_expansion(p.k);
    Json c = Json::object();
    for (const auto& [l, v] : ce.c) c[std::to_string(l)] = json_rational(v);
    d["c"] = std::move(c);
    bool ok = ce.c.count(p.k - 2) && ce.c.at(p.k - 2) != 0;
    BigComplex z(BigFloat(0.3, sp), BigFloat(0.7, sp));
    CotkSeries ser = cotk_series(p.k, z, 2000, sp);
    BigComplex closed = cotk_eval(p.k, z, sp);
    BigFloat gap = abs(closed - ser.value);
    d["series_gap"] = json_number(gap, 6);
    return ok && gap <= ser.tail + pow2(-(sp - 16), 64);
  });

  std::optional<SaddleData> sd;
  R.run("saddle.tau_residual", [&](Json& d) {
    sd = saddle_constants(s, sp);
    d["tau"] = json_complex(sd->tau, 25);
    d["alpha"] = json_number(sd->alpha, 25);
    d["omega"] = json_number(sd->omega, 25);
    d["phi"] = json_number(sd->phi, 25);
    d["residual_exp"] = err2exp(sd->residual);
    return sd->residual < pow2(-sp / 2, 64);
  });
  if (sd && p.k == 2) {
    rep.checks.push_back({"saddle.k2_omega_phi_zero",
                          sd->omega.is_zero() && sd->phi.is_zero() && sd->tau.im.is_zero(),
                          Json::object()});
  }
  // For lambda = 0 the mirror -r - mu0 sits on the cut (a bank point).
  if (sd && p.k > 2) {
    R.run("saddle.mirror_root", [&](Json& d) {
      BigComplex m(-(sd->tau.re + s.r), sd->tau.im);
      BigComplex v = fprime_eval(s, m);
      v.im -= BigFloat(sd->lambda, sp) * const_pi(sp);
      d["residual"] = json_number(abs(v), 6);
      return abs(v) < pow2(-sp / 2 + 8, 64);
    });
  }

  if (p.q + 2 * p.k - 1 <= 200) {
    R.run("saddle.census", [&](Json& d) {
      CensusReport c = p_roots_census(s, sp);
      d["degree"] = c.degree;
      d["on_line"] = c.on_line;
      d["right"] = c.right;
      d["left"] = c.left;
      d["min_distance"] = json_number(c.min_distance, 6);
      bool ok = c.consistent() && c.on_line == p.q - 1 && c.right == p.k && c.left == p.k;
      if (sd) {
        BigFloat best = infinity(1, 64);
        for (const auto& z : c.roots) best = min(best, abs(z - sd->tau).with_prec(64));
        d["tau_distance"] = json_number(best, 6);
        ok = ok && best < pow2(-sp / 4, 64);
      }
      return ok;
    });
  }

  R.run("saddle.re_f0_increasing", [&](Json& d) {
    Json vals = Json::array();
    std::optional<BigFloat> prev;
    bool ok = true;
    for (long j = 0; j < 9; ++j) {
      mpq_class lam(j * p.k, 9);
      lam.canonicalize();
      TauResult t = find_tau_auto(s, lam, sp);
      BigFloat re = f0_eval(s, PhasePoint{t.tau, t.q_minus_tau}).re;
      vals.push_back(json_number(re, 15));
      if (prev && !(re > *prev)) ok = false;
      prev = re;
    }
    d["re_f0"] = std::move(vals);
    return ok;
  });

  HParams h = h_params(make_context(s));
  R.run("h.eta_roots", [&](Json& d) {
    EtaRoots e = eta_roots(h, sp);
    d["eta0"] = json_number(e.eta0, 25);
    d["eta1"] = json_number(e.eta1, 25);
    BigFloat ops(h.s + 1, sp);
    return e.eta0 > 1L && e.eta0 < ops && e.eta1 > ops && e.dHdx_eta0.sign() > 0 &&
           e.dHdx_eta1.sign() < 0;
  });
  R.run("h.y0_unimodal_and_curve_monotone", [&](Json& d) {
    const prec_t hp = std::min<prec_t>(sp, 128);
    auto pts = y0_scan(h, 50, hp);
    int turns = 0;
    bool im_up = true;
    std::optional<BigFloat> prev_im;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i >= 2) {
        bool up1 = pts[i - 1].y > pts[i - 2].y, up2 = pts[i].y > pts[i - 1].y;
        if (up1 != up2) ++turns;
      }
      BigFloat im = h_eval(h, BigComplex(pts[i].x, pts[i].y), hp).im;
      if (prev_im && !(im > *prev_im)) im_up = false;
      prev_im = im;
    }
    d["direction_changes"] = turns;
    d["im_h_increasing"] = im_up;
    return turns == 1 && im_up;
  });
  R.run("h.imag_axis_decreasing", [&](Json& d) {
    std::vector<BigFloat> grid;
    for (int i = -12; i <= 12; ++i) grid.push_back(pow2(i, 128));
    auto samples = imag_axis_scan(h, grid, 128);
    bool ok = true;
    for (std::size_t i = 1; i < samples.size(); ++i) ok = ok && samples[i].im_h < samples[i - 1].im_h;
    d["points"] = samples.size();
    return ok;
  });

  R.run("bound.identity", [&](Json& d) {
    BoundReport b = dimension_lower(p.k, p.q, p.r, sp);
    BigFloat direct = 1L + (b.alpha - p.k * p.r * p.q) / b.beta;
    d["d_lower"] = json_number(b.d_lower, 20);
    d["alpha_hat_positive"] = b.alpha_hat_positive;
    d["omega_in_pi_z"] = b.omega_in_pi_z;
    d["phi_in_half_pi_z"] = b.phi_in_half_pi_z;
    return abs(direct - b.d_lower) < pow2(-sp / 2, 64);
  });
  return rep;
}

}  // namespace zf
