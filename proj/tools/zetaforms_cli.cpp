#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zetaforms/bound.hpp"
#include "zetaforms/cotk.hpp"
#include "zetaforms/errors.hpp"
#include "zetaforms/hurwitz.hpp"
#include "zetaforms/linform.hpp"
#include "zetaforms/quadrature.hpp"
#include "zetaforms/report.hpp"
#include "zetaforms/saddle.hpp"
#include "zetaforms/verify.hpp"

using namespace zf;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Options {
  long k = 2, q = 3, r = 5;
  long n = 0;
  std::string mode = "strict";
  long bits = default_precision_bits();
  std::string output;
  std::string format = "json";
  unsigned jobs = 1;

  long a = 0;
  std::string z;
  std::string lambda;
  std::string strategy = "auto";
  long curve_points = 0;
  std::string mu;
  bool decompose = false;
  std::string n_list;
  std::string q_grid;
};

struct Outcome {
  Json body;
  std::optional<Table> table;
  bool passed = true;
  bool numeric = false;  // some check could not be evaluated
};

std::vector<long> parse_list(const std::string& s, const char* what) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput(std::string(what) + ": cannot parse '" + item + "'");
    }
    if (used != item.size() || v != std::floor(v) || v < 1 || v > 9e15)
      throw InvalidInput(std::string(what) + ": '" + item + "' is not a positive integer");
    out.push_back(static_cast<long>(v));
  }
  return out;
}

mpq_class parse_rational(const std::string& s, const char* what) {
  mpq_class v;
  std::string t = s;
  if (auto dot = t.find('.'); dot != std::string::npos) {
    std::string frac = t.substr(dot + 1);
    t = t.substr(0, dot) + frac + "/1" + std::string(frac.size(), '0');
  }
  if (v.set_str(t, 10) != 0) throw InvalidInput(std::string(what) + ": cannot parse '" + s + "'");
  v.canonicalize();
  return v;
}

Divisibility mode_of(const Options& o) {
  return o.mode == "relaxed" ? Divisibility::relaxed : Divisibility::strict;
}

Params need_params(const Options& o, const char* cmd) {
  if (o.n <= 0) throw InvalidInput(std::string(cmd) + " requires --n");
  return make_params(o.k, o.q, o.r, o.n, mode_of(o));
}

Json params_json(const Options& o, bool with_n) {
  Json j = {{"k", o.k}, {"q", o.q}, {"r", o.r}};
  if (with_n) {
    j["n"] = o.n;
    j["mode"] = o.mode;
  }
  return j;
}

Outcome cmd_coeffs(const Options& o) {
  Params p = need_params(o, "coeffs");
  CoefficientTable t = build_coefficients(p, o.jobs);
  auto failed = check_table(t);
  Outcome out;
  Table tab{{"j", "C"}, {}};
  for (std::size_t j = 0; j < t.c.size(); ++j)
    tab.rows.push_back({std::to_string(j), t.coefficient(static_cast<long>(j)).get_str()});
  out.body["params"] = params_json(o, true);
  out.body["denominator"] = t.denominator.get_str();
  out.body["failed_invariants"] = failed;
  out.body["findings"] = t.findings;
  out.body["coefficients"] = table_json(tab);
  out.table = std::move(tab);
  out.passed = failed.empty();
  return out;
}

Outcome cmd_linform(const Options& o) {
  Params p = need_params(o, "linform");
  CoefficientTable t = build_coefficients(p, o.jobs);
  LinearForm f = rho(p, t);
  RhoDivisibility dv = check_divisibility(f);
  Outcome out;
  out.body["params"] = params_json(o, true);
  out.body["rho0"] = json_rational(f.rho0);
  out.body["rho1"] = json_rational(f.rho1);
  Table tab{{"coefficient", "value"}, {{"rho0", f.rho0.get_str()}, {"rho1", f.rho1.get_str()}}};
  Json ra = Json::object();
  for (const auto& [a, v] : f.rho_a) {
    ra[std::to_string(a)] = json_rational(v);
    tab.rows.push_back({"rho_" + std::to_string(a), v.get_str()});
  }
  out.body["rho_a"] = std::move(ra);
  out.body["divisibility"] = {{"q_rho1_integral", dv.q_rho1_integral},
                              {"q_rho_a_integral", dv.q_rho_a_integral},
                              {"d_rho0_integral", dv.d_rho0_integral}};
  out.table = std::move(tab);
  out.passed = p.mode == Divisibility::relaxed || dv.all();
  return out;
}

Outcome cmd_zeta(const Options& o) {
  if (o.a <= 0) throw InvalidInput("zeta requires --a");
  ZetaValue v = hurwitz_zeta(o.k, o.a, o.q, o.bits);
  Outcome out;
  out.body["k"] = o.k;
  out.body["a"] = o.a;
  out.body["q"] = o.q;
  out.body["zeta"] = json_certified(v.value, v.error_bound, 1000);
  if (2 * o.a != o.q && o.a < o.q) {
    ZetaPair zp = zeta_pair(o.k, o.a, o.q, o.bits);
    out.body["zeta_plus"] = json_certified(zp.plus, zp.error_bound, 1000);
    out.body["zeta_minus"] = json_certified(zp.minus, zp.error_bound, 1000);
  }
  return out;
}

Outcome cmd_cotk(const Options& o) {
  const CotkExpansion& ce = cotk_expansion(o.k);
  Outcome out;
  out.body["k"] = o.k;
  Json vk = Json::array();
  for (const auto& c : ce.vk) vk.push_back(json_rational(c));
  out.body["vk"] = std::move(vk);
  Table tab{{"l", "c_l"}, {}};
  for (const auto& [l, v] : ce.c) tab.rows.push_back({std::to_string(l), v.get_str()});
  out.body["c"] = table_json(tab);
  if (!o.z.empty()) {
    auto comma = o.z.find(',');
    std::string re = o.z.substr(0, comma), im = comma == std::string::npos ? "0" : o.z.substr(comma + 1);
    BigComplex z(BigFloat(parse_rational(re, "--z"), o.bits), BigFloat(parse_rational(im, "--z"), o.bits));
    out.body["value"] = json_complex(cotk_eval(o.k, z, o.bits), 40);
  }
  out.table = std::move(tab);
  return out;
}

TauStrategy strategy_of(const std::string& s) {
  if (s == "newton") return TauStrategy::newton;
  if (s == "census") return TauStrategy::census;
  if (s == "curve") return TauStrategy::curve;
  throw InvalidInput("unknown strategy '" + s + "'");
}

Outcome cmd_saddle(const Options& o) {
  Shape s = make_shape(o.k, o.q, o.r);
  Outcome out;
  out.body["params"] = params_json(o, false);
  if (!o.lambda.empty()) {
    mpq_class lam = parse_rational(o.lambda, "--lambda");
    TauResult t = o.strategy == "auto" ? find_tau_auto(s, lam, o.bits)
                                       : find_tau(s, lam, o.bits, strategy_of(o.strategy));
    out.body["lambda"] = json_rational(lam);
    out.body["tau"] = json_complex(t.tau, 40);
    out.body["strategy"] = to_string(t.strategy);
    out.body["residual_exp"] = err2exp(t.residual);
  } else {
    SaddleData d = saddle_constants(s, o.bits);
    out.body["lambda"] = json_rational(d.lambda);
    out.body["tau"] = json_complex(d.tau, 40);
    out.body["alpha"] = json_number(d.alpha, 40);
    out.body["omega"] = json_number(d.omega, 40);
    out.body["phi"] = json_number(d.phi, 40);
    out.body["f0_at_tau"] = json_complex(d.f0_at_tau, 40);
    out.body["residual_exp"] = err2exp(d.residual);
  }
  if (o.curve_points > 0) {
    Table tab{{"x", "y"}, {}};
    for (const auto& pt : y_curve_scan(s, o.curve_points, std::min<long>(o.bits, 128)))
      tab.rows.push_back({pt.x.to_string(20), pt.y.to_string(20)});
    out.body["curve"] = table_json(tab);
    out.table = std::move(tab);
  }
  return out;
}

Outcome cmd_census(const Options& o) {
  Shape s = make_shape(o.k, o.q, o.r);
  CensusReport c = p_roots_census(s, o.bits);
  Outcome out;
  out.body["params"] = params_json(o, false);
  out.body["degree"] = c.degree;
  out.body["on_line"] = c.on_line;
  out.body["right"] = c.right;
  out.body["left"] = c.left;
  out.body["min_distance"] = json_number(c.min_distance, 10);
  Table tab{{"re", "im"}, {}};
  for (const auto& z : c.roots) tab.rows.push_back({z.re.to_string(30), z.im.to_string(30)});
  out.body["roots"] = table_json(tab);
  out.table = std::move(tab);
  out.passed = c.consistent() && c.on_line == o.q - 1 && c.right == o.k && c.left == o.k;
  return out;
}

Outcome cmd_quadrature(const Options& o) {
  Params p = need_params(o, "quadrature");
  ContourSpec spec = default_contour(p);
  if (!o.mu.empty()) spec.mu = parse_rational(o.mu, "--mu");
  QuadratureResult q = s_n_contour(p, spec, o.bits, o.jobs);
  Outcome out;
  out.body["params"] = params_json(o, true);
  out.body["abscissa"] = json_rational(q.abscissa);
  out.body["s_n"] = json_certified(q.value.re, q.error);
  out.body["imag"] = json_number(q.value.im, 10);
  out.body["truncation_exp"] = err2exp(q.truncation);
  out.body["height"] = q.height;
  out.body["panels"] = q.panels;
  if (o.decompose) {
    CoefficientTable t = build_coefficients(p, o.jobs);
    Certified sn = s_n_via_zeta(rho(p, t), zeta_basis(p.k, p.q, o.bits), 64);
    Decomposition d = decomposition_check(p, sn, spec, o.bits, o.jobs);
    out.body["decomposition"] = {{"s_tilde", json_number(d.s_tilde, 30)},
                                 {"sum", json_number(d.sum, 30)},
                                 {"residual", json_number(d.residual, 6)},
                                 {"error", json_number(d.error, 6)},
                                 {"ok", d.ok()}};
    out.passed = d.ok();
  }
  return out;
}

Outcome cmd_fit(const Options& o) {
  if (o.n_list.empty()) throw InvalidInput("fit requires --n-list");
  Shape s = make_shape(o.k, o.q, o.r);
  FitReport f = asymptotic_fit(s, parse_list(o.n_list, "--n-list"), o.bits, o.jobs);
  Outcome out;
  out.body["params"] = params_json(o, false);
  out.body["alpha"] = json_number(f.alpha, 30);
  out.body["omega"] = json_number(f.omega, 30);
  out.body["phi"] = json_number(f.phi, 30);
  Table tab{{"n", "logS", "predicted", "residual", "excluded"}, {}};
  for (const auto& r : f.rows)
    tab.rows.push_back({std::to_string(r.n), r.log_s.to_string(20), r.predicted.to_string(20),
                        r.residual.to_string(20), r.excluded ? "1" : "0"});
  out.body["rows"] = table_json(tab);
  bool final_small = false;
  for (auto it = f.rows.rbegin(); it != f.rows.rend(); ++it)
    if (!it->excluded) {
      final_small = abs(it->residual) < abs(f.alpha) / 10L;
      break;
    }
  out.body["decreasing"] = f.decreasing();
  out.body["final_below_tenth_alpha"] = final_small;
  out.body["gaussian_ok"] = f.gaussian_ok();
  out.table = std::move(tab);
  out.passed = f.rows.empty() || (f.decreasing() && final_small);
  return out;
}

Outcome cmd_bound(const Options& o) {
  BoundReport b = dimension_lower(o.k, o.q, o.r, o.bits);
  Outcome out;
  out.body["params"] = params_json(o, false);
  out.body["alpha"] = json_number(b.alpha, 30);
  out.body["beta"] = json_number(b.beta, 30);
  out.body["alpha_hat"] = json_number(b.alpha_hat, 30);
  out.body["beta_hat"] = json_number(b.beta_hat, 30);
  out.body["d_lower"] = json_number(b.d_lower, 30);
  out.body["ratio_to_log2q"] = json_number(b.ratio_to_log2q, 30);
  out.body["alpha_hat_positive"] = b.alpha_hat_positive;
  out.body["omega_in_pi_z"] = b.omega_in_pi_z;
  out.body["phi_in_half_pi_z"] = b.phi_in_half_pi_z;
  out.body["note"] = "pi-rationality of omega and phi is tested numerically only";
  return out;
}

Outcome cmd_bound_scan(const Options& o) {
  if (o.q_grid.empty()) throw InvalidInput("bound scan requires --q-grid");
  auto rows = trend_scan(o.k, parse_list(o.q_grid, "--q-grid"), o.bits, o.jobs);
  TrendVerdict v = trend_verdict(rows);
  Outcome out;
  Table tab{{"q", "r", "d_lower", "d_ratio", "alpha_ratio", "beta_ratio", "alpha_hat_positive"}, {}};
  for (const auto& r : rows)
    tab.rows.push_back({std::to_string(r.q), std::to_string(r.r), r.d_lower.to_string(20),
                        r.d_ratio.to_string(20), r.alpha_ratio.to_string(20),
                        r.beta_ratio.to_string(20), r.alpha_hat_positive ? "1" : "0"});
  out.body["k"] = o.k;
  out.body["rows"] = table_json(tab);
  out.body["trend"] = {{"d_ratio", v.d_ratio}, {"alpha_ratio", v.alpha_ratio}, {"beta_ratio", v.beta_ratio}};
  out.table = std::move(tab);
  return out;
}

Outcome cmd_scan(const Options& o) {
  if (o.q_grid.empty()) throw InvalidInput("scan requires --q-grid");
  auto rows = tau_asymptotic_scan(o.k, parse_list(o.q_grid, "--q-grid"), o.bits);
  Outcome out;
  Table tab{{"q", "r", "ratio"}, {}};
  for (const auto& r : rows)
    tab.rows.push_back({std::to_string(r.q), std::to_string(r.r), r.ratio.to_string(20)});
  out.body["k"] = o.k;
  out.body["limit"] = "-1/" + std::to_string(o.k);
  out.body["rows"] = table_json(tab);
  out.table = std::move(tab);
  return out;
}

Outcome cmd_verify_all(const Options& o) {
  Params p = need_params(o, "verify-all");
  VerifyReport rep = verify_all(p, o.bits, o.jobs);
  Outcome out;
  out.body = rep.body();
  Table tab{{"check", "passed"}, {}};
  for (const auto& c : rep.checks) tab.rows.push_back({c.name, c.passed ? "1" : "0"});
  out.table = std::move(tab);
  out.passed = rep.all_passed();
  out.numeric = rep.any_numeric_error();
  return out;
}

void flatten(const Json& j, const std::string& prefix, Table& t) {
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) flatten(v, prefix.empty() ? key : prefix + "." + key, t);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), t);
  } else {
    t.rows.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear forms in Hurwitz zeta values: construction, verification and bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; flags take precedence");

  Options o;
  app.add_option("--k", o.k, "weight k >= 2");
  app.add_option("--q", o.q, "modulus q >= 3");
  app.add_option("--r", o.r, "shape parameter r > 2k");
  app.add_option("--n", o.n, "index n");
  app.add_option("--mode", o.mode, "divisibility mode")->check(CLI::IsMember({"strict", "relaxed"}));
  app.add_option("--precision-bits", o.bits, "working precision (default from ZETAFORMS_PRECISION_BITS)")
      ->check(CLI::Range(64L, 1L << 24));
  app.add_option("--output,-o", o.output, "report path (default stdout)");
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs,-j", o.jobs, "parallel workers")->check(CLI::Range(1u, 1024u));

  std::string chosen;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&chosen, name] { chosen = name; });
    return s;
  };
  sub("coeffs", "coefficients C_{n,j} with exact invariant checks");
  sub("linform", "rho coefficients and their divisibility");
  sub("zeta", "Hurwitz zeta value zeta(k, a/q)")->add_option("--a", o.a, "numerator a");
  CLI::App* cotk = sub("cotk", "expansion and evaluation of cot_k");
  cotk->add_option("--z", o.z, "evaluate cot_k(pi z) at z = re,im");
  CLI::App* saddle = sub("saddle", "saddle point and the constants alpha, omega, phi");
  saddle->add_option("--lambda", o.lambda, "solve f'(tau) = lambda pi i instead");
  saddle->add_option("--strategy", o.strategy, "auto, newton, curve or census");
  saddle->add_option("--curve-points", o.curve_points, "also emit the curve Y as (x, y)");
  sub("census", "roots of P(z) and their half-plane counts");
  CLI::App* quad = sub("quadrature", "S_n by contour quadrature");
  quad->add_option("--mu", o.mu, "line abscissa in z = t/n");
  quad->add_flag("--decompose", o.decompose, "also check the J_{n,l} decomposition");
  sub("fit", "asymptotic fit of log|S_n|")->add_option("--n-list", o.n_list, "comma separated n values");
  CLI::App* bound = sub("bound", "dimension lower bound for (k, q, r)");
  CLI::App* bscan = bound->add_subcommand("scan", "trend of the bound over a q grid");
  bscan->add_option("--q-grid", o.q_grid, "comma separated q values");
  bscan->callback([&] { chosen = "bound scan"; });
  sub("scan", "log|tau - q| / log^2 q over a q grid")->add_option("--q-grid", o.q_grid, "comma separated q values");
  sub("verify-all", "every module contract on one tuple");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  if (bscan->parsed()) chosen = "bound scan";

  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (chosen == "coeffs") out = cmd_coeffs(o);
    else if (chosen == "linform") out = cmd_linform(o);
    else if (chosen == "zeta") out = cmd_zeta(o);
    else if (chosen == "cotk") out = cmd_cotk(o);
    else if (chosen == "saddle") out = cmd_saddle(o);
    else if (chosen == "census") out = cmd_census(o);
    else if (chosen == "quadrature") out = cmd_quadrature(o);
    else if (chosen == "fit") out = cmd_fit(o);
    else if (chosen == "bound") out = cmd_bound(o);
    else if (chosen == "bound scan") out = cmd_bound_scan(o);
    else if (chosen == "scan") out = cmd_scan(o);
    else if (chosen == "verify-all") out = cmd_verify_all(o);
    else throw InvalidInput("no command");
  } catch (const InvalidParams& e) {
    std::cerr << "invalid parameters (" << e.predicate() << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string text;
  if (o.format == "csv") {
    Table t{{"key", "value"}, {}};
    if (out.table)
      t = *out.table;
    else
      flatten(out.body, "", t);
    text = to_csv(t);
  } else {
    Json meta = {{"generated_at", utc_now()}, {"elapsed_seconds", elapsed}, {"jobs", o.jobs}};
    text = envelope(chosen, out.body, meta).dump(2) + "\n";
  }
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.output);
    if (!f) {
      std::cerr << "cannot write " << o.output << "\n";
      return kExitUsage;
    }
    f << text;
  }
  if (out.numeric) return kExitNumeric;
  return out.passed ? 0 : kExitVerify;
}
