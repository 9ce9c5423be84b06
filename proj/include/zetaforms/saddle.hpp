#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "zetaforms/numeric.hpp"
#include "zetaforms/params.hpp"

namespace zf {

// ---- phase function f and friends (f-plane) ----
//
// f(z)  = k(z+r+q)log(z+r+q) + k(q-z)log(q-z) + (q+k) z log z
//         - (q+k)(z+r)log(z+r) + rq log r + 2kq sum_{p|q} log p/(p-1)
// f'(z) = (q+k)(log z - log(z+r)) + k(log(z+r+q) - log(q-z))
// f0    = f - z f'
// g(z)  = (2z+r)^{1-delta_k} / (sqrt z sqrt(z+r))
//         * (sqrt(q-z) sqrt(z+r+q) / (sqrt z sqrt(z+r)))^k
//
// Principal branches; the cuts are (-inf, 0] and [q, +inf).  Near z = q the
// difference q - z is carried separately so that log(q - z) keeps its
// relative accuracy.

struct PhasePoint {
  BigComplex z;
  BigComplex q_minus_z;
};
PhasePoint phase_point(const Shape& s, const BigComplex& z);
// z = q - e^u with Im u reduced to (-pi, pi].
PhasePoint phase_point_log(const Shape& s, const BigComplex& u);

BigComplex f_eval(const Shape& s, const PhasePoint& z);
BigComplex fprime_eval(const Shape& s, const PhasePoint& z);
BigComplex f0_eval(const Shape& s, const PhasePoint& z);
BigComplex fpp_eval(const Shape& s, const PhasePoint& z);
BigComplex g_eval(const Shape& s, const PhasePoint& z);

BigComplex f_eval(const Shape& s, const BigComplex& z);
BigComplex fprime_eval(const Shape& s, const BigComplex& z);
BigComplex f0_eval(const Shape& s, const BigComplex& z);
BigComplex fpp_eval(const Shape& s, const BigComplex& z);
BigComplex g_eval(const Shape& s, const BigComplex& z);

// ---- h-plane ----

struct PhaseContext {
  Shape shape;
  mpq_class a;  // q
  mpq_class b;  // k
  mpq_class s;  // 2q/r
};
PhaseContext make_context(const Shape& s);

struct HParams {
  mpq_class a, b, s;
};
HParams h_params(const PhaseContext& c);
void check_h_params(const HParams& h);

BigComplex h_eval(const HParams& h, const BigComplex& w, prec_t prec);
BigComplex h_derivative(const HParams& h, const BigComplex& w, prec_t prec);
// Re h; +-inf at the logarithmic singularities.
BigFloat H_eval(const HParams& h, const BigFloat& x, const BigFloat& y, prec_t prec);
BigFloat H_dx(const HParams& h, const BigFloat& x, const BigFloat& y, prec_t prec);
BigFloat H_dy(const HParams& h, const BigFloat& x, const BigFloat& y, prec_t prec);

struct EtaRoots {
  BigFloat eta0, eta1;
  BigFloat dHdx_eta0, dHdx_eta1;  // > 0 and < 0
};
EtaRoots eta_roots(const HParams& h, prec_t prec);

// Unique y > 0 with H(x, y) = 0 for eta0 < x < eta1.
BigFloat y0_curve(const HParams& h, const BigFloat& x, prec_t prec);

enum class Plane { h, f };
struct CurvePoint {
  BigFloat x;
  BigFloat y;
  Plane plane;
};
// Y0 on `count` interior points of (eta0, eta1), evenly spaced.
std::vector<CurvePoint> y0_scan(const HParams& h, long count, prec_t prec);
// Y(x) = (r/2) Y0(2x/r + 1) on (mu0, mu1).
std::vector<CurvePoint> y_curve_scan(const Shape& s, long count, prec_t prec);

struct AxisSample {
  BigFloat y;
  BigFloat im_h;
};
std::vector<AxisSample> imag_axis_scan(const HParams& h, const std::vector<BigFloat>& grid,
                                       prec_t prec);

struct HSolution {
  enum Kind { interior, upper_bank, lower_bank } kind;
  BigComplex w;
  BigFloat residual;  // |h(w) - lambda pi i| for interior points, 0 on banks
};
struct HSolutionSet {
  int case_number;  // 1..6
  std::vector<HSolution> solutions;
};
HSolutionSet solve_h(const HParams& h, const mpq_class& lambda, prec_t prec);

// ---- saddle points ----

enum class TauStrategy { newton, census, curve };
std::string to_string(TauStrategy s);

struct TauResult {
  BigComplex tau;
  BigComplex q_minus_tau;
  BigFloat residual;
  TauStrategy strategy;
  int iterations;
};
// tau_lambda for 0 <= lambda < k.  lambda = 0 is solved on the real axis.
TauResult find_tau(const Shape& s, const mpq_class& lambda, prec_t prec, TauStrategy strategy);
// Newton first, then the curve bisection, then the census (small q).
TauResult find_tau_auto(const Shape& s, const mpq_class& lambda, prec_t prec);
// mu0: the real root of f' on (0, q), as (z, q - z).
PhasePoint mu0_point(const Shape& s, prec_t prec);

struct CensusReport {
  long degree;
  long on_line;
  long right;
  long left;
  BigFloat min_distance;
  std::vector<BigComplex> roots;
  bool consistent() const;
};
std::vector<mpz_class> census_polynomial(const Shape& s);
CensusReport p_roots_census(const Shape& s, prec_t prec);

struct SaddleData {
  mpq_class lambda;
  BigComplex tau;
  BigComplex q_minus_tau;
  BigFloat alpha;
  BigFloat omega;
  BigFloat phi;
  BigComplex f0_at_tau;
  BigComplex fpp_at_tau;
  BigComplex g_at_tau;
  BigFloat residual;
};
SaddleData saddle_constants(const Shape& s, prec_t prec);

struct TauRatio {
  long q;
  long r;
  BigFloat ratio;  // log|tau_{k-2} - q| / log^2 q
};
long log_squared_floor(long q);
std::vector<TauRatio> tau_asymptotic_scan(long k, const std::vector<long>& q_list, prec_t prec);

}  // namespace zf
