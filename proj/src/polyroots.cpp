#include "zetaforms/polyroots.hpp"

#include <cmath>

#include "zetaforms/errors.hpp"

namespace zf {

namespace {

struct ValueAndSlope {
  BigComplex p;
  BigComplex dp;
};

ValueAndSlope horner2(const std::vector<BigFloat>& c, const BigComplex& z, prec_t w) {
  ValueAndSlope r{BigComplex(w), BigComplex(w)};
  for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i) {
    r.dp *= z;
    r.dp += r.p;
    r.p *= z;
    r.p += c[i];
  }
  return r;
}

// Sum |c_i| |z|^i, the scale of Horner's rounding error at z.
BigFloat abs_horner(const std::vector<BigFloat>& c, const BigFloat& az) {
  BigFloat r(64);
  for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i) r = r * az + abs(c[i]).with_prec(64);
  return r;
}

}  // namespace

BigComplex poly_eval(const std::vector<mpz_class>& coeffs, const BigComplex& z, prec_t prec) {
  BigComplex acc(prec);
  for (long i = static_cast<long>(coeffs.size()) - 1; i >= 0; --i) {
    acc *= z;
    acc += BigFloat(coeffs[i], prec);
  }
  return acc;
}

std::vector<BigComplex> polynomial_roots(const std::vector<mpz_class>& coeffs, prec_t prec,
                                         int max_iterations) {
  std::vector<mpz_class> a = coeffs;
  while (!a.empty() && a.back() == 0) a.pop_back();
  const long d = static_cast<long>(a.size()) - 1;
  if (d < 1) return {};
  prec_t w = prec + 32;
  std::vector<BigFloat> c;
  for (const auto& x : a) c.emplace_back(x, w);

  // Fujiwara radius bound for the initial circle.
  double radius = 0;
  BigFloat lead = abs(c[d]);
  for (long i = 1; i <= d; ++i) {
    if (c[d - i].is_zero()) continue;
    double v = std::pow((abs(c[d - i]) / lead).to_double(), 1.0 / i);
    if (i == d) v /= std::pow(2.0, 1.0 / d);
    radius = std::max(radius, v);
  }
  radius = std::max(2 * radius, 1.0);

  std::vector<BigComplex> z;
  const double two_pi = 6.283185307179586;
  for (long i = 0; i < d; ++i) {
    double th = two_pi * i / d + 0.4;
    z.emplace_back(BigFloat(radius * std::cos(th), w), BigFloat(radius * std::sin(th), w));
  }

  BigFloat tol = pow2(-(w - 24), 64);
  std::vector<char> done(static_cast<std::size_t>(d), 0);
  int it = 0;
  for (; it < max_iterations; ++it) {
    bool all_done = true;
    for (long i = 0; i < d; ++i) {
      if (done[i]) continue;
      ValueAndSlope v = horner2(c, z[i], w);
      // At the rounding floor further steps are noise.
      BigFloat noise = abs_horner(c, abs(z[i]).with_prec(64)) * pow2(-(w - 8), 64);
      if (abs(v.p).with_prec(64) <= noise) {
        done[i] = 1;
        continue;
      }
      BigComplex ratio = v.p / v.dp;
      BigComplex sum(w);
      for (long j = 0; j < d; ++j)
        if (j != i) sum += BigComplex(BigFloat(1L, w)) / (z[i] - z[j]);
      BigComplex step = ratio / (BigComplex(BigFloat(1L, w)) - ratio * sum);
      z[i] -= step;
      BigFloat scale = max(abs(z[i]).with_prec(64), BigFloat(1L, 64));
      if (abs(step).with_prec(64) < tol * scale)
        done[i] = 1;
      else
        all_done = false;
    }
    if (all_done) break;
  }
  if (it == max_iterations) throw NumericFailure("polynomial_roots: Aberth iteration did not settle");

  for (auto& root : z) {
    for (int k = 0; k < 3; ++k) {
      ValueAndSlope v = horner2(c, root, w);
      if (v.dp.re.is_zero() && v.dp.im.is_zero()) break;
      root -= v.p / v.dp;
    }
    root.re.set_prec(prec);
    root.im.set_prec(prec);
  }
  return z;
}

}  // namespace zf
