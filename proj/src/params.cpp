#include "zetaforms/params.hpp"

#include <cmath>
#include <cstdlib>

#include "zetaforms/errors.hpp"

namespace zf {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<long> prime_divisors(long q) {
  std::vector<long> ps;
  long x = q;
  for (long d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      ps.push_back(d);
      while (x % d == 0) x /= d;
    }
  }
  if (x > 1) ps.push_back(x);
  return ps;
}

long valuation(long m, long p) {
  long v = 0;
  while (m != 0 && m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

long factorial_valuation(long m, long p) {
  long v = 0;
  for (long t = m / p; t > 0; t /= p) v += t;
  return v;
}

std::variant<Params, Rejection> validate(long k, long q, long r, long n, Divisibility mode) {
  if (k < 2) return Rejection{"k>=2", "k = " + std::to_string(k)};
  if (q < 3) return Rejection{"q>=3", "q = " + std::to_string(q)};
  if (r <= 2 * k) return Rejection{"r>2k", "r = " + std::to_string(r) + ", 2k = " + std::to_string(2 * k)};
  if (n < 1) return Rejection{"n>=1", "n = " + std::to_string(n)};

  Params p;
  p.k = k;
  p.q = q;
  p.r = r;
  p.n = n;
  p.mode = mode;
  p.primes = prime_divisors(q);

  if (mode == Divisibility::strict) {
    // q! | n, checked prime by prime to avoid forming q!.
    for (long ell = 2; ell <= q; ++ell) {
      if (!is_prime(ell)) continue;
      if (valuation(n, ell) < factorial_valuation(q, ell))
        return Rejection{"q!|n", "n = " + std::to_string(n) + " is not a multiple of " +
                                     std::to_string(q) + "!"};
    }
  } else {
    if (n % 2 != 0) return Rejection{"n even", "n = " + std::to_string(n)};
    for (long pr : p.primes)
      if (n % (pr - 1) != 0)
        return Rejection{"(p-1)|n", "p = " + std::to_string(pr) + ", n = " + std::to_string(n)};
  }
  return p;
}

Params make_params(long k, long q, long r, long n, Divisibility mode) {
  auto v = validate(k, q, r, n, mode);
  if (auto* rej = std::get_if<Rejection>(&v)) throw InvalidParams(rej->predicate, rej->detail);
  return std::get<Params>(v);
}

Shape make_shape(long k, long q, long r) {
  if (k < 2) throw InvalidParams("k>=2", "k = " + std::to_string(k));
  if (q < 3) throw InvalidParams("q>=3", "q = " + std::to_string(q));
  if (r <= 2 * k) throw InvalidParams("r>2k", "r = " + std::to_string(r));
  return {k, q, r};
}

mpz_class lcm_upto(unsigned long m) {
  mpz_class d = 1;
  for (unsigned long i = 2; i <= m; ++i) mpz_lcm_ui(d.get_mpz_t(), d.get_mpz_t(), i);
  return d;
}

PrecisionPolicy required_precision(const Params& p, double alpha_hint, double beta_hint,
                                   long guard) {
  if (!(alpha_hint >= 0) || !(beta_hint >= 0))
    throw InvalidInput("required_precision: hints must be non-negative");
  double extra = (alpha_hint + beta_hint) * static_cast<double>(p.n) / std::log(2.0);
  return {64 + static_cast<long>(std::ceil(extra)), guard};
}

long default_precision_bits() {
  if (const char* s = std::getenv("ZETAFORMS_PRECISION_BITS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 64) return v;
  }
  return 256;
}

}  // namespace zf
