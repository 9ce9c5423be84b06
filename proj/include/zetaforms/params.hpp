#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zetaforms/numeric.hpp"

namespace zf {

enum class Divisibility { strict, relaxed };

// (k, q, r): the shape of the rational function, independent of n.
struct Shape {
  long k = 2;
  long q = 3;
  long r = 5;

  int delta_k() const { return static_cast<int>(k & 1); }
  int delta_q() const { return static_cast<int>(q & 1); }
};

struct Params {
  long k = 2;
  long q = 3;
  long r = 5;
  long n = 6;
  Divisibility mode = Divisibility::strict;
  std::vector<long> primes;  // prime divisors of q, ascending

  int delta_k() const { return static_cast<int>(k & 1); }
  int delta_q() const { return static_cast<int>(q & 1); }
  Shape shape() const { return {k, q, r}; }
  long qn() const { return q * n; }
  long rqn() const { return r * q * n; }
  long rn() const { return r * n; }
  // deg R_n = -delta_k - (r - 2k) q n
  long degree() const { return -delta_k() - (r - 2 * k) * q * n; }
};

struct Rejection {
  std::string predicate;
  std::string detail;
};

// Non-throwing check; returns the violated predicate on failure.
std::variant<Params, Rejection> validate(long k, long q, long r, long n,
                                         Divisibility mode = Divisibility::strict);
// Throwing variant (InvalidParams).
Params make_params(long k, long q, long r, long n, Divisibility mode = Divisibility::strict);
// Shape-only validation for modules that do not need n.
Shape make_shape(long k, long q, long r);

mpz_class lcm_upto(unsigned long m);
std::vector<long> prime_divisors(long q);
bool is_prime(long p);
// Exponent of the prime p in m.
long valuation(long m, long p);
// Exponent of p in m! (Legendre).
long factorial_valuation(long m, long p);

struct PrecisionPolicy {
  long bits = 256;
  long guard = 32;

  long working() const { return bits + guard; }
  PrecisionPolicy doubled() const { return {2 * bits, guard}; }
};

// bits = 64 + ceil((alpha + beta) n / log 2).  Hints must be >= 0.
PrecisionPolicy required_precision(const Params& p, double alpha_hint, double beta_hint,
                                   long guard = 32);

// Default working precision: ZETAFORMS_PRECISION_BITS if set and valid, else 256.
long default_precision_bits();

}  // namespace zf
