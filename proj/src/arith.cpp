#include "heckecong/arith.hpp"

#include "heckecong/errors.hpp"

#include <cstdlib>
#include <numeric>

namespace heckecong {

long vp(const Integer& x, long p) {
  if (x == 0) return kInfiniteValuation;
  if (p < 2) throw InvalidArgument("vp: p must be >= 2");
  Integer pz = p;
  Integer q = x;
  long v = 0;
  // mpz_remove strips all factors of p at once.
  v = static_cast<long>(mpz_remove(q.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t()));
  return v;
}

long vp(const Rational& x, long p) {
  if (x == 0) return kInfiniteValuation;
  return vp(Integer(x.get_num()), p) - vp(Integer(x.get_den()), p);
}

Integer ipow(long base, unsigned long exponent) {
  Integer r;
  Integer b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exponent);
  return r;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    if (m == 1) return Integer(0);
    throw InvalidArgument("inverse_mod: " + to_string(a) + " not invertible mod " + to_string(m));
  }
  return r;
}

Integer rational_mod(const Rational& x, const Integer& m) {
  if (m == 1) return Integer(0);
  Integer num = x.get_num();
  Integer den = x.get_den();
  if (den == 1) return mod(num, m);
  return mod(num * inverse_mod(den, m), m);
}

bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
  for (long i = 2; i <= n; ++i) {
    if (composite[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j <= n; j += i) composite[static_cast<size_t>(j)] = true;
  }
  return out;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  if (n < 0) n = -n;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_squarefree(long n) {
  if (n < 1) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
  }
  return true;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }

long ext_gcd(long a, long b, long& x, long& y) {
  long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long q = old_r / r;
    long tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace heckecong
