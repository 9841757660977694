#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

namespace heckecong {

using Integer = mpz_class;
using Rational = mpq_class;

// Sentinel returned by valuations of zero.
inline constexpr long kInfiniteValuation = LONG_MAX;

long vp(const Integer& x, long p);
long vp(const Rational& x, long p);

Integer ipow(long base, unsigned long exponent);
Integer ipow(const Integer& base, unsigned long exponent);

// Least nonnegative residue of a mod m (m > 0).
Integer mod(const Integer& a, const Integer& m);

// x mod m for a rational x whose denominator is invertible mod m.
Integer rational_mod(const Rational& x, const Integer& m);

// Inverse of a mod m; throws InvalidArgument when not invertible.
Integer inverse_mod(const Integer& a, const Integer& m);

bool is_prime(long n);
std::vector<long> primes_up_to(long n);
std::vector<long> prime_factors(long n);  // distinct, increasing
bool is_squarefree(long n);
long gcd_long(long a, long b);

// Extended gcd: returns g = gcd(a, b) and x, y with a x + b y = g.
long ext_gcd(long a, long b, long& x, long& y);

// Floor division for signed integers.
long floor_div(long a, long b);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

}  // namespace heckecong
