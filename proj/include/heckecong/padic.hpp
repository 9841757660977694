#pragma once

#include "heckecong/arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace heckecong {

// A p-adic number p^valuation * mantissa, with the unit mantissa known
// modulo p^precision (relative precision).
//
// Two special states exist besides ordinary values:
//  * exact zero: valuation() == kInfiniteValuation;
//  * unresolved zero O(p^n): the result of a cancellation that consumed all
//    known digits. It has precision() == 0 and valuation() == n, which is a
//    lower bound only. Such values are never constructed directly.
class PadicNumber {
 public:
  explicit PadicNumber(long p = 2);  // exact zero

  static PadicNumber from_rational(const Rational& x, long p, long precision);
  static PadicNumber from_parts(long p, long valuation, const Integer& mantissa, long precision);

  long prime() const { return p_; }
  bool is_exact_zero() const { return valuation_ == kInfiniteValuation; }
  bool is_resolved() const { return is_exact_zero() || precision_ > 0; }
  long valuation() const { return valuation_; }
  const Integer& mantissa() const { return mantissa_; }
  long precision() const { return precision_; }
  // valuation + precision; kInfiniteValuation for exact zero.
  long absolute_precision() const;

  PadicNumber operator-() const;
  PadicNumber operator+(const PadicNumber& other) const;
  PadicNumber operator-(const PadicNumber& other) const;
  PadicNumber operator*(const PadicNumber& other) const;

  // Equal iff valuations match and mantissas agree mod p^{min precision}.
  bool operator==(const PadicNumber& other) const;
  bool operator!=(const PadicNumber& other) const { return !(*this == other); }

  std::string str() const;

 private:
  long p_;
  long valuation_;
  Integer mantissa_;
  long precision_;
};

// Integer polynomial with nonzero leading coefficient and degree >= 1.
class IntPoly {
 public:
  explicit IntPoly(std::vector<Integer> coefficients);  // low degree first
  static IntPoly from_rational_monic(const std::vector<Rational>& coefficients);

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  const Integer& operator[](size_t i) const { return coeffs_[i]; }
  const Integer& leading() const { return coeffs_.back(); }

  Integer eval(const Integer& x) const;
  Integer eval_mod(const Integer& x, const Integer& modulus) const;
  IntPoly derivative() const;  // throws for linear input (constant result)
  std::vector<Integer> derivative_coefficients() const;
  Integer discriminant() const;
  std::string str() const;

 private:
  std::vector<Integer> coeffs_;
};

struct NewtonSegment {
  Rational slope;  // common valuation of the roots on this segment
  long length;
  bool operator==(const NewtonSegment& o) const { return slope == o.slope && length == o.length; }
};

// Segments of the lower convex hull of (i, vp(a_i)), reported as root
// valuations in nondecreasing order. Roots at zero are omitted.
std::vector<NewtonSegment> newton_polygon(const IntPoly& f, long p);

struct HenselOptions {
  long initial_guard = 4;
  long guard_ceiling = 1024;
};

// One residue mod p^M per root of f in Z_p. Roots that are distinct but
// congruent mod p^M appear once each. Throws NotSquarefree when disc f = 0
// and PrecisionExhausted if the guard ceiling is exceeded.
std::vector<Integer> hensel_roots(const IntPoly& f, long p, long M, const HenselOptions& options = {});

// Number of roots of f in Z_p (same machinery as hensel_roots).
long count_zp_roots(const IntPoly& f, long p);

}  // namespace heckecong
