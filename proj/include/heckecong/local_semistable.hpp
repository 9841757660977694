#pragma once

#include "heckecong/arith.hpp"
#include "heckecong/linalg.hpp"
#include "heckecong/padic.hpp"

#include <array>
#include <optional>
#include <utility>

namespace heckecong {

// An L-invariant: a finite p-adic number or infinity (the crystalline case).
struct LValue {
  bool infinite = false;
  PadicNumber value;
  static LValue finite(const PadicNumber& x) { return LValue{false, x}; }
  static LValue infinity(long p) { return LValue{true, PadicNumber(p)}; }
};

struct SemistableParams {
  long p = 0;
  long k = 0;
  int eps = 1;
  LValue L;
};

void validate(const SemistableParams& params);

// a + b*varpi in Q_p(varpi), varpi^2 = p.
struct VarpiNumber {
  Rational a, b;
  bool operator==(const VarpiNumber& o) const { return a == o.a && b == o.b; }
};
VarpiNumber varpi_mul(const VarpiNumber& x, const VarpiNumber& y, long p);
VarpiNumber varpi_power(long e, long p);  // varpi^e, e >= 0

struct PhiNData {
  long p = 0;
  std::array<std::array<VarpiNumber, 2>, 2> phi;
  QMatrix monodromy{2, 2};
  std::array<long, 2> fil_jumps{0, 0};
  // The filtration line is spanned by fil_line[0] e1 + fil_line[1] e2.
  std::array<PadicNumber, 2> fil_line;

  VarpiNumber det_phi() const;
};

// The matrices are stored as given by the classification: phi is the scalar
// eps varpi^{k-2} and N = ((0,0),(1,0)) for finite L. The relation
// N phi = p phi N is deliberately not imposed.
PhiNData phi_n_module(const SemistableParams& params);

// Checks N^2 = 0, N != 0 iff L finite, jumps {0, k-1}, det phi = p^{k-2}.
bool phi_n_invariants_hold(const PhiNData& d, const SemistableParams& params);

// floor(log_p((k-2)/(p-1))) + 5, by exact comparison.
long c_constant(long p, long k);

bool is_admissible(long vL, long p, long k);
bool is_admissible(long vL, long C);

struct SameSignDepth {
  long h = 0;
  bool at_least = false;  // h is only a lower bound (L0, L1 agree to precision)
};

// h = vp(L0 - L1) - vp(L0) when this is >= 2, none otherwise. Requires k even,
// 2 < k < p and -k/2 + 2 <= vp(L0) < 0.
std::optional<SameSignDepth> same_sign_depth(const PadicNumber& L0, const PadicNumber& L1, long p, long k);

// -vp(L) + 1 when both are admissible and vp(L + L') >= -C, none otherwise.
std::optional<long> opposite_sign_predicted_depth(const LValue& L, const LValue& Lp, long p, long k);
// Same with an explicit constant C in place of c_constant(p, k).
std::optional<long> opposite_sign_predicted_depth(const LValue& L, const LValue& Lp, long C);

// [-k(p-1)/(2(p+1)), 0]
std::pair<Rational, Rational> equidistribution_interval(long p, long k);

}  // namespace heckecong
