#include "heckecong/local_semistable.hpp"

#include "heckecong/errors.hpp"

namespace heckecong {

void validate(const SemistableParams& params) {
  if (!is_prime(params.p)) throw InvalidArgument("p must be prime");
  if (params.k <= 2 || params.k % 2 != 0) throw UnsupportedWeight("k must be even and > 2");
  if (params.eps != 1 && params.eps != -1) throw InvalidArgument("eps must be +1 or -1");
  if (!params.L.infinite && params.L.value.prime() != params.p) throw InvalidArgument("L lives over another prime");
}

VarpiNumber varpi_mul(const VarpiNumber& x, const VarpiNumber& y, long p) {
  return VarpiNumber{x.a * y.a + x.b * y.b * p, x.a * y.b + x.b * y.a};
}

VarpiNumber varpi_power(long e, long p) {
  if (e < 0) throw InvalidArgument("varpi_power: negative exponent");
  Rational half(ipow(p, static_cast<unsigned long>(e / 2)));
  return e % 2 == 0 ? VarpiNumber{half, 0} : VarpiNumber{0, half};
}

VarpiNumber PhiNData::det_phi() const {
  VarpiNumber ad = varpi_mul(phi[0][0], phi[1][1], p);
  VarpiNumber bc = varpi_mul(phi[0][1], phi[1][0], p);
  return VarpiNumber{ad.a - bc.a, ad.b - bc.b};
}

PhiNData phi_n_module(const SemistableParams& params) {
  validate(params);
  PhiNData d;
  d.p = params.p;
  VarpiNumber zero{0, 0};
  VarpiNumber diag = varpi_power(params.k - 2, params.p);
  if (!params.L.infinite) diag = VarpiNumber{diag.a * params.eps, diag.b * params.eps};
  d.phi = {{{diag, zero}, {zero, diag}}};
  d.monodromy = QMatrix(2, 2);
  if (!params.L.infinite) d.monodromy(1, 0) = 1;
  d.fil_jumps = {0, params.k - 1};
  long prec = params.L.infinite ? 1 : std::max(1L, params.L.value.precision());
  PadicNumber one = PadicNumber::from_rational(1, params.p, prec);
  d.fil_line = {one, params.L.infinite ? one : params.L.value};
  return d;
}

bool phi_n_invariants_hold(const PhiNData& d, const SemistableParams& params) {
  if (!(d.monodromy * d.monodromy).is_zero()) return false;
  if (d.monodromy.is_zero() != params.L.infinite) return false;
  if (d.fil_jumps[0] != 0 || d.fil_jumps[1] != params.k - 1) return false;
  VarpiNumber det = d.det_phi();
  return det.b == 0 && det.a == Rational(ipow(params.p, static_cast<unsigned long>(params.k - 2)));
}

long c_constant(long p, long k) {
  if (k <= 2) throw UnsupportedWeight("c_constant needs k > 2");
  if (p < 2) throw InvalidArgument("c_constant needs a prime p");
  // Largest j with p^j <= (k-2)/(p-1), i.e. (p-1) p^j <= k-2 (any sign of j).
  Rational x(k - 2, p - 1);
  x.canonicalize();
  long j = 0;
  if (x >= 1) {
    Integer pw = p;
    while (Rational(pw) <= x) {
      pw *= p;
      ++j;
    }
  } else {
    Integer pw = 1;
    while (x * Rational(pw) < 1) {
      pw *= p;
      --j;
    }
  }
  return j + 5;
}

bool is_admissible(long vL, long C) { return vL < -C; }
bool is_admissible(long vL, long p, long k) { return is_admissible(vL, c_constant(p, k)); }

std::optional<SameSignDepth> same_sign_depth(const PadicNumber& L0, const PadicNumber& L1, long p, long k) {
  if (k % 2 != 0) throw PreconditionViolated("k must be even");
  if (!(2 < k && k < p)) throw PreconditionViolated("need 2 < k < p");
  if (L0.prime() != p || L1.prime() != p) throw PreconditionViolated("L values must be p-adic for this p");
  if (L0.is_exact_zero() || !L0.is_resolved()) throw PreconditionViolated("vp(L0) must be a resolved integer");
  long n = L0.valuation();
  if (!(-k / 2 + 2 <= n && n < 0)) throw PreconditionViolated("need -k/2 + 2 <= vp(L0) < 0");
  PadicNumber diff = L0 - L1;
  if (diff.is_exact_zero()) return SameSignDepth{kInfiniteValuation, true};
  long h = diff.valuation() - n;
  if (!diff.is_resolved()) {
    if (h < 2) throw InsufficientPrecision("vp(L0 - L1) is not resolved at the stored precision");
    return SameSignDepth{h, true};
  }
  if (h < 2) return std::nullopt;
  return SameSignDepth{h, false};
}

std::optional<long> opposite_sign_predicted_depth(const LValue& L, const LValue& Lp, long C) {
  if (L.infinite || Lp.infinite) return std::nullopt;
  const PadicNumber& a = L.value;
  const PadicNumber& b = Lp.value;
  if (!a.is_resolved() || !b.is_resolved() || a.is_exact_zero() || b.is_exact_zero()) {
    throw InsufficientPrecision("L valuations are not resolved");
  }
  if (!is_admissible(a.valuation(), C) || !is_admissible(b.valuation(), C)) return std::nullopt;
  PadicNumber sum = a + b;
  if (!sum.is_exact_zero()) {
    // For an unresolved sum the valuation is a lower bound: only ">= -C" is decidable.
    if (!sum.is_resolved() && sum.valuation() < -C) {
      throw InsufficientPrecision("vp(L + L') is not resolved at the stored precision");
    }
    if (sum.valuation() < -C) return std::nullopt;
  }
  return -a.valuation() + 1;
}

std::optional<long> opposite_sign_predicted_depth(const LValue& L, const LValue& Lp, long p, long k) {
  return opposite_sign_predicted_depth(L, Lp, c_constant(p, k));
}

std::pair<Rational, Rational> equidistribution_interval(long p, long k) {
  Rational lo(-k * (p - 1), 2 * (p + 1));
  lo.canonicalize();
  return {lo, Rational(0)};
}

}  // namespace heckecong
