#pragma once

// Independent reference formulas used by the unit tests.

#include <gmpxx.h>

#include <numeric>
#include <vector>

namespace oracle {

inline std::vector<long> primes_dividing(long n) {
  std::vector<long> out;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline long psi(long L) {
  long r = L;
  for (long q : primes_dividing(L)) r = r / q * (q + 1);
  return r;
}

inline int kronecker_minus1(long q) { return q == 2 ? 0 : (q % 4 == 1 ? 1 : -1); }
inline int kronecker_minus3(long q) { return q == 3 ? 0 : (q % 3 == 1 ? 1 : -1); }

// dim S_k(Gamma0(L)) for squarefree L and even k >= 4.
inline long dim_cusp_forms(long L, long k) {
  long nu2 = 1, nu3 = 1, cusps = 1;
  for (long q : primes_dividing(L)) {
    nu2 *= 1 + kronecker_minus1(q);
    nu3 *= 1 + kronecker_minus3(q);
    cusps *= 2;
  }
  mpq_class d = mpq_class(k - 1) * psi(L) / 12 + (mpq_class(k / 4) - mpq_class(k - 1, 4)) * nu2 +
                (mpq_class(k / 3) - mpq_class(k - 1, 3)) * nu3 - mpq_class(cusps, 2);
  d.canonicalize();
  return d.get_num().get_si();
}

// Newforms of squarefree level L: sum over M | L of (-2)^{omega(L/M)} dim S_k(M).
inline long dim_new_cusp_forms(long L, long k) {
  long total = 0;
  for (long M = 1; M <= L; ++M) {
    if (L % M != 0) continue;
    long w = static_cast<long>(primes_dividing(L / M).size());
    long coef = (w % 2 == 0 ? 1 : -1) * (1L << w);
    total += coef * dim_cusp_forms(M, k);
  }
  return total;
}

}  // namespace oracle
