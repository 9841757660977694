#include "doctest.h"
#include "heckecong/eigensolve.hpp"
#include "oracles.hpp"
#include "trace_formula.hpp"

using namespace heckecong;

namespace {

mpz_class as_integer(const Rational& x) {
  REQUIRE(x.get_den() == 1);
  return x.get_num();
}

}  // namespace

TEST_CASE("trace formula reproduces known level one traces") {
  CHECK(oracle::trace_hecke(1, 12, 1) == 1);
  CHECK(oracle::trace_hecke(1, 12, 2) == -24);
  CHECK(oracle::trace_hecke(1, 12, 3) == 252);
  CHECK(oracle::trace_hecke(1, 12, 5) == 4830);
  CHECK(oracle::trace_hecke(1, 24, 2) == 1080);
  CHECK(oracle::trace_hecke(11, 2, 1) == 1);
  CHECK(oracle::trace_hecke(11, 2, 2) == -2);
  CHECK(oracle::trace_hecke(11, 2, 3) == -1);
}

TEST_CASE("trace formula dimensions agree with the dimension formula") {
  for (long L : {1L, 2L, 3L, 5L, 6L, 7L, 10L, 11L, 15L}) {
    for (long k : {4L, 8L, 12L, 18L, 26L}) {
      CHECK_MESSAGE(oracle::trace_hecke(L, k, 1) == oracle::dim_cusp_forms(L, k), "L=" << L << " k=" << k);
    }
  }
}

TEST_CASE("Hecke traces on p-new spaces match the trace formula") {
  struct Case {
    long N, p, k;
  };
  for (Case c : {Case{1, 3, 12}, Case{1, 5, 10}, Case{1, 7, 8}, Case{2, 3, 10}, Case{1, 11, 6}, Case{2, 5, 6}}) {
    NewSpace ns(c.N, c.p, c.k);
    long L = c.N * c.p;
    CHECK(static_cast<long>(ns.dimension()) == oracle::dim_new_cusp_forms(L, c.k));
    for (long ell : good_primes(c.N, c.p, 30)) {
      CHECK_MESSAGE(as_integer(ns.hecke(ell).trace()) == oracle::trace_hecke_new(L, c.k, ell),
                    "N=" << c.N << " p=" << c.p << " k=" << c.k << " ell=" << ell);
    }
  }
}

TEST_CASE("characteristic polynomial of T_q is certified by power traces") {
  struct Case {
    long N, p, k, q;
  };
  for (Case c : {Case{1, 3, 20, 2}, Case{1, 5, 14, 2}, Case{1, 7, 12, 3}, Case{2, 3, 14, 5}}) {
    NewSpace ns(c.N, c.p, c.k);
    long d = static_cast<long>(ns.dimension());
    REQUIRE(d > 0);
    auto expected = oracle::power_traces_new(c.N * c.p, c.k, c.q, d);
    const QMatrix& T = ns.hecke(c.q);
    QMatrix power = T;
    for (long j = 1; j <= d; ++j) {
      CHECK_MESSAGE(as_integer(power.trace()) == expected[j - 1], "case k=" << c.k << " j=" << j);
      power = power * T;
    }
  }
}
