#include "doctest.h"
#include "heckecong/errors.hpp"
#include "heckecong/modsym.hpp"
#include "oracles.hpp"

using namespace heckecong;

TEST_CASE("P1 list has psi(L) points and consistent lookup") {
  for (long L : {1L, 2L, 3L, 5L, 6L, 7L, 10L, 11L, 15L, 22L, 30L}) {
    P1List p1(L);
    CHECK(static_cast<long>(p1.size()) == oracle::psi(L));
    for (size_t i = 0; i < p1.size(); ++i) {
      auto [c, d] = p1[i];
      CHECK(p1.index(c, d) == static_cast<long>(i));
      Mat2 g = p1.lift_to_sl2z(i);
      CHECK(g.det() == 1);
      CHECK(p1.index(g.c, g.d) == static_cast<long>(i));
    }
  }
}

TEST_CASE("plus quotient dimension equals cusp forms plus cusps") {
  for (long L : {1L, 2L, 3L, 5L, 6L, 7L, 11L}) {
    for (long k : {4L, 6L, 12L, 18L, 20L}) {
      ModSymSpace M(L, k);
      long cusps = static_cast<long>(M.cusp_divisors().size());
      CHECK_MESSAGE(static_cast<long>(M.dimension()) == oracle::dim_cusp_forms(L, k) + cusps, "L=" << L << " k=" << k);
    }
  }
}

TEST_CASE("boundary map is well defined on the quotient") {
  ModSymSpace M(6, 8);
  QMatrix B = M.boundary_matrix();
  const long w = M.poly_degree();
  for (size_t g = 0; g < M.num_generators(); ++g) {
    std::vector<Rational> direct(B.rows());
    long i = M.generator_exponent(g);
    auto [u, v] = M.p1()[M.generator_point(g)];
    auto row = [&](long x) {
      long d = std::gcd(((x % 6) + 6) % 6, 6L);
      if (d == 0) d = 6;
      const auto& divs = M.cusp_divisors();
      return static_cast<size_t>(std::find(divs.begin(), divs.end(), d) - divs.begin());
    };
    if (i == w) direct[row(u)] += 1;
    if (i == 0) direct[row(v)] -= 1;
    std::vector<Rational> via(B.rows());
    for (const auto& [j, c] : M.reduce(g))
      for (size_t r = 0; r < B.rows(); ++r) via[r] += c * B(r, j);
    CHECK(direct == via);
  }
}

TEST_CASE("level one weight 12 recovers tau(2) and the Eisenstein eigenvalue") {
  ModSymSpace M(1, 12);
  REQUIRE(M.dimension() == 2);
  QPoly f = M.hecke_matrix(2).charpoly();
  // (x + 24)(x - 2049)
  QPoly expected{Rational(-24 * 2049), Rational(24 - 2049), Rational(1)};
  CHECK(f == expected);
}

TEST_CASE("level one weight 24 cusp forms have the known T_2 polynomial") {
  Subspace S;
  S.ambient = std::make_shared<const ModSymSpace>(1, 24);
  S.basis = S.ambient->boundary_matrix().kernel();
  QPoly f = hecke_matrix(S, 2).charpoly();
  QPoly expected{Rational(-20468736), Rational(-1080), Rational(1)};
  CHECK(f == expected);
}

TEST_CASE("Heilbronn and coset representatives give the same Hecke operator") {
  for (auto [L, k] : std::vector<std::pair<long, long>>{{1, 12}, {3, 10}, {5, 8}, {6, 6}, {11, 4}, {7, 6}}) {
    ModSymSpace M(L, k);
    for (long ell : {2L, 3L, 5L, 7L, 13L}) {
      if (L % ell == 0) continue;
      CHECK_MESSAGE(M.hecke_matrix(ell) == M.hecke_matrix_by_cosets(ell), "L=" << L << " k=" << k << " ell=" << ell);
    }
  }
}

TEST_CASE("Hecke operators commute") {
  ModSymSpace M(6, 10);
  QMatrix t5 = M.hecke_matrix(5), t7 = M.hecke_matrix(7);
  CHECK(t5 * t7 == t7 * t5);
  QMatrix u2 = M.up_matrix(2), u3 = M.up_matrix(3);
  CHECK(u2 * t5 == t5 * u2);
  CHECK(u3 * u2 == u2 * u3);
}

TEST_CASE("new subspace dimensions match the dimension formula") {
  for (auto [N, p, k] : std::vector<std::tuple<long, long, long>>{
           {1, 3, 12}, {1, 5, 8}, {1, 7, 6}, {2, 3, 8}, {1, 11, 4}, {1, 3, 44}, {1, 5, 32}, {1, 7, 20}}) {
    ModSymFamily fam = build_space(N, p, k);
    Subspace S = pnew_cuspidal_plus(fam);
    CHECK_MESSAGE(static_cast<long>(S.dimension()) == oracle::dim_new_cusp_forms(N * p, k),
                  "N=" << N << " p=" << p << " k=" << k);
  }
}

TEST_CASE("Atkin-Lehner involution on the new subspace") {
  for (auto [N, p, k] : std::vector<std::tuple<long, long, long>>{{1, 3, 12}, {1, 5, 8}, {2, 3, 8}, {1, 7, 10}}) {
    ModSymFamily fam = build_space(N, p, k);
    Subspace S = pnew_cuspidal_plus(fam);
    QMatrix w = atkin_lehner_matrix(S, p);
    CHECK(w * w == QMatrix::identity(S.dimension()));
    QMatrix up = hecke_matrix(S, p);
    Rational scale = -Rational(ipow(p, static_cast<unsigned long>((k - 2) / 2)));
    CHECK(up == w.scaled(scale));
    QMatrix t = hecke_matrix(S, 13);
    CHECK(t * w == w * t);
  }
}

TEST_CASE("build_space validates its input") {
  CHECK_THROWS_AS(build_space(1, 4, 12), InvalidArgument);
  CHECK_THROWS_AS(build_space(3, 3, 12), InvalidArgument);
  CHECK_THROWS_AS(build_space(1, 3, 13), UnsupportedWeight);
  CHECK_THROWS_AS(build_space(4, 3, 12), InvalidArgument);
}
