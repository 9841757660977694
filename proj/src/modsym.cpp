#include "heckecong/modsym.hpp"

#include "heckecong/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace heckecong {

namespace {

long mod_long(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

Integer binomial(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Coefficients of (aX + bY)^n, index = exponent of X.
HomPoly linear_power(long a, long b, long n) {
  HomPoly out(static_cast<size_t>(n + 1));
  Integer ap = 1;
  std::vector<Integer> bpow(static_cast<size_t>(n + 1));
  bpow[0] = 1;
  for (long j = 1; j <= n; ++j) bpow[j] = bpow[j - 1] * b;
  for (long j = 0; j <= n; ++j) {
    out[j] = binomial(n, j) * ap * bpow[n - j];
    ap *= a;
  }
  return out;
}

HomPoly poly_mul(const HomPoly& f, const HomPoly& g) {
  HomPoly out(f.size() + g.size() - 1);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
  }
  return out;
}

Cusp make_cusp(long num, long den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den == 0) return Cusp::infinity();
  long g = std::gcd(num, den);
  if (g == 0) g = 1;
  return {num / g, den / g};
}

}  // namespace

std::vector<Mat2> heilbronn_cremona(long ell) {
  if (!is_prime(ell)) throw InvalidArgument("Heilbronn matrices need a prime, got " + std::to_string(ell));
  if (ell == 2) return {{1, 0, 0, 2}, {2, 0, 0, 1}, {2, 1, 0, 1}, {1, 0, 1, 2}};
  std::vector<Mat2> out{{1, 0, 0, ell}};
  for (long r = -(ell / 2); r <= ell / 2; ++r) {
    long x1 = ell, x2 = -r, y1 = 0, y2 = 1, a = -ell, b = r;
    out.push_back({x1, x2, y1, y2});
    while (b != 0) {
      long q = std::lround(static_cast<long double>(a) / static_cast<long double>(b));
      long c = a - b * q;
      a = -b;
      b = c;
      long x3 = q * x2 - x1;
      x1 = x2;
      x2 = x3;
      long y3 = q * y2 - y1;
      y1 = y2;
      y2 = y3;
      out.push_back({x1, x2, y1, y2});
    }
  }
  return out;
}

HomPoly act_on_monomial(long i, long w, const Mat2& m) {
  return poly_mul(linear_power(m.a, m.b, i), linear_power(m.c, m.d, w - i));
}

HomPoly act_on_poly(const HomPoly& poly, const Mat2& m) {
  long w = static_cast<long>(poly.size()) - 1;
  HomPoly out(poly.size());
  std::vector<HomPoly> first(poly.size()), second(poly.size());
  for (long j = 0; j <= w; ++j) {
    first[j] = linear_power(m.a, m.b, j);
    second[j] = linear_power(m.c, m.d, j);
  }
  for (long e = 0; e <= w; ++e) {
    if (poly[e] == 0) continue;
    HomPoly term = poly_mul(first[e], second[w - e]);
    for (long j = 0; j <= w; ++j) out[j] += poly[e] * term[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// P^1(Z/L)

P1List::P1List(long level) : level_(level) {
  if (level < 1) throw InvalidArgument("level must be positive");
  const long L = level;
  table_.assign(static_cast<size_t>(L * L), -1);
  std::vector<long> units;
  for (long u = 0; u < L; ++u)
    if (std::gcd(u, L) == 1) units.push_back(u);
  if (L == 1) units = {0};
  for (long c = 0; c < L; ++c) {
    for (long d = 0; d < L; ++d) {
      if (std::gcd(std::gcd(c, d), L) != 1 && L != 1) continue;
      if (table_[c * L + d] >= 0) continue;
      // Orbit under units; (c, d) is visited in lexicographic order, so it is
      // the least element of its orbit.
      int32_t idx = static_cast<int32_t>(points_.size());
      points_.push_back({c, d});
      for (long u : units) {
        long cc = (u * c) % L, dd = (u * d) % L;
        table_[cc * L + dd] = idx;
      }
    }
  }
}

long P1List::index(long c, long d) const {
  const long L = level_;
  c = mod_long(c, L);
  d = mod_long(d, L);
  return table_[c * L + d];
}

Mat2 P1List::lift_to_sl2z(size_t i) const {
  const long L = level_;
  auto [c, d] = points_[i];
  long cc = c == 0 ? L : c;
  long dd = d;
  while (std::gcd(cc, dd) != 1) dd += L;
  long x, y;
  ext_gcd(dd, cc, x, y);  // dd x + cc y = 1
  // (a b; cc dd) with a dd - b cc = 1: a = x, b = -y.
  return {x, -y, cc, dd};
}

// ---------------------------------------------------------------------------
// Modular symbols

ModSymSpace::ModSymSpace(long level, long weight, int sign) : level_(level), weight_(weight), sign_(sign), p1_(level) {
  if (weight < 2 || weight % 2 != 0) throw UnsupportedWeight("weight must be even and at least 2, got " + std::to_string(weight));
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
  if (!is_squarefree(level)) throw InvalidArgument("level must be squarefree");
  for (long d = 1; d <= level; ++d)
    if (level % d == 0) cusp_divisors_.push_back(d);
  build_relations();
}

namespace {

// Union-find over generators where each element equals +-1 times its parent.
struct SignedUnionFind {
  std::vector<size_t> parent;
  std::vector<int> sign;   // element = sign * parent
  std::vector<bool> zero;  // valid at roots

  explicit SignedUnionFind(size_t n) : parent(n), sign(n, 1), zero(n, false) {
    std::iota(parent.begin(), parent.end(), size_t{0});
  }

  std::pair<size_t, int> find(size_t x) {
    int s = 1;
    size_t r = x;
    while (parent[r] != r) {
      s *= sign[r];
      r = parent[r];
    }
    // Path compression.
    size_t cur = x;
    int cs = s;
    while (parent[cur] != cur) {
      size_t next = parent[cur];
      int ns = cs * sign[cur];
      parent[cur] = r;
      sign[cur] = cs;
      cur = next;
      cs = ns;
    }
    return {r, s};
  }

  // Impose x = eps * y.
  void relate(size_t x, size_t y, int eps) {
    auto [rx, a] = find(x);
    auto [ry, b] = find(y);
    if (rx == ry) {
      if (a != eps * b) zero[rx] = true;
      return;
    }
    // a rx = eps b ry
    parent[rx] = ry;
    sign[rx] = a * eps * b;
    zero[ry] = zero[ry] || zero[rx];
  }
};

}  // namespace

void ModSymSpace::build_relations() {
  const long w = weight_ - 2;
  const size_t G = num_generators();
  const size_t np = p1_.size();
  SignedUnionFind uf(G);

  for (size_t pt = 0; pt < np; ++pt) {
    auto [u, v] = p1_[pt];
    long s_pt = p1_.index(v, -u);
    long i_pt = p1_.index(-u, v);
    for (long i = 0; i <= w; ++i) {
      size_t g = generator(i, pt);
      int parity = (i % 2 == 0) ? 1 : -1;
      // x + x S = 0, x S = (-1)^i [X^{w-i} Y^i, (v, -u)].
      uf.relate(g, generator(w - i, static_cast<size_t>(s_pt)), -parity);
      // x = sign * x I, x I = (-1)^i [X^i Y^{w-i}, (-u, v)].
      uf.relate(g, generator(i, static_cast<size_t>(i_pt)), sign_ * parity);
    }
  }

  // Representatives of the surviving classes.
  std::vector<long> rep_index(G, -1);
  std::vector<size_t> reps;
  std::vector<std::pair<long, int>> gen_rep(G);  // (rep position or -1, sign)
  for (size_t g = 0; g < G; ++g) {
    auto [r, s] = uf.find(g);
    if (uf.zero[r]) {
      gen_rep[g] = {-1, 0};
      continue;
    }
    if (rep_index[r] < 0) {
      rep_index[r] = static_cast<long>(reps.size());
      reps.push_back(r);
    }
    gen_rep[g] = {rep_index[r], s};
  }
  const size_t nreps = reps.size();

  // Three-term relations x + x T + x T^2 = 0.
  const Mat2 T{0, -1, 1, -1};
  const Mat2 T2{-1, 1, -1, 0};
  std::vector<std::vector<Rational>> rows;
  for (size_t pt = 0; pt < np; ++pt) {
    auto [u, v] = p1_[pt];
    long t_pt = p1_.index(v, -u - v);
    long t2_pt = p1_.index(-u - v, u);
    for (long i = 0; i <= w; ++i) {
      std::vector<Rational> row(nreps);
      bool nonzero = false;
      auto add = [&](size_t g, const Integer& c) {
        if (c == 0) return;
        auto [pos, s] = gen_rep[g];
        if (pos < 0) return;
        row[pos] += c * s;
        nonzero = true;
      };
      add(generator(i, pt), Integer(1));
      HomPoly t1 = act_on_monomial(i, w, T);
      HomPoly t2 = act_on_monomial(i, w, T2);
      for (long j = 0; j <= w; ++j) {
        add(generator(j, static_cast<size_t>(t_pt)), t1[j]);
        add(generator(j, static_cast<size_t>(t2_pt)), t2[j]);
      }
      if (nonzero && std::any_of(row.begin(), row.end(), [](const Rational& x) { return x != 0; }))
        rows.push_back(std::move(row));
    }
  }

  QMatrix rel(rows.size(), nreps);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < nreps; ++c) rel(r, c) = rows[r][c];
  std::vector<size_t> pivots = rel.rref();

  std::vector<long> pivot_row(nreps, -1);
  for (size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<long>(r);
  std::vector<long> free_pos(nreps, -1);
  basis_generators_.clear();
  for (size_t c = 0; c < nreps; ++c) {
    if (pivot_row[c] < 0) {
      free_pos[c] = static_cast<long>(basis_generators_.size());
      basis_generators_.push_back(reps[c]);
    }
  }

  // Each representative in terms of the free ones.
  std::vector<SparseRow> rep_expr(nreps);
  for (size_t c = 0; c < nreps; ++c) {
    if (free_pos[c] >= 0) {
      rep_expr[c].push_back({static_cast<uint32_t>(free_pos[c]), Rational(1)});
      continue;
    }
    long r = pivot_row[c];
    for (size_t f = 0; f < nreps; ++f) {
      if (free_pos[f] < 0) continue;
      const Rational& x = rel(static_cast<size_t>(r), f);
      if (x != 0) rep_expr[c].push_back({static_cast<uint32_t>(free_pos[f]), -x});
    }
  }

  reductions_.assign(G, {});
  for (size_t g = 0; g < G; ++g) {
    auto [pos, s] = gen_rep[g];
    if (pos < 0) continue;
    SparseRow row = rep_expr[pos];
    if (s < 0)
      for (auto& e : row) e.second = -e.second;
    reductions_[g] = std::move(row);
  }
}

std::vector<Rational> ModSymSpace::reduce_free(const std::vector<Integer>& free_vector) const {
  std::vector<Rational> out(dimension());
  for (size_t g = 0; g < free_vector.size(); ++g) {
    if (free_vector[g] == 0) continue;
    for (const auto& [j, c] : reductions_[g]) out[j] += c * free_vector[g];
  }
  return out;
}

std::vector<Rational> ModSymSpace::reduce_free(const std::vector<Rational>& free_vector) const {
  std::vector<Rational> out(dimension());
  for (size_t g = 0; g < free_vector.size(); ++g) {
    if (free_vector[g] == 0) continue;
    for (const auto& [j, c] : reductions_[g]) out[j] += c * free_vector[g];
  }
  return out;
}

std::vector<Integer> ModSymSpace::heilbronn_image(size_t g, long ell) const {
  if (level_ % ell == 0) throw InvalidArgument("Heilbronn operator needs ell coprime to the level");
  const long w = weight_ - 2;
  const long i = generator_exponent(g);
  auto [u, v] = p1_[generator_point(g)];
  std::vector<Integer> out(num_generators());
  for (const Mat2& h : heilbronn_cremona(ell)) {
    long pt = p1_.index(u * h.a + v * h.c, u * h.b + v * h.d);
    if (pt < 0) throw InternalError("Heilbronn matrix moved a point off P^1");
    HomPoly coeffs = act_on_monomial(i, w, h);
    for (long j = 0; j <= w; ++j)
      if (coeffs[j] != 0) out[generator(j, static_cast<size_t>(pt))] += coeffs[j];
  }
  return out;
}

QMatrix ModSymSpace::hecke_matrix(long ell) const {
  const size_t D = dimension();
  QMatrix out(D, D);
  for (size_t j = 0; j < D; ++j) {
    std::vector<Rational> col = reduce_free(heilbronn_image(basis_generators_[j], ell));
    for (size_t r = 0; r < D; ++r) out(r, j) = col[r];
  }
  return out;
}

QMatrix ModSymSpace::hecke_matrix_by_cosets(long ell) const {
  if (!is_prime(ell)) throw InvalidArgument("Hecke operators are indexed by primes here");
  std::vector<Mat2> mats;
  for (long r = 0; r < ell; ++r) mats.push_back({1, r, 0, ell});
  if (level_ % ell != 0) mats.push_back({ell, 0, 0, 1});
  return matrix_action(mats, *this);
}

void ModSymSpace::add_modular_symbol(const HomPoly& poly, Cusp alpha, Cusp beta, const Rational& scale,
                                     std::vector<Rational>& free_vector) const {
  // Q{0, x} as a sum over convergents of x.
  auto from_zero = [&](Cusp x, const Rational& s) {
    x = make_cusp(x.num, x.den);
    auto emit = [&](const Mat2& g) {
      long pt = p1_.index(g.c, g.d);
      if (pt < 0) throw InternalError("convergent matrix is not primitive mod the level");
      HomPoly q = act_on_poly(poly, g);
      for (size_t e = 0; e < q.size(); ++e)
        if (q[e] != 0) free_vector[generator(static_cast<long>(e), static_cast<size_t>(pt))] += s * q[e];
    };
    if (x.den == 0) {
      emit({1, 0, 0, 1});
      return;
    }
    if (x.num == 0) return;
    long pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
    emit({1, 0, 0, 1});  // j = -1
    long a = x.num, b = x.den;
    long j = 0;
    while (b != 0) {
      long aj = floor_div(a, b);
      long r = a - aj * b;
      long pj = aj * pm1 + pm2;
      long qj = aj * qm1 + qm2;
      long sgn = (j % 2 == 0) ? -1 : 1;  // (-1)^{j-1}
      emit({sgn * pj, pm1, sgn * qj, qm1});
      pm2 = pm1;
      qm2 = qm1;
      pm1 = pj;
      qm1 = qj;
      a = b;
      b = r;
      ++j;
    }
  };
  from_zero(beta, scale);
  from_zero(alpha, -scale);
}

QMatrix ModSymSpace::matrix_action(const std::vector<Mat2>& mats, const ModSymSpace& target) const {
  if (target.weight_ != weight_) throw InvalidArgument("weight mismatch in matrix_action");
  const long w = weight_ - 2;
  const size_t D = dimension();
  QMatrix out(target.dimension(), D);
  for (size_t j = 0; j < D; ++j) {
    size_t g = basis_generators_[j];
    long i = generator_exponent(g);
    Mat2 g0 = p1_.lift_to_sl2z(generator_point(g));
    std::vector<Rational> free(target.num_generators());
    for (const Mat2& m : mats) {
      Mat2 h = m * g0;
      HomPoly q = act_on_monomial(i, w, h.adjugate());
      target.add_modular_symbol(q, make_cusp(h.b, h.d), make_cusp(h.a, h.c), Rational(1), free);
    }
    std::vector<Rational> col = target.reduce_free(free);
    for (size_t r = 0; r < col.size(); ++r) out(r, j) = col[r];
  }
  return out;
}

QMatrix ModSymSpace::boundary_matrix() const {
  const long w = weight_ - 2;
  const long L = level_;
  const size_t D = dimension();
  QMatrix out(cusp_divisors_.size(), D);
  auto cusp_row = [&](long x) {
    long g = std::gcd(mod_long(x, L), L);
    if (g == 0) g = L;
    auto it = std::lower_bound(cusp_divisors_.begin(), cusp_divisors_.end(), g);
    return static_cast<size_t>(it - cusp_divisors_.begin());
  };
  for (size_t j = 0; j < D; ++j) {
    size_t g = basis_generators_[j];
    long i = generator_exponent(g);
    auto [u, v] = p1_[generator_point(g)];
    if (i == w) out(cusp_row(u), j) += 1;
    if (i == 0) out(cusp_row(v), j) -= 1;
  }
  return out;
}

QMatrix ModSymSpace::atkin_lehner_matrix(long q) const {
  const long L = level_;
  if (!is_prime(q) || L % q != 0) throw InvalidArgument("Atkin-Lehner prime must divide the level");
  const long M = L / q;
  long x, y;
  ext_gcd(q, M, x, y);  // q x + M y = 1
  // W = (q, b; L, q d) with q d - M b = 1.
  Mat2 W{q, -y, L, q * x};
  QMatrix m = matrix_action({W}, *this);
  const long w = weight_ - 2;
  Rational scale(Integer(1), ipow(q, static_cast<unsigned long>(w / 2)));
  return m.scaled(scale);
}

QMatrix ModSymSpace::up_matrix(long q) const {
  std::vector<Mat2> mats;
  for (long r = 0; r < q; ++r) mats.push_back({1, r, 0, q});
  return matrix_action(mats, *this);
}

QMatrix ModSymSpace::degeneracy_matrix(long q, bool scaled, const ModSymSpace& lower) const {
  if (lower.level() * q != level_) throw InvalidArgument("degeneracy target must have level L/q");
  Mat2 m = scaled ? Mat2{q, 0, 0, 1} : Mat2{1, 0, 0, 1};
  return matrix_action({m}, lower);
}

// ---------------------------------------------------------------------------

ModSymFamily build_space(long N, long p, long k) {
  if (N < 1) throw InvalidArgument("tame level must be positive");
  if (!is_prime(p)) throw InvalidArgument("p must be prime, got " + std::to_string(p));
  if (N % p == 0) throw InvalidArgument("p must not divide the tame level");
  if (k < 2 || k % 2 != 0) throw UnsupportedWeight("weight must be even and at least 2, got " + std::to_string(k));
  if (!is_squarefree(N)) throw InvalidArgument("tame level must be squarefree");
  const long L = N * p;
  ModSymFamily fam;
  fam.ambient = std::make_shared<const ModSymSpace>(L, k, 1);
  for (long q : prime_factors(L)) fam.lower[q] = std::make_shared<const ModSymSpace>(L / q, k, 1);
  return fam;
}

Subspace pnew_cuspidal_plus(const ModSymFamily& family) {
  const ModSymSpace& M = *family.ambient;
  QMatrix constraints = M.boundary_matrix();
  for (const auto& [q, lower] : family.lower) {
    constraints = constraints.vconcat(M.degeneracy_matrix(q, false, *lower));
    constraints = constraints.vconcat(M.degeneracy_matrix(q, true, *lower));
  }
  Subspace out;
  out.ambient = family.ambient;
  out.basis = constraints.kernel();
  out.tags = {"cuspidal", "new", "plus"};
  return out;
}

QMatrix hecke_matrix(const Subspace& sub, long ell) {
  const ModSymSpace& M = *sub.ambient;
  const size_t D = M.dimension();
  const size_t d = sub.dimension();
  // Apply T_ell to each basis vector of the subspace only.
  QMatrix image(D, d);
  if (M.level() % ell == 0) {
    QMatrix up = M.up_matrix(ell);
    image = up * sub.basis;
  } else {
    for (size_t j = 0; j < D; ++j) {
      bool used = false;
      for (size_t c = 0; c < d; ++c)
        if (sub.basis(j, c) != 0) used = true;
      if (!used) continue;
      std::vector<Rational> col = M.reduce_free(M.heilbronn_image(M.basis_generators()[j], ell));
      for (size_t c = 0; c < d; ++c) {
        const Rational& coef = sub.basis(j, c);
        if (coef == 0) continue;
        for (size_t r = 0; r < D; ++r) image(r, c) += coef * col[r];
      }
    }
  }
  return SubspaceBasis(sub.basis).coordinates_of_columns(image);
}

QMatrix atkin_lehner_matrix(const Subspace& sub, long p) {
  QMatrix w = sub.ambient->atkin_lehner_matrix(p);
  return SubspaceBasis(sub.basis).restrict(w);
}

}  // namespace heckecong
