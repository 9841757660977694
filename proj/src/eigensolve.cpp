#include "heckecong/eigensolve.hpp"

#include "heckecong/cache.hpp"
#include "heckecong/errors.hpp"

#include <algorithm>
#include <numeric>

namespace heckecong {

namespace {

bool all_p_integral(const QMatrix& m, long p) {
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c)
      if (m(r, c).get_den() % p == 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// NewSpace

NewSpace::NewSpace(long N, long p, long k, MatrixCache* cache)
    : N_(N), p_(p), k_(k), cache_(cache), family_(build_space(N, p, k)) {
  sub_.ambient = family_.ambient;
  sub_.tags = {"cuspidal", "new", "plus"};
  const size_t D = ambient().dimension();

  if (cache_) {
    auto basis = cache_->load({N, p, k, "newbasis", 0});
    auto proj = cache_->load({N, p, k, "newprojection", 0});
    auto w = cache_->load({N, p, k, "atkinlehner", p});
    if (basis && proj && w && basis->rows() == D && proj->cols() == D && proj->rows() == basis->cols() &&
        w->rows() == basis->cols()) {
      sub_.basis = *basis;
      projection_ = *proj;
      w_ = *w;
      return;
    }
  }

  sub_.basis = pnew_cuspidal_plus(family_).basis;
  const size_t d = sub_.dimension();

  if (d == 0) {
    projection_ = QMatrix(0, D);
    w_ = QMatrix(0, 0);
  } else {
    // A Hecke-stable complement: the image of rad(charpoly on V)(T) for a
    // T_ell whose eigenvalues on V do not occur elsewhere in the ambient.
    bool found = false;
    for (long ell : good_primes(N, p, 100)) {
      QMatrix T = ambient().hecke_matrix(ell);
      QMatrix tv = SubspaceBasis(sub_.basis).restrict(T);
      QPoly g = qpoly::radical(tv.charpoly());
      QMatrix complement = poly_eval(g, T).column_space();
      if (complement.cols() != D - d) continue;
      QMatrix full = sub_.basis.hconcat(complement);
      if (full.rank() != D) continue;
      QMatrix inv = full.inverse();
      std::vector<size_t> first(d);
      std::iota(first.begin(), first.end(), size_t{0});
      projection_ = inv.rows_subset(first);
      found = true;
      break;
    }
    if (!found) throw InternalError("no Hecke operator separates the new subspace from its complement");
    w_ = SubspaceBasis(sub_.basis).restrict(ambient().atkin_lehner_matrix(p));
  }
  if (cache_) {
    cache_->store({N, p, k, "newbasis", 0}, sub_.basis);
    cache_->store({N, p, k, "newprojection", 0}, projection_);
    cache_->store({N, p, k, "atkinlehner", p}, w_);
  }
}

const QMatrix& NewSpace::hecke(long ell) const {
  auto it = hecke_.find(ell);
  if (it != hecke_.end()) return it->second;
  if ((N_ * p_) % ell == 0) throw InvalidArgument("T_ell requested for ell dividing the level");
  CacheKey key{N_, p_, k_, "hecke", ell};
  std::optional<QMatrix> m;
  if (cache_) {
    m = cache_->load(key);
    if (m && (m->rows() != dimension() || m->cols() != dimension())) m.reset();
  }
  if (!m) {
    m = heckecong::hecke_matrix(sub_, ell);
    if (cache_) cache_->store(key, *m);
  }
  return hecke_.emplace(ell, std::move(*m)).first->second;
}

QMatrix SignSpace::hecke(long ell) const {
  if (dimension() == 0) return QMatrix(0, 0);
  return SubspaceBasis(basis).coordinates_of_columns(parent->hecke(ell) * basis);
}

std::pair<SignSpace, SignSpace> al_split(const NewSpace& space) {
  const size_t d = space.dimension();
  const QMatrix& w = space.atkin_lehner();
  auto make = [&](int eps) {
    SignSpace s;
    s.parent = &space;
    s.eps = eps;
    QMatrix shifted = w - QMatrix::identity(d).scaled(Rational(eps));
    s.basis = d == 0 ? QMatrix(0, 0) : shifted.kernel();
    if (d == 0 || s.basis.cols() == 0) {
      s.basis = QMatrix(d, 0);
      s.projection = QMatrix(0, space.ambient().dimension());
    } else {
      QMatrix half = (QMatrix::identity(d) + w.scaled(Rational(eps))).scaled(Rational(1, 2));
      s.projection = SubspaceBasis(s.basis).coordinates_of_columns(half * space.projection());
    }
    s.subspace.ambient = space.subspace().ambient;
    s.subspace.basis = space.subspace().basis * s.basis;
    s.subspace.tags = space.subspace().tags;
    s.subspace.tags.insert(eps > 0 ? "AL+1" : "AL-1");
    return s;
  };
  return {make(1), make(-1)};
}

// ---------------------------------------------------------------------------
// Residue arithmetic for the a_ell kernel.

namespace {

struct Ring64 {
  using Elem = uint64_t;
  uint64_t m;
  Elem from(const Integer& x) const { return mod(x, Integer(static_cast<unsigned long>(m))).get_ui(); }
  Elem from_long(long x) const {
    long r = x % static_cast<long>(m);
    return static_cast<Elem>(r < 0 ? r + static_cast<long>(m) : r);
  }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= m ? s - m : s;
  }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % m); }
  Integer to_integer(Elem a) const { return Integer(static_cast<unsigned long>(a)); }
};

struct RingMpz {
  using Elem = Integer;
  Integer m;
  Elem from(const Integer& x) const { return mod(x, m); }
  Elem from_long(long x) const { return mod(Integer(x), m); }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    if (s >= m) s -= m;
    return s;
  }
  Elem mul(const Elem& a, const Elem& b) const { return mod(a * b, m); }
  Integer to_integer(const Elem& a) const { return a; }
};

// Evaluates psi(T_ell x) for Manin generators x and several functionals psi
// on the free module, all reduced mod m.
template <class Ring>
class FunctionalKernel {
 public:
  using Elem = typename Ring::Elem;

  FunctionalKernel(const ModSymSpace& space, const Ring& ring) : space_(space), ring_(ring) {
    const long w = space.poly_degree();
    binom_.resize(static_cast<size_t>(w + 1));
    for (long j = 0; j <= w; ++j) {
      Integer b;
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(w), static_cast<unsigned long>(j));
      binom_[j] = ring_.from(b);
    }
  }

  // psi values weighted by binomials, laid out per P^1 point for the
  // extremal monomials.
  std::vector<Elem> weighted(const std::vector<Elem>& psi) const {
    std::vector<Elem> out(psi.size());
    for (size_t g = 0; g < psi.size(); ++g) out[g] = ring_.mul(psi[g], binom_[space_.generator_exponent(g)]);
    return out;
  }

  // sum over h of psi([X^i Y^{w-i} h, pt h]).
  Elem apply(const std::vector<Elem>& psi, const std::vector<Elem>& psi_weighted, size_t x,
             const std::vector<Mat2>& heilbronn) const {
    const long w = space_.poly_degree();
    const long i = space_.generator_exponent(x);
    auto [u, v] = space_.p1()[space_.generator_point(x)];
    Elem total = ring_.from_long(0);
    std::vector<Elem> pa(static_cast<size_t>(w + 1)), pb(static_cast<size_t>(w + 1));
    for (const Mat2& h : heilbronn) {
      long pt = space_.p1().index(u * h.a + v * h.c, u * h.b + v * h.d);
      size_t base = space_.generator(0, static_cast<size_t>(pt));
      if (i == 0 || i == w) {
        // (sX + tY)^w = sum_j binom(w, j) s^j t^{w-j} X^j Y^{w-j}
        long s = i == 0 ? h.c : h.a;
        long t = i == 0 ? h.d : h.b;
        Elem es = ring_.from_long(s), et = ring_.from_long(t);
        pa[0] = ring_.from_long(1);
        pb[0] = ring_.from_long(1);
        for (long j = 1; j <= w; ++j) {
          pa[j] = ring_.mul(pa[j - 1], es);
          pb[j] = ring_.mul(pb[j - 1], et);
        }
        for (long j = 0; j <= w; ++j)
          total = ring_.add(total, ring_.mul(psi_weighted[base + j], ring_.mul(pa[j], pb[w - j])));
      } else {
        HomPoly coeffs = act_on_monomial(i, w, h);
        for (long j = 0; j <= w; ++j) total = ring_.add(total, ring_.mul(psi[base + j], ring_.from(coeffs[j])));
      }
    }
    return total;
  }

  const Ring& ring() const { return ring_; }

 private:
  const ModSymSpace& space_;
  Ring ring_;
  std::vector<Elem> binom_;
};

struct FormData {
  std::vector<Integer> psi;  // functional on generators mod p^M
  size_t anchor = 0;         // generator with unit psi value
};

template <class Ring>
std::vector<std::map<long, Integer>> evaluate_aell(const ModSymSpace& space, const Ring& ring, const Integer& modulus,
                                                   const std::vector<FormData>& forms, const std::vector<long>& primes) {
  FunctionalKernel<Ring> kernel(space, ring);
  std::vector<std::vector<typename Ring::Elem>> psi(forms.size()), psiw(forms.size());
  std::vector<typename Ring::Elem> inv_anchor(forms.size());
  for (size_t f = 0; f < forms.size(); ++f) {
    for (const auto& x : forms[f].psi) psi[f].push_back(ring.from(x));
    psiw[f] = kernel.weighted(psi[f]);
    inv_anchor[f] = ring.from(inverse_mod(forms[f].psi[forms[f].anchor], modulus));
  }
  std::vector<std::map<long, Integer>> out(forms.size());
  for (long ell : primes) {
    std::vector<Mat2> h = heilbronn_cremona(ell);
    for (size_t f = 0; f < forms.size(); ++f) {
      auto value = kernel.apply(psi[f], psiw[f], forms[f].anchor, h);
      out[f][ell] = ring.to_integer(ring.mul(value, inv_anchor[f]));
    }
  }
  return out;
}

// Z_(p)-basis of the span of the given columns (lower triangular).
QMatrix lattice_basis(const QMatrix& gens, long p) {
  const size_t d = gens.rows();
  std::vector<std::vector<Rational>> cols;
  for (size_t c = 0; c < gens.cols(); ++c) {
    std::vector<Rational> col = gens.column(c);
    if (std::any_of(col.begin(), col.end(), [](const Rational& x) { return x != 0; })) cols.push_back(std::move(col));
  }
  QMatrix basis(d, d);
  for (size_t r = 0; r < d; ++r) {
    long best = -1;
    long best_val = kInfiniteValuation;
    for (size_t c = 0; c < cols.size(); ++c) {
      if (cols[c][r] == 0) continue;
      long v = vp(cols[c][r], p);
      if (v < best_val) {
        best_val = v;
        best = static_cast<long>(c);
      }
    }
    if (best < 0) throw InternalError("generators do not span the sign space");
    std::vector<Rational> pivot = cols[best];
    cols.erase(cols.begin() + best);
    for (auto& col : cols) {
      if (col[r] == 0) continue;
      Rational f = col[r] / pivot[r];
      for (size_t i = r; i < d; ++i) col[i] -= f * pivot[i];
    }
    cols.erase(std::remove_if(cols.begin(), cols.end(),
                              [](const std::vector<Rational>& col) {
                                return std::all_of(col.begin(), col.end(), [](const Rational& x) { return x == 0; });
                              }),
               cols.end());
    for (size_t i = 0; i < d; ++i) basis(i, r) = pivot[i];
  }
  return basis;
}

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix reduce_matrix(const QMatrix& a, const Integer& m) {
  IntMatrix out(a.rows(), std::vector<Integer>(a.cols()));
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out[r][c] = rational_mod(a(r, c), m);
  return out;
}

IntMatrix mat_mul_mod(const IntMatrix& a, const IntMatrix& b, const Integer& m) {
  size_t n = a.size(), k = b.size(), cols = b.empty() ? 0 : b[0].size();
  IntMatrix out(n, std::vector<Integer>(cols));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (size_t c = 0; c < cols; ++c) out[i][c] += a[i][j] * b[j][c];
    }
    for (auto& x : out[i]) x = mod(x, m);
  }
  return out;
}

// f(x) / (x - lambda) mod m for monic f with f(lambda) = 0 mod m.
std::vector<Integer> deflate(const IntPoly& f, const Integer& lambda, const Integer& m) {
  const long n = f.degree();
  std::vector<Integer> q(static_cast<size_t>(n));
  q[n - 1] = 1;
  for (long j = n - 1; j >= 1; --j) q[j - 1] = mod(f[j] + lambda * q[j], m);
  return q;
}

IntMatrix poly_eval_mod(const std::vector<Integer>& q, const IntMatrix& a, const Integer& m) {
  const size_t d = a.size();
  IntMatrix acc(d, std::vector<Integer>(d));
  for (size_t j = q.size(); j-- > 0;) {
    acc = mat_mul_mod(acc, a, m);
    for (size_t i = 0; i < d; ++i) acc[i][i] = mod(acc[i][i] + q[j], m);
  }
  return acc;
}

struct Candidate {
  std::string name;
  QMatrix lattice_matrix;
  QPoly charpoly;
};

}  // namespace

// ---------------------------------------------------------------------------

Integer ap_from_sign(long p, long k, int eps) {
  Integer pw = ipow(p, static_cast<unsigned long>((k - 2) / 2));
  return eps > 0 ? Integer(-pw) : pw;
}

std::pair<Integer, int> ap_and_sign(const Eigensystem& e) { return {ap_from_sign(e.p, e.k, e.eps), e.eps}; }

std::vector<long> good_primes(long N, long p, long cutoff) {
  std::vector<long> out;
  for (long ell : primes_up_to(cutoff))
    if ((N * p) % ell != 0) out.push_back(ell);
  return out;
}

std::vector<Eigensystem> eigensystems(const SignSpace& sign_space, const std::vector<long>& primes, long M,
                                      const EigenOptions& options, EigenDiagnostics* diagnostics) {
  if (M < 1) throw InvalidArgument("precision M must be at least 1");
  const NewSpace& ns = *sign_space.parent;
  const long N = ns.N(), p = ns.p(), k = ns.k();
  for (long ell : primes)
    if ((N * p) % ell == 0 || !is_prime(ell)) throw InvalidArgument("a_ell requested for ell = " + std::to_string(ell));
  const size_t d = sign_space.dimension();
  EigenDiagnostics local;
  EigenDiagnostics& diag = diagnostics ? *diagnostics : local;
  diag = EigenDiagnostics{};
  if (d == 0) return {};

  const ModSymSpace& space = ns.ambient();
  const size_t G = space.num_generators();

  // Images of all Manin generators in sign-space coordinates.
  QMatrix gens(d, G);
  const QMatrix& proj = sign_space.projection;
  for (size_t g = 0; g < G; ++g)
    for (const auto& [j, c] : space.reduce(g))
      for (size_t r = 0; r < d; ++r)
        if (proj(r, j) != 0) gens(r, g) += c * proj(r, j);

  QMatrix B = lattice_basis(gens, p);
  QMatrix Binv = B.inverse();
  QMatrix pint = Binv * gens;
  if (!all_p_integral(pint, p)) throw InternalError("generator coordinates are not p-integral");

  auto lattice_hecke = [&](long ell) { return Binv * sign_space.hecke(ell) * B; };

  // Separating operator.
  std::vector<long> single = good_primes(N, p, options.max_single_prime);
  std::optional<Candidate> chosen;
  std::map<long, QMatrix> cache;
  auto get = [&](long ell) -> const QMatrix& {
    auto it = cache.find(ell);
    if (it == cache.end()) it = cache.emplace(ell, lattice_hecke(ell)).first;
    return it->second;
  };
  for (long ell : single) {
    QPoly f = get(ell).charpoly();
    if (qpoly::is_squarefree(f)) {
      chosen = Candidate{"T_" + std::to_string(ell), get(ell), f};
      break;
    }
  }
  for (size_t a = 0; !chosen && a < single.size(); ++a) {
    for (size_t b = a + 1; !chosen && b < single.size(); ++b) {
      for (long c = 1; c <= 3 && !chosen; ++c) {
        QMatrix m = get(single[a]) + get(single[b]).scaled(Rational(c));
        QPoly f = m.charpoly();
        if (qpoly::is_squarefree(f))
          chosen = Candidate{"T_" + std::to_string(single[a]) + " + " + std::to_string(c) + "*T_" +
                                 std::to_string(single[b]),
                             m, f};
      }
    }
  }
  if (!chosen) throw InternalError("no separating Hecke operator found");
  if (!all_p_integral(chosen->lattice_matrix, p)) throw InternalError("Hecke matrix on the lattice is not p-integral");

  IntPoly phi = IntPoly::from_rational_monic(chosen->charpoly);
  const long disc_val = vp(phi.discriminant(), p);
  diag.separating_operator = chosen->name;
  diag.charpoly = chosen->charpoly;
  diag.disc_valuation = disc_val;

  const Integer pM = ipow(p, static_cast<unsigned long>(M));
  long extra = options.extra_guard;
  std::vector<FormData> forms;
  std::vector<Integer> roots;
  while (true) {
    const long W = M + disc_val + extra;
    diag.working_precision = W;
    const Integer pW = ipow(p, static_cast<unsigned long>(W));
    roots = hensel_roots(phi, p, W, options.hensel);
    IntMatrix A = reduce_matrix(chosen->lattice_matrix, pW);
    IntMatrix P = reduce_matrix(pint, pW);
    forms.clear();
    bool enough = true;
    for (const Integer& lambda : roots) {
      IntMatrix F = poly_eval_mod(deflate(phi, lambda, pW), A, pW);
      long best = kInfiniteValuation;
      size_t br = 0, bc = 0;
      for (size_t r = 0; r < d; ++r)
        for (size_t c = 0; c < d; ++c) {
          long v = F[r][c] == 0 ? kInfiniteValuation : vp(F[r][c], p);
          if (v < best) {
            best = v;
            br = r;
            bc = c;
          }
        }
      if (best == kInfiniteValuation || W - best < M) {
        enough = false;
        break;
      }
      // Left eigenvector: row br scaled so that entry bc is 1, valid mod p^{W-best}.
      Integer scale = ipow(p, static_cast<unsigned long>(best));
      Integer inv = inverse_mod(F[br][bc] / scale, pM);
      std::vector<Integer> u(d);
      for (size_t c = 0; c < d; ++c) u[c] = mod((F[br][c] / scale) * inv, pM);
      FormData fd;
      fd.psi.assign(G, Integer(0));
      for (size_t g = 0; g < G; ++g) {
        Integer s = 0;
        for (size_t c = 0; c < d; ++c)
          if (u[c] != 0) s += u[c] * P[c][g];
        fd.psi[g] = mod(s, pM);
      }
      // Anchor: prefer extremal monomials, which take the fast path.
      const long w = space.poly_degree();
      bool have = false;
      for (int pass = 0; pass < 2 && !have; ++pass) {
        for (size_t g = 0; g < G; ++g) {
          long i = space.generator_exponent(g);
          bool extremal = i == 0 || i == w;
          if ((pass == 0) != extremal) continue;
          if (fd.psi[g] % p != 0) {
            fd.anchor = g;
            have = true;
            break;
          }
        }
      }
      if (!have) throw InternalError("eigen-functional vanishes mod p on every generator");
      forms.push_back(std::move(fd));
    }
    if (enough) break;
    extra *= 2;
    if (extra > options.hensel.guard_ceiling) throw PrecisionExhausted("eigenvector precision below target");
  }
  diag.excluded_degree = static_cast<int>(phi.degree()) - static_cast<int>(roots.size());

  std::vector<std::map<long, Integer>> values;
  if (pM < Integer(1) << 62) {
    values = evaluate_aell(space, Ring64{pM.get_ui()}, pM, forms, primes);
  } else {
    values = evaluate_aell(space, RingMpz{pM}, pM, forms, primes);
  }

  std::vector<Eigensystem> out;
  for (size_t f = 0; f < forms.size(); ++f) {
    Eigensystem e;
    e.N = N;
    e.p = p;
    e.k = k;
    e.eps = sign_space.eps;
    e.ap = ap_from_sign(p, k, e.eps);
    e.aell = std::move(values[f]);
    e.precision = M;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Eigensystem> eigensystems_strict(const SignSpace& sign_space, const std::vector<long>& primes, long M,
                                             const EigenOptions& options) {
  EigenDiagnostics diag;
  auto out = eigensystems(sign_space, primes, M, options, &diag);
  if (diag.excluded_degree > 0)
    throw AssumptionViolation(diag.excluded_degree,
                              "characteristic polynomial of " + diag.separating_operator + " has " +
                                  std::to_string(diag.excluded_degree) + " roots outside Z_p");
  return out;
}

void assign_labels(std::vector<Eigensystem>& systems) {
  // Residues are compared p-adic digit by digit starting from the lowest, so
  // forms congruent mod p^n stay adjacent and the order does not depend on M.
  auto digit_less = [](const Integer& x, const Integer& y, long p) {
    Integer diff = x - y;
    long v = vp(diff, p);
    Integer scale = ipow(p, static_cast<unsigned long>(v));
    Integer px = Integer(x / scale) % p, py = Integer(y / scale) % p;
    return px < py;
  };
  std::stable_sort(systems.begin(), systems.end(), [&](const Eigensystem& a, const Eigensystem& b) {
    if (a.eps != b.eps) return a.eps < b.eps;
    for (const auto& [ell, x] : a.aell) {
      auto it = b.aell.find(ell);
      if (it == b.aell.end()) continue;
      if (x != it->second) return digit_less(x, it->second, a.p);
    }
    return false;
  });
  for (size_t i = 0; i < systems.size(); ++i) systems[i].index = static_cast<int>(i);
}

NewspaceRun compute_newspace(long N, long p, long k, long M, const std::vector<long>& primes, MatrixCache* cache,
                             const EigenOptions& options) {
  NewSpace ns(N, p, k, cache);
  auto [plus, minus] = al_split(ns);
  NewspaceRun run;
  for (const SignSpace* s : {&minus, &plus}) {
    EigenDiagnostics diag;
    auto systems = eigensystems(*s, primes, M, options, &diag);
    run.excluded_degree += diag.excluded_degree;
    run.diagnostics[s->eps] = diag;
    for (auto& e : systems) run.systems.push_back(std::move(e));
  }
  assign_labels(run.systems);
  return run;
}

}  // namespace heckecong
