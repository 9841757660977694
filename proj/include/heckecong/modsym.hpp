#pragma once

#include "heckecong/arith.hpp"
#include "heckecong/linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace heckecong {

// Integer 2x2 matrix (a b; c d).
struct Mat2 {
  long a, b, c, d;
  long det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 adjugate() const { return {d, -b, -c, a}; }
};

// Heilbronn matrices of determinant ell (Cremona's list) for prime ell.
std::vector<Mat2> heilbronn_cremona(long ell);

// Homogeneous polynomial of degree w in X, Y; index = exponent of X.
using HomPoly = std::vector<Integer>;

// Coefficients of (aX + bY)^i (cX + dY)^(w - i).
HomPoly act_on_monomial(long i, long w, const Mat2& m);
// P(aX + bY, cX + dY) for a general homogeneous P.
HomPoly act_on_poly(const HomPoly& poly, const Mat2& m);

// Projective line over Z/L with canonical representatives: the
// lexicographically least pair in each unit orbit.
class P1List {
 public:
  explicit P1List(long level);
  long level() const { return level_; }
  size_t size() const { return points_.size(); }
  std::pair<long, long> operator[](size_t i) const { return points_[i]; }
  // Index of the point (c : d), or -1 when gcd(c, d, L) != 1.
  long index(long c, long d) const;
  Mat2 lift_to_sl2z(size_t i) const;

 private:
  long level_;
  std::vector<std::pair<long, long>> points_;
  std::vector<int32_t> table_;  // L*L lookup
};

// Cusps a/b with b >= 0; b == 0 encodes infinity.
struct Cusp {
  long num;
  long den;
  static Cusp infinity() { return {1, 0}; }
};

using SparseRow = std::vector<std::pair<uint32_t, Rational>>;

// Weight-k modular symbols for Gamma0(L) (trivial character) modulo the
// Manin-symbol relations and the star involution x = sign * x^*.
class ModSymSpace {
 public:
  ModSymSpace(long level, long weight, int sign = 1);

  long level() const { return level_; }
  long weight() const { return weight_; }
  int sign() const { return sign_; }
  const P1List& p1() const { return p1_; }
  long poly_degree() const { return weight_ - 2; }

  size_t num_generators() const { return static_cast<size_t>(weight_ - 1) * p1_.size(); }
  size_t generator(long i, size_t point) const { return point * static_cast<size_t>(weight_ - 1) + static_cast<size_t>(i); }
  long generator_exponent(size_t g) const { return static_cast<long>(g % static_cast<size_t>(weight_ - 1)); }
  size_t generator_point(size_t g) const { return g / static_cast<size_t>(weight_ - 1); }

  size_t dimension() const { return basis_generators_.size(); }
  const std::vector<size_t>& basis_generators() const { return basis_generators_; }

  // Image of a Manin generator in the quotient basis.
  const SparseRow& reduce(size_t g) const { return reductions_[g]; }
  std::vector<Rational> reduce_free(const std::vector<Integer>& free_vector) const;
  std::vector<Rational> reduce_free(const std::vector<Rational>& free_vector) const;

  // T_ell on the free module through Heilbronn matrices (dense, length G).
  std::vector<Integer> heilbronn_image(size_t g, long ell) const;
  QMatrix hecke_matrix(long ell) const;
  // Same operator through coset representatives and continued fractions.
  QMatrix hecke_matrix_by_cosets(long ell) const;

  // Free-module vector of the modular symbol P{alpha, beta}.
  void add_modular_symbol(const HomPoly& poly, Cusp alpha, Cusp beta, const Rational& scale,
                          std::vector<Rational>& free_vector) const;
  // Sum over mats of the left action m(x) from this space to `target`
  // (target level must make each m well defined). Returns target.dim x dim.
  QMatrix matrix_action(const std::vector<Mat2>& mats, const ModSymSpace& target) const;

  // Cusp classes of Gamma0(L) for squarefree L, indexed by gcd(c, L).
  const std::vector<long>& cusp_divisors() const { return cusp_divisors_; }
  QMatrix boundary_matrix() const;

  // Atkin-Lehner involution for a prime q || L, normalized by q^{-(k-2)/2}.
  QMatrix atkin_lehner_matrix(long q) const;
  QMatrix up_matrix(long q) const;  // U_q = sum_r (1 r; 0 q)
  // Degeneracy maps to level L/q: x -> x and x -> (q 0; 0 1) x.
  QMatrix degeneracy_matrix(long q, bool scaled, const ModSymSpace& lower) const;

 private:
  void build_relations();

  long level_;
  long weight_;
  int sign_;
  P1List p1_;
  std::vector<size_t> basis_generators_;
  std::vector<SparseRow> reductions_;
  std::vector<long> cusp_divisors_;
};

// Spaces used to test newness at each prime q | L.
struct ModSymFamily {
  std::shared_ptr<const ModSymSpace> ambient;
  std::map<long, std::shared_ptr<const ModSymSpace>> lower;  // q -> space at level L/q
};

// Validated constructor for the (tame level N, prime p, weight k) setting.
ModSymFamily build_space(long N, long p, long k);

// Subspace of an ambient ModSymSpace with descriptive tags.
struct Subspace {
  std::shared_ptr<const ModSymSpace> ambient;
  QMatrix basis;  // dim(ambient) x d
  std::set<std::string> tags;
  size_t dimension() const { return basis.cols(); }
};

// Cuspidal, star-plus subspace that is new at every prime dividing the level.
Subspace pnew_cuspidal_plus(const ModSymFamily& family);

// Matrix of T_ell on a Hecke-stable subspace (in its basis).
QMatrix hecke_matrix(const Subspace& sub, long ell);
// Normalized w_p on a p-new subspace.
QMatrix atkin_lehner_matrix(const Subspace& sub, long p);

}  // namespace heckecong
