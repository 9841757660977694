#pragma once

#include "heckecong/arith.hpp"
#include "heckecong/linalg.hpp"
#include "heckecong/modsym.hpp"
#include "heckecong/padic.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace heckecong {

class MatrixCache;

// One p-new eigenform: Atkin-Lehner sign, exact a_p, and a_ell mod p^M.
struct Eigensystem {
  long N = 1;
  long p = 0;
  long k = 0;
  int index = 0;
  int eps = 1;
  Integer ap;
  std::map<long, Integer> aell;  // residues in [0, p^M)
  long precision = 0;
};

// Exact data for the p-new cuspidal plus subspace.
class NewSpace {
 public:
  NewSpace(long N, long p, long k, MatrixCache* cache = nullptr);

  long N() const { return N_; }
  long p() const { return p_; }
  long k() const { return k_; }
  const ModSymFamily& family() const { return family_; }
  const ModSymSpace& ambient() const { return *family_.ambient; }
  const Subspace& subspace() const { return sub_; }
  size_t dimension() const { return sub_.dimension(); }

  // Hecke-equivariant projection from ambient coordinates onto the subspace
  // (in its basis); dimension() x ambient().dimension().
  const QMatrix& projection() const { return projection_; }
  // Normalized w_p on the subspace basis.
  const QMatrix& atkin_lehner() const { return w_; }
  // T_ell (ell not dividing Np) on the subspace basis; memoized.
  const QMatrix& hecke(long ell) const;

 private:
  long N_, p_, k_;
  MatrixCache* cache_;
  ModSymFamily family_;
  Subspace sub_;
  QMatrix projection_;
  QMatrix w_;
  mutable std::map<long, QMatrix> hecke_;
};

// One Atkin-Lehner eigenspace inside a NewSpace.
struct SignSpace {
  const NewSpace* parent = nullptr;
  int eps = 1;
  QMatrix basis;       // in NewSpace coordinates, dimension() x d
  QMatrix projection;  // ambient coordinates -> sign-space coordinates
  Subspace subspace;   // the same space in ambient coordinates, tagged
  size_t dimension() const { return basis.cols(); }
  QMatrix hecke(long ell) const;
};

// (+1 eigenspace, -1 eigenspace) of w_p.
std::pair<SignSpace, SignSpace> al_split(const NewSpace& space);

struct EigenOptions {
  HenselOptions hensel;
  long max_single_prime = 50;  // separating operator search bound
  long extra_guard = 4;
};

struct EigenDiagnostics {
  std::string separating_operator;
  QPoly charpoly;
  long disc_valuation = 0;
  long working_precision = 0;
  int excluded_degree = 0;  // roots not in Z_p
};

// Eigensystems of a sign space, with a_ell mod p^M for every prime in
// `primes` not dividing Np. If the separating polynomial does not split
// over Z_p, the split part is still returned and the missing degree is
// reported through diagnostics (see eigensystems_strict).
std::vector<Eigensystem> eigensystems(const SignSpace& sign_space, const std::vector<long>& primes, long M,
                                      const EigenOptions& options = {}, EigenDiagnostics* diagnostics = nullptr);

// As above but throws AssumptionViolation when a block is excluded.
std::vector<Eigensystem> eigensystems_strict(const SignSpace& sign_space, const std::vector<long>& primes, long M,
                                             const EigenOptions& options = {});

// a_p = -eps p^{(k-2)/2}.
std::pair<Integer, int> ap_and_sign(const Eigensystem& e);
Integer ap_from_sign(long p, long k, int eps);

// Sort by eps, then by a_ell for increasing ell (residues ordered by their
// p-adic digits, lowest first), and number from 0.
void assign_labels(std::vector<Eigensystem>& systems);

// Full pipeline for one (N, p, k): both signs, labeled.
struct NewspaceRun {
  std::vector<Eigensystem> systems;
  std::map<int, EigenDiagnostics> diagnostics;  // by eps
  int excluded_degree = 0;
};
NewspaceRun compute_newspace(long N, long p, long k, long M, const std::vector<long>& primes,
                             MatrixCache* cache = nullptr, const EigenOptions& options = {});

// Primes ell <= cutoff with ell not dividing Np.
std::vector<long> good_primes(long N, long p, long cutoff);

}  // namespace heckecong
