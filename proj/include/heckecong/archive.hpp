#pragma once

#include "heckecong/eigensolve.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace heckecong {

inline constexpr int kArchiveVersion = 1;

// Eigensystems of one (N, p, k) together with the run parameters that
// produced them.
struct EigenArchive {
  long N = 1, p = 0, k = 0;
  long precision = 0;
  long cutoff = 0;      // largest ell requested (Sturm bound for proof-grade runs)
  bool sturm = false;
  std::vector<long> primes;
  std::vector<Eigensystem> systems;
  int excluded_degree = 0;
};

// Line-oriented text:
//   heckecong-archive <version>
//   space N <N> p <p> k <k> precision <M> cutoff <c> sturm <0|1> excluded <d>
//   primes <ell> ...
//   form <index> eps <eps> ap <a_p> aell <a_ell> ...   (one value per prime)
void write_archive(std::ostream& out, const EigenArchive& archive);
EigenArchive read_archive(std::istream& in);
void write_archive_file(const std::string& path, const EigenArchive& archive);
EigenArchive read_archive_file(const std::string& path);

}  // namespace heckecong
