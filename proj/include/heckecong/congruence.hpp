#pragma once

#include "heckecong/arith.hpp"
#include "heckecong/eigensolve.hpp"

#include <functional>
#include <string>
#include <vector>

namespace heckecong {

struct SturmData {
  long N = 1, p = 0, k = 0;
  long Nprime = 0;       // N p^2 prod_{q | Np} q
  Integer index;         // [SL2(Z) : Gamma0(N' p)]
  Rational bound_exact;  // k I / 12 - (I - 1) / (N' p)
  long bound = 0;        // floor of bound_exact
  std::vector<long> primes;  // ell <= bound, ell not dividing Np
};

SturmData sturm_bound(long N, long p, long k);

// Index of Gamma0(n) in SL2(Z).
Integer gamma0_index(long n);

// Congruence depth of two eigensystems: exact, or "at least M" when every
// compared difference vanishes mod p^M.
struct Depth {
  long value = 0;
  bool at_least = false;
  bool operator==(const Depth& o) const { return value == o.value && at_least == o.at_least; }
  // Usable as "depth >= n" for any n.
  bool reaches(long n) const { return value >= n; }
  std::string str() const;
};

Depth depth(const Eigensystem& a, const Eigensystem& b, const std::vector<long>& primes);

// Pairwise depths, indexed by position in `systems`.
std::vector<std::vector<Depth>> depth_matrix(const std::vector<Eigensystem>& systems, const std::vector<long>& primes);

struct PartitionRow {
  long depth = 0;                         // n: congruence mod p^n
  std::vector<std::vector<int>> classes;  // positions into systems
  bool all_distinct() const;
};

struct PartitionTable {
  long precision = 0;
  long max_resolved = 0;  // largest n examined
  bool fully_split = false;  // the last row is all singletons
  std::vector<PartitionRow> rows;
  std::vector<long> changepoints() const;
};

// Partition of positions 0..n-1 under "depth >= n".
std::vector<std::vector<int>> partition_at(const std::vector<std::vector<Depth>>& depths, long n);

PartitionTable changepoint_table(const std::vector<Eigensystem>& systems, const std::vector<long>& primes);
PartitionTable changepoint_table(const std::vector<std::vector<Depth>>& depths, long precision);

// Display: labels[i] names position i (vL values or form indices).
using LabelFn = std::function<std::string(int)>;
std::string table_markdown(const PartitionTable& table, const LabelFn& label, const std::string& header_label);
std::string table_csv(const PartitionTable& table, const LabelFn& label);

// Classes rendered as label strings, members and classes sorted so that two
// tables can be compared independent of ordering.
std::vector<std::vector<std::string>> canonical_classes(const PartitionRow& row, const LabelFn& label);

}  // namespace heckecong
