#pragma once

#include "heckecong/congruence.hpp"
#include "heckecong/eigensolve.hpp"
#include "heckecong/padic.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace heckecong {

struct LInvariantRecord {
  int index = 0;
  int eps = 1;
  long vL = 0;
  std::optional<PadicNumber> L;  // valuation, unit mantissa, relative precision
};

struct LInvariantFile {
  long N = 1, p = 0, k = 0;
  std::vector<LInvariantRecord> records;
};

// Text format, '#' starts a comment:
//   params N=<n> p=<p> k=<k>
//   <index> <eps> <vL> [<L_valuation> <L_mantissa> <L_precision>]
// Throws MalformedRecord with the offending line number.
LInvariantFile parse_linv(std::istream& in);
LInvariantFile read_linv_file(const std::string& path);
std::string format_linv(const LInvariantFile& file);

// Checks the records against computed eigensystems: same (N, p, k), one
// record per system index, matching signs. Returns records ordered like
// `systems`.
std::vector<LInvariantRecord> ingest_linv(const LInvariantFile& file, const std::vector<Eigensystem>& systems);

struct PartnerCheck {
  int form = 0;     // position
  long vL = 0;
  int partner = -1;  // position, -1 if none
  bool sign_ok = false;          // (i)
  std::optional<bool> sum_ok;    // (ii), only when both L values are present
  bool depth_ok = false;         // (iii)
  long required_depth = 0;
  Depth measured;
  bool unique = false;
  int candidates = 0;
};

struct VerificationReport {
  long C = 0;
  std::vector<PartnerCheck> checks;  // one per admissible form
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
  std::string str() const;
};

// `records` ordered like the depth matrix.
VerificationReport match_partners(const std::vector<LInvariantRecord>& records,
                                  const std::vector<std::vector<Depth>>& depths, long p, long k,
                                  std::optional<long> C_override = std::nullopt);

struct DoublingResult {
  bool pass = true;
  std::vector<long> odd_values;  // witnesses
};
DoublingResult an_doubling_check(const std::vector<long>& vLs, long p, long k,
                                 std::optional<long> C_override = std::nullopt);

// Pairs (f, g) with equal vL, opposite signs and depth >= -vL + 1, chosen by
// decreasing depth so every form is used once.
struct DeepPair {
  int f = 0, g = 0;
  long vL = 0;
  Depth depth;
  bool ambiguous = false;  // another equally deep choice existed
};
std::vector<DeepPair> deep_pairs(const std::vector<LInvariantRecord>& records,
                                 const std::vector<std::vector<Depth>>& depths);

struct CancellationEntry {
  long sum_valuation = 0;
  long vL = 0;
  bool above_minus_C = false;
};
// One entry per pair, ordered by decreasing vL. Throws InsufficientPrecision
// when a sum is unresolved and MalformedRecord when an L value is missing.
std::vector<CancellationEntry> cancellation_report(const std::vector<LInvariantRecord>& records,
                                                   const std::vector<DeepPair>& pairs, long p, long k,
                                                   std::optional<long> C_override = std::nullopt);
std::string format_cancellation(const std::vector<CancellationEntry>& entries);

}  // namespace heckecong
