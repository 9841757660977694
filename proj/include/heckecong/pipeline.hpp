#pragma once

#include "heckecong/archive.hpp"
#include "heckecong/cache.hpp"
#include "heckecong/congruence.hpp"
#include "heckecong/verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace heckecong {

struct RunConfig {
  long N = 1, p = 0, k = 0;
  long precision = 10;
  long cutoff = 300;
  bool sturm = false;  // use the full Sturm bound instead of the cutoff
};

void validate(const RunConfig& config);

// Builds the space, extracts eigensystems and packages them.
EigenArchive run_newspace(const RunConfig& config, MatrixCache* cache = nullptr,
                          const EigenOptions& options = {});

struct Analysis {
  long C_formula = 0;
  long C = 0;  // the constant actually used
  std::vector<std::vector<Depth>> depths;
  PartitionTable table;
  std::vector<LInvariantRecord> records;  // empty without L-invariant data
  std::optional<VerificationReport> report;
  std::optional<DoublingResult> doubling;
  std::vector<DeepPair> pairs;
  std::optional<std::vector<CancellationEntry>> cancellation;
  std::string cancellation_note;  // why cancellation is missing, if it is

  bool has_records() const { return !records.empty(); }
  // vL when records are joined, else the form index.
  std::string label(int position) const;
  std::string markdown() const;
};

Analysis analyze(const EigenArchive& archive, const LInvariantFile* linv = nullptr,
                 std::optional<long> C_override = std::nullopt);

}  // namespace heckecong
