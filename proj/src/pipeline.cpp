#include "heckecong/pipeline.hpp"

#include "heckecong/errors.hpp"
#include "heckecong/local_semistable.hpp"

namespace heckecong {

void validate(const RunConfig& c) {
  if (c.precision < 1) throw InvalidArgument("precision must be >= 1");
  if (c.cutoff < 2) throw InvalidArgument("prime cutoff must be >= 2");
  if (c.N < 1 || !is_prime(c.p) || c.N % c.p == 0) throw InvalidArgument("need a prime p and tame level N prime to p");
}

EigenArchive run_newspace(const RunConfig& config, MatrixCache* cache, const EigenOptions& options) {
  validate(config);
  EigenArchive a;
  a.N = config.N;
  a.p = config.p;
  a.k = config.k;
  a.precision = config.precision;
  a.sturm = config.sturm;
  a.cutoff = config.sturm ? sturm_bound(config.N, config.p, config.k).bound : config.cutoff;
  a.primes = good_primes(config.N, config.p, a.cutoff);
  NewspaceRun run = compute_newspace(config.N, config.p, config.k, config.precision, a.primes, cache, options);
  a.systems = std::move(run.systems);
  a.excluded_degree = run.excluded_degree;
  return a;
}

std::string Analysis::label(int position) const {
  if (has_records()) return std::to_string(records.at(position).vL);
  return std::to_string(position);
}

std::string Analysis::markdown() const {
  return table_markdown(table, [this](int i) { return label(i); }, has_records() ? "v_p(L)" : "forms");
}

Analysis analyze(const EigenArchive& archive, const LInvariantFile* linv, std::optional<long> C_override) {
  Analysis out;
  out.C_formula = archive.k > 2 ? c_constant(archive.p, archive.k) : 0;
  out.C = C_override.value_or(out.C_formula);
  out.depths = depth_matrix(archive.systems, archive.primes);
  out.table = changepoint_table(out.depths, archive.precision);
  if (linv == nullptr) return out;
  out.records = ingest_linv(*linv, archive.systems);
  out.report = match_partners(out.records, out.depths, archive.p, archive.k, out.C);
  std::vector<long> vls;
  for (const auto& r : out.records) vls.push_back(r.vL);
  out.doubling = an_doubling_check(vls, archive.p, archive.k, out.C);
  out.pairs = deep_pairs(out.records, out.depths);
  try {
    out.cancellation = cancellation_report(out.records, out.pairs, archive.p, archive.k, out.C);
  } catch (const MalformedRecord&) {
    out.cancellation_note = "no full L values for every deep pair";
  } catch (const InsufficientPrecision& e) {
    out.cancellation_note = e.what();
  }
  return out;
}

}  // namespace heckecong
