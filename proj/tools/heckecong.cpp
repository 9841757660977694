// Command-line front end: compute eigensystems, print depth tables, audit
// L-invariant data.

#include "CLI11.hpp"
#include "heckecong/errors.hpp"
#include "heckecong/local_semistable.hpp"
#include "heckecong/pipeline.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace heckecong;

namespace {

constexpr int kExitError = 1;
constexpr int kExitExcluded = 2;
constexpr int kExitVerifyFail = 3;

struct Options {
  RunConfig run;
  std::string cache_dir;
  std::string archive;
  std::string linv;
  std::string out;
  std::string format = "markdown";
  std::optional<long> C_override;
};

void add_space_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--N", o.run.N, "tame level (squarefree, prime to p)")->capture_default_str();
  cmd->add_option("--p", o.run.p, "the prime p");
  cmd->add_option("--k", o.run.k, "even weight >= 2");
  cmd->add_option("--precision,-M", o.run.precision, "p-adic precision M")->capture_default_str();
  cmd->add_option("--lmax", o.run.cutoff, "largest prime ell compared")->capture_default_str();
  cmd->add_flag("--sturm", o.run.sturm, "compare up to the full Sturm bound");
  cmd->add_option("--cache", o.cache_dir, "matrix cache directory (default $HECKECONG_CACHE)");
}

std::unique_ptr<MatrixCache> open_cache(const Options& o) {
  if (!o.cache_dir.empty()) return std::make_unique<MatrixCache>(o.cache_dir);
  if (auto env = MatrixCache::root_from_env()) return std::make_unique<MatrixCache>(*env);
  return nullptr;
}

// An archive from --archive, or a fresh computation from the space options.
EigenArchive load_or_compute(const Options& o, int& status) {
  if (!o.archive.empty()) return read_archive_file(o.archive);
  if (o.run.p == 0 || o.run.k == 0) throw InvalidArgument("give --archive or --p and --k");
  auto cache = open_cache(o);
  EigenArchive a = run_newspace(o.run, cache.get());
  if (a.excluded_degree > 0) {
    std::cerr << "note: " << a.excluded_degree
              << " eigensystems excluded: their Hecke field has a prime above p of degree > 1,"
                 " so they have no reduction over Z/p^M\n";
    status = std::max(status, kExitExcluded);
  }
  return a;
}

std::optional<LInvariantFile> load_linv(const Options& o) {
  if (o.linv.empty()) return std::nullopt;
  return read_linv_file(o.linv);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::trunc);
  if (!f) throw InvalidArgument("cannot write " + o.out);
  f << text;
}

std::string header(const EigenArchive& a) {
  std::ostringstream os;
  os << "N=" << a.N << " p=" << a.p << " k=" << a.k << " M=" << a.precision << " forms=" << a.systems.size()
     << " primes<=" << a.cutoff << (a.sturm ? " (Sturm bound)" : "") << "\n";
  return os.str();
}

std::string constant_line(const Analysis& an) {
  std::ostringstream os;
  os << "C_{p,k} = " << an.C_formula;
  if (an.C != an.C_formula) os << " (override in use: " << an.C << ")";
  os << "\n";
  return os.str();
}

std::string table_text(const Analysis& an, const Options& o) {
  if (o.format == "csv") return table_csv(an.table, [&](int i) { return an.label(i); });
  return an.markdown();
}

std::string verify_text(const Analysis& an) {
  std::ostringstream os;
  os << constant_line(an) << an.report->str();
  os << "doubling of admissible valuations: " << (an.doubling->pass ? "pass" : "FAIL");
  for (long v : an.doubling->odd_values) os << " " << v;
  os << "\n";
  return os.str();
}

std::string cancellation_text(const Analysis& an) {
  if (!an.cancellation) return "cancellation: unavailable (" + an.cancellation_note + ")\n";
  std::ostringstream os;
  os << "[v_p(L_f + L_g), v_p(L_f)]: " << format_cancellation(*an.cancellation) << "\n";
  bool all = true;
  for (const auto& e : *an.cancellation) all = all && e.above_minus_C;
  os << "every sum valuation > -C: " << (all ? "yes" : "NO") << "\n";
  return os.str();
}

std::optional<PadicNumber> parse_padic(const std::string& text, long p) {
  if (text.empty()) return std::nullopt;
  // valuation:mantissa:precision
  std::istringstream in(text);
  long v, prec;
  std::string mant;
  char c1;
  if (!(in >> v >> c1) || c1 != ':' || !std::getline(in, mant, ':') || !(in >> prec)) {
    throw InvalidArgument("expected valuation:mantissa:precision, got " + text);
  }
  return PadicNumber::from_parts(p, v, Integer(mant), prec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruences between p-new Hecke eigensystems"};
  app.require_subcommand(1);
  Options o;
  int status = 0;

  auto* newspace = app.add_subcommand("newspace", "compute eigensystems and write an archive");
  add_space_options(newspace, o);
  newspace->add_option("--out,-o", o.out, "archive path (default stdout)");

  auto* table = app.add_subcommand("depth-table", "congruence depth changepoint table");
  add_space_options(table, o);
  table->add_option("--archive", o.archive, "archive written by newspace");
  table->add_option("--linv", o.linv, "L-invariant records used as class labels");
  table->add_option("--format", o.format, "markdown or csv")->check(CLI::IsMember({"markdown", "csv"}));
  table->add_option("--out,-o", o.out);

  auto* verify = app.add_subcommand("verify", "audit partners of admissible forms");
  add_space_options(verify, o);
  verify->add_option("--archive", o.archive);
  verify->add_option("--linv", o.linv)->required();
  verify->add_option("--C", o.C_override, "override C_{p,k}");
  verify->add_option("--out,-o", o.out);

  auto* cancel = app.add_subcommand("cancellation", "valuations of L_f + L_g over deep pairs");
  add_space_options(cancel, o);
  cancel->add_option("--archive", o.archive);
  cancel->add_option("--linv", o.linv)->required();
  cancel->add_option("--C", o.C_override);
  cancel->add_option("--out,-o", o.out);

  auto* report = app.add_subcommand("report", "depth table, audit and cancellation together");
  add_space_options(report, o);
  report->add_option("--archive", o.archive);
  report->add_option("--linv", o.linv);
  report->add_option("--C", o.C_override);
  report->add_option("--out,-o", o.out);

  long lp = 0, lk = 0, vL = 0;
  bool have_vL = false;
  std::string L_text, Lp_text;
  auto* local = app.add_subcommand("local", "C_{p,k}, admissibility and predicted depths");
  local->add_option("--p", lp)->required();
  local->add_option("--k", lk)->required();
  local->add_option("--vL", vL)->each([&](const std::string&) { have_vL = true; });
  local->add_option("--L", L_text, "L as valuation:mantissa:precision");
  local->add_option("--Lp", Lp_text, "second L, same format");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*newspace) {
      if (o.run.p == 0 || o.run.k == 0) throw InvalidArgument("--p and --k are required");
      EigenArchive a = load_or_compute(o, status);
      std::ostringstream os;
      write_archive(os, a);
      emit(o, os.str());
    } else if (*table) {
      EigenArchive a = load_or_compute(o, status);
      auto linv = load_linv(o);
      Analysis an = analyze(a, linv ? &*linv : nullptr);
      emit(o, (o.format == "csv" ? "" : header(a)) + table_text(an, o));
    } else if (*verify || *cancel) {
      EigenArchive a = load_or_compute(o, status);
      auto linv = load_linv(o);
      Analysis an = analyze(a, &*linv, o.C_override);
      if (*verify) {
        emit(o, header(a) + verify_text(an));
        if (!an.report->pass() || !an.doubling->pass) status = std::max(status, kExitVerifyFail);
      } else {
        emit(o, header(a) + constant_line(an) + cancellation_text(an));
      }
    } else if (*report) {
      EigenArchive a = load_or_compute(o, status);
      auto linv = load_linv(o);
      Analysis an = analyze(a, linv ? &*linv : nullptr, o.C_override);
      std::string text = header(a) + "\n" + an.markdown() + "\n";
      if (an.has_records()) {
        text += verify_text(an) + "\n" + cancellation_text(an);
        if (!an.report->pass() || !an.doubling->pass) status = std::max(status, kExitVerifyFail);
      } else {
        text += "no L-invariant records given: verification skipped\n";
      }
      emit(o, text);
    } else if (*local) {
      std::ostringstream os;
      long C = c_constant(lp, lk);
      auto [lo, hi] = equidistribution_interval(lp, lk);
      os << "C_{p,k} = " << C << "\n";
      os << "equidistribution interval = [" << to_string(lo) << ", " << to_string(hi) << "]\n";
      if (have_vL) os << "vL = " << vL << " admissible: " << (is_admissible(vL, C) ? "yes" : "no") << "\n";
      auto L = parse_padic(L_text, lp);
      auto Lp = parse_padic(Lp_text, lp);
      if (L && Lp) {
        auto d = opposite_sign_predicted_depth(LValue::finite(*L), LValue::finite(*Lp), lp, lk);
        os << "predicted opposite-sign depth: " << (d ? std::to_string(*d) : "none") << "\n";
        if (lk % 2 == 0 && 2 < lk && lk < lp) {
          try {
            auto h = same_sign_depth(*L, *Lp, lp, lk);
            os << "same-sign depth h: " << (h ? (h->at_least ? ">=" : "") + std::to_string(h->h) : "none") << "\n";
          } catch (const PreconditionViolated& e) {
            os << "same-sign depth: not applicable (" << e.what() << ")\n";
          }
        }
      }
      std::cout << os.str();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return status;
}
