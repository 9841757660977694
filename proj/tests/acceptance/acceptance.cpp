// Acceptance run: one PASS/FAIL line per criterion, followed by notes.
// Exit status is 0 only when every criterion passes.

#include "heckecong/errors.hpp"
#include "heckecong/local_semistable.hpp"
#include "heckecong/pipeline.hpp"
#include "root_enumeration.hpp"
#include "trace_formula.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace heckecong;

namespace {

const std::string kFixtures = HECKECONG_FIXTURE_DIR;

using ClassShape = std::multiset<std::multiset<long>>;

struct ExpectedRow {
  long depth = 0;
  bool all_distinct = false;
  ClassShape classes;
};

std::vector<ExpectedRow> read_expected(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::vector<ExpectedRow> rows;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    ExpectedRow row;
    row.depth = std::stol(line.substr(0, bar));
    std::string rest = line.substr(bar + 1);
    if (rest.find("all distinct") != std::string::npos) {
      row.all_distinct = true;
    } else {
      std::istringstream classes(rest);
      for (std::string cls; std::getline(classes, cls, ';');) {
        std::multiset<long> members;
        std::istringstream items(cls);
        for (std::string v; std::getline(items, v, ',');) members.insert(std::stol(v));
        row.classes.insert(members);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string shape_str(const ClassShape& s) {
  std::string out;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    out += out.empty() ? "[" : " [";
    bool first = true;
    for (auto v = it->rbegin(); v != it->rend(); ++v) {
      out += (first ? "" : ",") + std::to_string(*v);
      first = false;
    }
    out += "]";
  }
  return out;
}

struct Case {
  std::string name;
  long N, p, k, M;
  std::vector<long> changepoints;
  size_t forms;
};

struct CaseResult {
  Case c;
  EigenArchive archive;
  LInvariantFile linv;
  Analysis an;
  double seconds = 0;
  std::vector<std::string> mismatches;  // published rows that differ
  bool changepoints_ok = false;
};

ClassShape computed_shape(const Analysis& an, const PartitionRow& row) {
  ClassShape s;
  for (const auto& cls : row.classes) {
    std::multiset<long> m;
    for (int i : cls) m.insert(an.records[i].vL);
    s.insert(m);
  }
  return s;
}

CaseResult run_case(const Case& c) {
  CaseResult r{c, {}, {}, {}, 0, {}, false};
  auto start = std::chrono::steady_clock::now();
  RunConfig config;
  config.N = c.N;
  config.p = c.p;
  config.k = c.k;
  config.precision = c.M;
  config.cutoff = 300;
  r.archive = run_newspace(config);
  r.linv = read_linv_file(kFixtures + "/linv/" + c.name + ".txt");
  r.an = analyze(r.archive, &r.linv);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  r.changepoints_ok = r.an.table.changepoints() == c.changepoints && r.an.table.fully_split;
  auto expected = read_expected(kFixtures + "/tables/" + c.name + ".txt");
  const auto& rows = r.an.table.rows;
  if (rows.size() != expected.size()) {
    r.mismatches.push_back(std::to_string(rows.size()) + " rows computed, " + std::to_string(expected.size()) +
                           " published");
  }
  for (size_t i = 0; i < std::min(rows.size(), expected.size()); ++i) {
    const auto& e = expected[i];
    ClassShape got = computed_shape(r.an, rows[i]);
    bool same = rows[i].depth == e.depth &&
                (e.all_distinct ? rows[i].all_distinct() : got == e.classes && !rows[i].all_distinct());
    if (!same) {
      r.mismatches.push_back("depth " + std::to_string(e.depth) + ": computed " +
                             (rows[i].all_distinct() ? std::string("all distinct") : shape_str(got)) +
                             ", published " + (e.all_distinct ? std::string("all distinct") : shape_str(e.classes)));
    }
  }
  return r;
}

void line(int n, bool pass, const std::string& what) {
  std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << "  " << what << "\n";
}

std::string join(const std::vector<long>& v) {
  std::string s;
  for (long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "{" + s + "}";
}

std::string table_detail(const CaseResult& r) {
  std::ostringstream os;
  os << "changepoints " << join(r.an.table.changepoints()) << (r.changepoints_ok ? " ok" : " expected " + join(r.c.changepoints))
     << ", classes " << (r.mismatches.empty() ? "match" : "differ in " + std::to_string(r.mismatches.size()) + " row(s)")
     << ", " << r.archive.systems.size() << " forms, " << static_cast<long>(r.seconds) << " s";
  return os.str();
}

std::vector<int> positions_with_vL(const Analysis& an, long vL) {
  std::vector<int> out;
  for (size_t i = 0; i < an.records.size(); ++i) {
    if (an.records[i].vL == vL) out.push_back(static_cast<int>(i));
  }
  return out;
}

// Residues of the exact T_q characteristic polynomial mod p, from the trace
// formula, against the residues of the computed a_q.
std::string residue_note(const CaseResult& r, long q) {
  long d = static_cast<long>(r.archive.systems.size());
  auto f = oracle::newspace_charpoly(r.c.N * r.c.p, r.c.k, q, d);
  std::set<long> trace_roots;
  for (long x = 0; x < r.c.p; ++x) {
    if (oracle::eval_mod(f, x, r.c.p) == 0) trace_roots.insert(x);
  }
  std::set<long> computed;
  for (const auto& e : r.archive.systems) computed.insert(mpz_class(e.aell.at(q) % r.c.p).get_si());
  std::ostringstream os;
  os << r.c.name << ": T_" << q << " characteristic polynomial from the trace formula has roots mod " << r.c.p
     << " {";
  for (long x : trace_roots) os << " " << x;
  os << " }, computed a_" << q << " residues {";
  for (long x : computed) os << " " << x;
  os << " }" << (trace_roots == computed ? "" : "  MISMATCH");
  return os.str();
}

// vp(disc) of the exact T_q characteristic polynomial against twice the sum
// of pairwise valuations of the computed a_q.
std::string discriminant_note(const CaseResult& r, long q, bool& consistent) {
  long d = static_cast<long>(r.archive.systems.size());
  long p = r.c.p;
  long vd = oracle::valuation(oracle::newspace_discriminant(r.c.N * p, r.c.k, q, d), p);
  Integer modulus = ipow(p, r.c.M);
  long sum = 0;
  bool capped = false;
  for (long i = 0; i < d; ++i) {
    for (long j = i + 1; j < d; ++j) {
      Integer diff = mod(r.archive.systems[i].aell.at(q) - r.archive.systems[j].aell.at(q), modulus);
      if (diff == 0) {
        capped = true;
        sum += r.c.M;
      } else {
        sum += vp(diff, p);
      }
    }
  }
  consistent = capped ? vd >= 2 * sum : vd == 2 * sum;
  std::ostringstream os;
  os << r.c.name << ": vp(disc T_" << q << ") = " << vd << " from the trace formula, 2 * sum of vp(a_f - a_g) = "
     << 2 * sum << (capped ? " (some differences vanish mod p^M)" : "") << (consistent ? "" : "  INCONSISTENT");
  return os.str();
}

bool refinement_holds(const Analysis& an) {
  const auto& rows = an.table.rows;
  for (size_t r = 1; r < rows.size(); ++r) {
    std::map<int, size_t> owner;
    for (size_t j = 0; j < rows[r - 1].classes.size(); ++j) {
      for (int x : rows[r - 1].classes[j]) owner[x] = j;
    }
    for (const auto& cls : rows[r].classes) {
      for (int x : cls) {
        if (owner.at(x) != owner.at(cls.front())) return false;
      }
    }
    if (rows[r].classes.size() <= rows[r - 1].classes.size()) return false;
  }
  const auto& d = an.depths;
  for (size_t a = 0; a < d.size(); ++a) {
    for (size_t b = 0; b < d.size(); ++b) {
      if (!(d[a][b] == d[b][a])) return false;
      for (size_t c = 0; c < d.size(); ++c) {
        if (d[a][c].value < std::min(d[a][b].value, d[b][c].value)) return false;
      }
    }
  }
  return true;
}

// Sum and product of the computed a_ell against trace and determinant of the
// exact Hecke matrix on each sign space.
bool trace_det_consistent(const CaseResult& r, int& primes_checked) {
  NewSpace ns(r.c.N, r.c.p, r.c.k);
  auto [plus, minus] = al_split(ns);
  Integer modulus = ipow(r.c.p, r.c.M);
  auto primes = good_primes(r.c.N, r.c.p, 100);
  primes.resize(20);
  primes_checked = static_cast<int>(primes.size());
  for (const SignSpace* s : {&plus, &minus}) {
    for (long ell : primes) {
      QMatrix T = s->hecke(ell);
      Integer sum = 0, prod = 1;
      for (const auto& e : r.archive.systems) {
        if (e.eps != s->eps) continue;
        sum += e.aell.at(ell);
        prod = mod(prod * e.aell.at(ell), modulus);
      }
      if (mod(sum - rational_mod(T.trace(), modulus), modulus) != 0) return false;
      if (mod(prod - rational_mod(T.determinant(), modulus), modulus) != 0) return false;
    }
  }
  return true;
}

long cubic_enumeration(bool& ok) {
  long checked = 0;
  ok = true;
  for (long p : {3L, 5L}) {
    for (long a = -20; a <= 20; ++a) {
      for (long b = -20; b <= 20; ++b) {
        for (long c = -20; c <= 20; ++c) {
          IntPoly f(std::vector<Integer>{c, b, a, 1});
          Integer disc = f.discriminant();
          if (disc == 0) continue;
          long dv = vp(disc, p);
          for (long M = 1; M <= 4; ++M) {
            auto got = hensel_roots(f, p, M);
            std::multiset<Integer> g(got.begin(), got.end());
            if (g != oracle::enumerate_roots(f.coefficients(), p, M, dv)) ok = false;
            ++checked;
          }
        }
      }
    }
  }
  return checked;
}

}  // namespace

int main() {
  std::vector<Case> cases{
      {"p3_k44", 1, 3, 44, 16, {1, 2, 4, 9, 11, 15}, 7},
      {"p5_k32", 1, 5, 32, 15, {1, 2, 4, 7, 8, 12, 14}, 11},
      {"p7_k20", 1, 7, 20, 9, {1, 2, 3, 5, 7, 8}, 9},
      {"p11_k18", 1, 11, 18, 9, {1, 2, 3, 5, 6, 7, 8}, 14},
      {"p3_k36_N2", 2, 3, 36, 17, {1, 2, 5, 8, 13, 16}, 7},
      {"p3_k48", 1, 3, 48, 16, {1, 2, 4, 9, 11, 15}, 7},
  };
  std::map<std::string, CaseResult> res;
  std::vector<std::string> notes;
  int failures = 0;
  auto record = [&](int n, bool pass, const std::string& what) {
    line(n, pass, what);
    if (!pass) ++failures;
  };

  try {
    for (const auto& c : cases) res.emplace(c.name, run_case(c));

    // 1-5: table reproduction
    for (int n = 1; n <= 5; ++n) {
      const auto& r = res.at(cases[n - 1].name);
      bool pass = r.changepoints_ok && r.mismatches.empty() && r.archive.systems.size() == r.c.forms;
      std::string extra;
      if (n == 2) {
        auto deep = positions_with_vL(r.an, -11);
        bool ok = deep.size() == 2 && r.an.depths[deep[0]][deep[1]].reaches(12);
        pass = pass && ok;
        extra = ", vL -11 pair depth " + (deep.size() == 2 ? r.an.depths[deep[0]][deep[1]].str() : "?");
      }
      if (n == 3) {
        ClassShape first = computed_shape(r.an, r.an.table.rows.front());
        bool mixed = first.count(std::multiset<long>{0, -1, -5, -5}) == 1;
        pass = pass && mixed;
        extra = mixed ? ", depth-1 class [0,-1,-5,-5] present" : ", depth-1 class [0,-1,-5,-5] missing";
      }
      record(n, pass, r.c.name + ": " + table_detail(r) + extra);
      for (const auto& m : r.mismatches) notes.push_back(r.c.name + " " + m);
    }

    // 6: weight 48 against weight 44
    {
      const auto& a = res.at("p3_k44");
      const auto& b = res.at("p3_k48");
      bool same = a.an.table.rows.size() == b.an.table.rows.size();
      for (size_t i = 0; same && i < a.an.table.rows.size(); ++i) {
        same = a.an.table.rows[i].depth == b.an.table.rows[i].depth &&
               computed_shape(a.an, a.an.table.rows[i]) == computed_shape(b.an, b.an.table.rows[i]);
      }
      record(6, same && b.mismatches.empty(),
             std::string("p3_k48 table ") + (same ? "identical to" : "differs from") + " p3_k44; " + table_detail(b));
    }

    // 7: partner audit
    {
      bool pass = true;
      std::string detail;
      for (const auto& c : cases) {
        const auto& r = res.at(c.name);
        bool ok = r.an.report->pass() && r.an.doubling->pass;
        pass = pass && ok;
        detail += " " + c.name + (ok ? " ok" : " FAIL") + "(" + std::to_string(r.an.report->checks.size()) + ")";
        if (!ok) notes.push_back(c.name + " audit:\n" + r.an.report->str());
      }
      record(7, pass, "audit of admissible forms:" + detail);
    }

    // 8: cancellation
    {
      std::map<std::string, std::string> want{{"p3_k44", "[-3, -6], [-3, -8], [-3, -11]"},
                                              {"p5_k32", "[0, -2], [-1, -5], [-1, -6], [-2, -10], [-2, -11]"}};
      bool pass = true;
      std::string detail;
      for (const auto& [name, text] : want) {
        const auto& r = res.at(name);
        std::string got = r.an.cancellation ? format_cancellation(*r.an.cancellation) : "unavailable";
        bool above = r.an.cancellation.has_value();
        if (r.an.cancellation) {
          for (const auto& e : *r.an.cancellation) above = above && e.above_minus_C;
        }
        bool ok = got == text && above;
        pass = pass && ok;
        detail += " " + name + " " + got + (ok ? "" : " (expected " + text + ")") + ";";
      }
      record(8, pass, "cancellation:" + detail);
    }

    // 9: constants
    {
      bool pass = c_constant(5, 32) == 6 && c_constant(7, 20) == 5 && c_constant(11, 18) == 5 &&
                  c_constant(3, 44) == 7;
      record(9, pass,
             "C(5,32)=" + std::to_string(c_constant(5, 32)) + " C(7,20)=" + std::to_string(c_constant(7, 20)) +
                 " C(11,18)=" + std::to_string(c_constant(11, 18)) + " C(3,44)=" +
                 std::to_string(c_constant(3, 44)));
      const auto& r = res.at("p3_k44");
      auto with8 = analyze(r.archive, &r.linv, 8);
      notes.push_back("p3_k44: the reference table header gives -C = -8 but the formula gives C = 7; with C = 8 the audit " +
                      std::string(with8.report->pass() ? "still passes" : "fails") + " (" +
                      std::to_string(with8.report->checks.size()) + " admissible forms instead of " +
                      std::to_string(r.an.report->checks.size()) + ")");
    }

    // 10: invariant suites
    {
      bool a_ok = true;
      for (const auto& [name, r] : res) {
        for (const auto& e : r.archive.systems) {
          a_ok = a_ok && e.ap * e.ap == ipow(e.p, e.k - 2) && e.ap == ap_from_sign(e.p, e.k, e.eps);
        }
      }
      bool b_ok = true;
      int nprimes = 0;
      for (const auto& c : cases) b_ok = trace_det_consistent(res.at(c.name), nprimes) && b_ok;
      bool c_ok = false;
      long cubics = cubic_enumeration(c_ok);
      bool d_ok = true;
      for (const auto& [name, r] : res) d_ok = d_ok && refinement_holds(r.an);
      record(10, a_ok && b_ok && c_ok && d_ok,
             std::string("(a) a_p ") + (a_ok ? "ok" : "FAIL") + ", (b) trace/det at " + std::to_string(nprimes) +
                 " primes per sign space " + (b_ok ? "ok" : "FAIL") + ", (c) " + std::to_string(cubics) +
                 " cubic root sets " + (c_ok ? "ok" : "FAIL") + ", (d) refinement " + (d_ok ? "ok" : "FAIL"));
    }

    // 11: full Sturm bound at p = 3, k = 44
    {
      const auto& base = res.at("p3_k44");
      auto start = std::chrono::steady_clock::now();
      RunConfig config;
      config.p = 3;
      config.k = 44;
      config.precision = 16;
      config.sturm = true;
      auto archive = run_newspace(config);
      auto an = analyze(archive, &base.linv);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      bool same = an.depths == base.an.depths;
      record(11, same && archive.cutoff == 1186,
             "Sturm bound " + std::to_string(archive.cutoff) + ", " + std::to_string(archive.primes.size()) +
                 " primes, depths " + (same ? "unchanged" : "CHANGED") + " from cutoff 300, " +
                 std::to_string(static_cast<long>(secs)) + " s");
    }

    // Independent checks of the computed data behind the reported differences.
    for (const std::string name : {"p5_k32", "p11_k18"}) notes.push_back(residue_note(res.at(name), 2));
    for (const auto& c : cases) {
      bool consistent = false;
      notes.push_back(discriminant_note(res.at(c.name), good_primes(c.N, c.p, 10).front(), consistent));
      if (!consistent) ++failures;
    }
  } catch (const Error& e) {
    std::cout << "error: " << e.what() << "\n";
    return 1;
  }

  std::cout << "\nnotes:\n";
  for (const auto& n : notes) std::cout << "  " << n << "\n";
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}
