#include "heckecong/verify.hpp"

#include "heckecong/errors.hpp"
#include "heckecong/local_semistable.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace heckecong {

namespace {

long parse_long(const std::string& token, int line) {
  try {
    size_t used = 0;
    long v = std::stol(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw MalformedRecord("line " + std::to_string(line) + ": expected an integer, got '" + token + "'");
  }
}

Integer parse_integer(const std::string& token, int line) {
  Integer z;
  if (token.empty() || z.set_str(token, 10) != 0) {
    throw MalformedRecord("line " + std::to_string(line) + ": expected an integer, got '" + token + "'");
  }
  return z;
}

}  // namespace

LInvariantFile parse_linv(std::istream& in) {
  LInvariantFile file;
  bool have_params = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "params") {
      if (have_params) throw MalformedRecord("line " + std::to_string(line) + ": duplicate params line");
      std::map<std::string, long> kv;
      for (size_t i = 1; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string::npos) throw MalformedRecord("line " + std::to_string(line) + ": bad field " + tok[i]);
        kv[tok[i].substr(0, eq)] = parse_long(tok[i].substr(eq + 1), line);
      }
      if (!kv.count("N") || !kv.count("p") || !kv.count("k")) {
        throw MalformedRecord("line " + std::to_string(line) + ": params needs N, p and k");
      }
      file.N = kv["N"];
      file.p = kv["p"];
      file.k = kv["k"];
      if (file.N < 1 || !is_prime(file.p) || file.k < 2) {
        throw MalformedRecord("line " + std::to_string(line) + ": invalid params");
      }
      have_params = true;
      continue;
    }
    if (!have_params) throw MalformedRecord("line " + std::to_string(line) + ": record before params line");
    if (tok.size() != 3 && tok.size() != 6) {
      throw MalformedRecord("line " + std::to_string(line) + ": expected 3 or 6 fields, got " +
                            std::to_string(tok.size()));
    }
    LInvariantRecord r;
    r.index = static_cast<int>(parse_long(tok[0], line));
    long eps = parse_long(tok[1], line);
    if (eps != 1 && eps != -1) throw MalformedRecord("line " + std::to_string(line) + ": eps must be 1 or -1");
    r.eps = static_cast<int>(eps);
    r.vL = parse_long(tok[2], line);
    if (tok.size() == 6) {
      long val = parse_long(tok[3], line);
      Integer mant = parse_integer(tok[4], line);
      long prec = parse_long(tok[5], line);
      if (val != r.vL) throw MalformedRecord("line " + std::to_string(line) + ": L valuation differs from vL");
      try {
        r.L = PadicNumber::from_parts(file.p, val, mant, prec);
      } catch (const InvalidArgument& e) {
        throw MalformedRecord("line " + std::to_string(line) + ": " + e.what());
      }
    }
    file.records.push_back(std::move(r));
  }
  if (!have_params) throw MalformedRecord("missing params line");
  return file;
}

LInvariantFile read_linv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return parse_linv(in);
  } catch (const MalformedRecord& e) {
    throw MalformedRecord(path + ": " + e.what());
  }
}

std::string format_linv(const LInvariantFile& file) {
  std::ostringstream os;
  os << "params N=" << file.N << " p=" << file.p << " k=" << file.k << "\n";
  for (const auto& r : file.records) {
    os << r.index << " " << r.eps << " " << r.vL;
    if (r.L) os << " " << r.L->valuation() << " " << r.L->mantissa().get_str() << " " << r.L->precision();
    os << "\n";
  }
  return os.str();
}

std::vector<LInvariantRecord> ingest_linv(const LInvariantFile& file, const std::vector<Eigensystem>& systems) {
  if (file.records.size() != systems.size()) {
    throw CountMismatch(std::to_string(file.records.size()) + " records for " + std::to_string(systems.size()) +
                        " eigensystems");
  }
  std::map<int, const LInvariantRecord*> by_index;
  for (const auto& r : file.records) {
    if (!by_index.emplace(r.index, &r).second) throw MalformedRecord("duplicate index " + std::to_string(r.index));
  }
  std::vector<LInvariantRecord> out;
  for (const auto& s : systems) {
    if (s.N != file.N || s.p != file.p || s.k != file.k) {
      throw CountMismatch("records describe (N,p,k) = (" + std::to_string(file.N) + "," + std::to_string(file.p) +
                          "," + std::to_string(file.k) + ")");
    }
    auto it = by_index.find(s.index);
    if (it == by_index.end()) throw CountMismatch("no record for form " + std::to_string(s.index));
    if (it->second->eps != s.eps) {
      throw SignMismatch("form " + std::to_string(s.index) + " has eps " + std::to_string(s.eps) +
                         " but its record says " + std::to_string(it->second->eps));
    }
    out.push_back(*it->second);
  }
  return out;
}

std::string VerificationReport::str() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << "form " << c.form << " (vL " << c.vL << "): partner ";
    if (c.partner < 0) {
      os << "NONE";
    } else {
      os << c.partner << " (i) " << (c.sign_ok ? "ok" : "FAIL") << " (ii) "
         << (c.sum_ok ? (*c.sum_ok ? "ok" : "FAIL") : "n/a") << " (iii) " << (c.depth_ok ? "ok" : "FAIL")
         << " depth " << c.measured.str() << " >= " << c.required_depth;
      if (c.depth_ok && !c.measured.at_least) os << " (excess " << c.measured.value - c.required_depth << ")";
    }
    os << (c.unique ? "" : " [not unique: " + std::to_string(c.candidates) + " candidates]") << "\n";
  }
  for (const auto& v : violations) os << "violation: " << v << "\n";
  os << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

VerificationReport match_partners(const std::vector<LInvariantRecord>& records,
                                  const std::vector<std::vector<Depth>>& depths, long p, long k,
                                  std::optional<long> C_override) {
  if (records.size() != depths.size()) throw CountMismatch("records and depth matrix differ in size");
  VerificationReport report;
  report.C = C_override ? *C_override : c_constant(p, k);
  const int n = static_cast<int>(records.size());
  for (int f = 0; f < n; ++f) {
    const auto& rf = records[f];
    if (!is_admissible(rf.vL, report.C)) continue;
    PartnerCheck c;
    c.form = f;
    c.vL = rf.vL;
    c.required_depth = -rf.vL + 1;
    // Clause (ii) subsumes equality of vL for admissible forms; without full
    // L values the equality is what the data lets us check.
    auto satisfies = [&](int g, bool& sign, std::optional<bool>& sum, bool& deep) {
      const auto& rg = records[g];
      sign = rg.eps == -rf.eps;
      deep = depths[f][g].reaches(c.required_depth);
      sum.reset();
      if (rf.L && rg.L) {
        PadicNumber s = *rf.L + *rg.L;
        sum = s.is_exact_zero() || s.valuation() >= -report.C;
      }
      bool same_v = rg.vL == rf.vL;
      return sign && deep && same_v && sum.value_or(true);
    };
    int best = -1;
    for (int g = 0; g < n; ++g) {
      if (g == f) continue;
      bool sign, deep;
      std::optional<bool> sum;
      if (satisfies(g, sign, sum, deep)) {
        ++c.candidates;
        if (best < 0) best = g;
      }
    }
    if (best < 0) {
      // Report the clauses for the deepest congruent form, which is the
      // natural candidate when nothing qualifies.
      for (int g = 0; g < n; ++g) {
        if (g == f) continue;
        if (best < 0 || depths[f][g].value > depths[f][best].value) best = g;
      }
    }
    if (best >= 0) {
      c.partner = best;
      satisfies(best, c.sign_ok, c.sum_ok, c.depth_ok);
      c.measured = depths[f][best];
    }
    c.unique = c.candidates == 1;
    if (c.candidates == 0) {
      std::string why;
      if (c.partner >= 0) {
        if (!c.sign_ok) why += " (i)";
        if (c.sum_ok && !*c.sum_ok) why += " (ii)";
        if (records[c.partner].vL != rf.vL) why += " (vL differs)";
        if (!c.depth_ok) why += " (iii)";
      }
      report.violations.push_back("form " + std::to_string(f) + " with vL " + std::to_string(rf.vL) +
                                  " has no partner; nearest candidate fails" + why);
    } else if (c.candidates > 1) {
      report.violations.push_back("form " + std::to_string(f) + " has " + std::to_string(c.candidates) +
                                  " partners");
    }
    report.checks.push_back(c);
  }
  return report;
}

DoublingResult an_doubling_check(const std::vector<long>& vLs, long p, long k, std::optional<long> C_override) {
  long C = C_override ? *C_override : c_constant(p, k);
  std::map<long, int> count;
  for (long v : vLs) {
    if (is_admissible(v, C)) ++count[v];
  }
  DoublingResult r;
  for (auto [v, m] : count) {
    if (m % 2 != 0) {
      r.pass = false;
      r.odd_values.push_back(v);
    }
  }
  return r;
}

std::vector<DeepPair> deep_pairs(const std::vector<LInvariantRecord>& records,
                                 const std::vector<std::vector<Depth>>& depths) {
  if (records.size() != depths.size()) throw CountMismatch("records and depth matrix differ in size");
  const int n = static_cast<int>(records.size());
  std::vector<DeepPair> edges;
  for (int f = 0; f < n; ++f) {
    for (int g = f + 1; g < n; ++g) {
      if (records[f].vL != records[g].vL || records[f].eps == records[g].eps) continue;
      if (!depths[f][g].reaches(-records[f].vL + 1)) continue;
      edges.push_back(DeepPair{f, g, records[f].vL, depths[f][g], false});
    }
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const DeepPair& a, const DeepPair& b) { return a.depth.value > b.depth.value; });
  std::vector<bool> used(n, false);
  std::vector<DeepPair> out;
  for (size_t i = 0; i < edges.size(); ++i) {
    auto e = edges[i];
    if (used[e.f] || used[e.g]) continue;
    for (size_t j = 0; j < edges.size(); ++j) {
      const auto& o = edges[j];
      if (j == i || used[o.f] || used[o.g] || o.depth.value != e.depth.value) continue;
      if (o.f == e.f || o.f == e.g || o.g == e.f || o.g == e.g) e.ambiguous = true;
    }
    used[e.f] = used[e.g] = true;
    out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const DeepPair& a, const DeepPair& b) { return a.vL > b.vL; });
  return out;
}

std::vector<CancellationEntry> cancellation_report(const std::vector<LInvariantRecord>& records,
                                                   const std::vector<DeepPair>& pairs, long p, long k,
                                                   std::optional<long> C_override) {
  long C = C_override ? *C_override : c_constant(p, k);
  std::vector<CancellationEntry> out;
  for (const auto& pr : pairs) {
    const auto& a = records.at(pr.f);
    const auto& b = records.at(pr.g);
    if (!a.L || !b.L) {
      throw MalformedRecord("forms " + std::to_string(a.index) + " and " + std::to_string(b.index) +
                            " need full L values");
    }
    PadicNumber s = *a.L + *b.L;
    if (s.is_exact_zero() || !s.is_resolved()) {
      throw InsufficientPrecision("L_f + L_g vanishes to the stored precision for forms " + std::to_string(a.index) +
                                  " and " + std::to_string(b.index));
    }
    out.push_back(CancellationEntry{s.valuation(), pr.vL, s.valuation() > -C});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CancellationEntry& x, const CancellationEntry& y) { return x.vL > y.vL; });
  return out;
}

std::string format_cancellation(const std::vector<CancellationEntry>& entries) {
  std::string s;
  for (size_t i = 0; i < entries.size(); ++i) {
    s += (i ? ", [" : "[") + std::to_string(entries[i].sum_valuation) + ", " + std::to_string(entries[i].vL) + "]";
  }
  return s;
}

}  // namespace heckecong
