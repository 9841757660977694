#include "heckecong/congruence.hpp"

#include "heckecong/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <thread>

namespace heckecong {

Integer gamma0_index(long n) {
  Integer idx = n;
  for (long q : prime_factors(n)) idx = idx / q * (q + 1);
  return idx;
}

SturmData sturm_bound(long N, long p, long k) {
  if (N < 1 || !is_prime(p) || N % p == 0) throw InvalidArgument("sturm_bound needs gcd(N, p) = 1");
  SturmData s;
  s.N = N;
  s.p = p;
  s.k = k;
  // The level of the forms is N p; the auxiliary level multiplies it by p^2
  // and by every prime dividing it.
  long level = N * p;
  long rad = 1;
  for (long q : prime_factors(level)) rad *= q;
  s.Nprime = level * p * p * rad;
  long m = s.Nprime * p;
  s.index = gamma0_index(m);
  s.bound_exact = Rational(Integer(k) * s.index, 12) - Rational(s.index - 1, Integer(m));
  s.bound_exact.canonicalize();
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), s.bound_exact.get_num_mpz_t(), s.bound_exact.get_den_mpz_t());
  s.bound = fl.get_si();
  for (long ell : primes_up_to(s.bound)) {
    if (level % ell != 0) s.primes.push_back(ell);
  }
  return s;
}

std::string Depth::str() const { return (at_least ? ">=" : "") + std::to_string(value); }

Depth depth(const Eigensystem& a, const Eigensystem& b, const std::vector<long>& primes) {
  if (a.precision != b.precision) {
    throw PrecisionMismatch("eigensystems carry precision " + std::to_string(a.precision) + " and " +
                            std::to_string(b.precision));
  }
  if (a.N != b.N || a.p != b.p || a.k != b.k) throw InvalidArgument("eigensystems from different spaces");
  const long M = a.precision;
  Integer modulus = ipow(a.p, M);
  long best = M;
  for (long ell : primes) {
    auto ia = a.aell.find(ell);
    auto ib = b.aell.find(ell);
    if (ia == a.aell.end() || ib == b.aell.end()) {
      throw InvalidArgument("a_" + std::to_string(ell) + " missing from an eigensystem");
    }
    Integer diff = mod(ia->second - ib->second, modulus);
    if (diff != 0) best = std::min(best, vp(diff, a.p));
    if (best == 0) break;
  }
  return Depth{best, best == M};
}

std::vector<std::vector<Depth>> depth_matrix(const std::vector<Eigensystem>& systems,
                                             const std::vector<long>& primes) {
  const size_t n = systems.size();
  std::vector<std::vector<Depth>> out(n, std::vector<Depth>(n));
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < n; ++i) {
    out[i][i] = Depth{systems[i].precision, true};
    for (size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  // Cheap per pair; split across threads only when it is worth it.
  size_t workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<size_t>(1, pairs.size() / 16));
  auto run = [&](size_t start) {
    for (size_t t = start; t < pairs.size(); t += workers) {
      auto [i, j] = pairs[t];
      Depth d = depth(systems[i], systems[j], primes);
      out[i][j] = d;
      out[j][i] = d;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  return out;
}

bool PartitionRow::all_distinct() const {
  return std::all_of(classes.begin(), classes.end(), [](const auto& c) { return c.size() == 1; });
}

std::vector<long> PartitionTable::changepoints() const {
  std::vector<long> out;
  for (const auto& r : rows) out.push_back(r.depth);
  return out;
}

std::vector<std::vector<int>> partition_at(const std::vector<std::vector<Depth>>& depths, long n) {
  const int size = static_cast<int>(depths.size());
  std::vector<int> parent(size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      if (depths[i][j].reaches(n)) parent[find(j)] = find(i);
    }
  }
  std::vector<std::vector<int>> classes;
  std::vector<int> slot(size, -1);
  for (int i = 0; i < size; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[slot[r]].push_back(i);
  }
  return classes;
}

PartitionTable changepoint_table(const std::vector<std::vector<Depth>>& depths, long precision) {
  PartitionTable table;
  table.precision = precision;
  long top = 0;
  for (size_t i = 0; i < depths.size(); ++i) {
    for (size_t j = i + 1; j < depths.size(); ++j) top = std::max(top, depths[i][j].value);
  }
  // Depth >= M is a lower bound, so nothing past M can be resolved.
  long last = std::min(top + 1, precision);
  if (depths.empty()) last = 1;
  table.max_resolved = std::max(1L, last);
  for (long n = 1; n <= table.max_resolved; ++n) {
    PartitionRow row{n, partition_at(depths, n)};
    if (table.rows.empty() || row.classes.size() != table.rows.back().classes.size()) {
      table.rows.push_back(std::move(row));
    }
  }
  table.fully_split = !table.rows.empty() && table.rows.back().all_distinct();
  return table;
}

PartitionTable changepoint_table(const std::vector<Eigensystem>& systems, const std::vector<long>& primes) {
  long M = systems.empty() ? 0 : systems.front().precision;
  for (const auto& s : systems) {
    if (s.precision != M) throw PrecisionMismatch("eigensystems do not share one precision");
  }
  return changepoint_table(depth_matrix(systems, primes), M);
}

namespace {

// Numeric-aware descending order, so "-11" sorts below "-6" and "0".
bool label_greater(const std::string& a, const std::string& b) {
  char* ea = nullptr;
  char* eb = nullptr;
  long x = std::strtol(a.c_str(), &ea, 10);
  long y = std::strtol(b.c_str(), &eb, 10);
  bool na = !a.empty() && *ea == '\0';
  bool nb = !b.empty() && *eb == '\0';
  if (na && nb) return x > y;
  if (na != nb) return na;
  return a > b;
}

bool class_greater(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return label_greater(a[i], b[i]);
  }
  return a.size() > b.size();
}

std::string join_class(const std::vector<std::string>& c) {
  std::string s = "[";
  for (size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + c[i];
  return s + "]";
}

}  // namespace

std::vector<std::vector<std::string>> canonical_classes(const PartitionRow& row, const LabelFn& label) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : row.classes) {
    std::vector<std::string> names;
    for (int i : c) names.push_back(label(i));
    std::sort(names.begin(), names.end(), label_greater);
    out.push_back(std::move(names));
  }
  std::sort(out.begin(), out.end(), class_greater);
  return out;
}

std::string table_markdown(const PartitionTable& table, const LabelFn& label, const std::string& header_label) {
  std::ostringstream os;
  os << "| Depth p^* | " << header_label << " |\n|---|---|\n";
  for (const auto& row : table.rows) {
    os << "| " << row.depth << " | ";
    if (row.all_distinct() && row.depth > 1) {
      os << "all distinct";
    } else {
      auto classes = canonical_classes(row, label);
      for (size_t i = 0; i < classes.size(); ++i) os << (i ? ", " : "") << join_class(classes[i]);
    }
    os << " |\n";
  }
  if (!table.fully_split) os << "| >=" << table.precision << " | (not resolved at this precision) |\n";
  return os.str();
}

std::string table_csv(const PartitionTable& table, const LabelFn& label) {
  std::ostringstream os;
  os << "depth,class,members\n";
  for (const auto& row : table.rows) {
    auto classes = canonical_classes(row, label);
    for (size_t c = 0; c < classes.size(); ++c) {
      os << row.depth << "," << c << ",";
      for (size_t i = 0; i < classes[c].size(); ++i) os << (i ? " " : "") << classes[c][i];
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace heckecong
