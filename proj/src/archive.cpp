#include "heckecong/archive.hpp"

#include "heckecong/errors.hpp"

#include <fstream>
#include <sstream>

namespace heckecong {

void write_archive(std::ostream& out, const EigenArchive& a) {
  out << "heckecong-archive " << kArchiveVersion << "\n";
  out << "space N " << a.N << " p " << a.p << " k " << a.k << " precision " << a.precision << " cutoff " << a.cutoff
      << " sturm " << (a.sturm ? 1 : 0) << " excluded " << a.excluded_degree << "\n";
  out << "primes";
  for (long ell : a.primes) out << " " << ell;
  out << "\n";
  for (const auto& s : a.systems) {
    out << "form " << s.index << " eps " << s.eps << " ap " << s.ap.get_str() << " aell";
    for (long ell : a.primes) {
      auto it = s.aell.find(ell);
      if (it == s.aell.end()) throw InternalError("archive: form lacks a_" + std::to_string(ell));
      out << " " << it->second.get_str();
    }
    out << "\n";
  }
}

namespace {

[[noreturn]] void bad(int line, const std::string& what) {
  throw MalformedRecord("archive line " + std::to_string(line) + ": " + what);
}

template <class T>
T take(std::istringstream& ls, int line, const char* what) {
  T v;
  if (!(ls >> v)) bad(line, std::string("expected ") + what);
  return v;
}

Integer take_integer(std::istringstream& ls, int line, const char* what) {
  std::string t = take<std::string>(ls, line, what);
  Integer z;
  if (z.set_str(t, 10) != 0) bad(line, std::string("bad integer for ") + what);
  return z;
}

void expect(std::istringstream& ls, int line, const std::string& word) {
  std::string w;
  if (!(ls >> w) || w != word) bad(line, "expected '" + word + "'");
}

}  // namespace

EigenArchive read_archive(std::istream& in) {
  EigenArchive a;
  std::string raw;
  int line = 0;
  auto next = [&](std::istringstream& ls) {
    if (!std::getline(in, raw)) return false;
    ++line;
    ls = std::istringstream(raw);
    return true;
  };
  std::istringstream ls;
  if (!next(ls)) bad(1, "empty archive");
  expect(ls, line, "heckecong-archive");
  int version = take<int>(ls, line, "version");
  if (version != kArchiveVersion) bad(line, "unsupported version " + std::to_string(version));
  if (!next(ls)) bad(line + 1, "missing space line");
  expect(ls, line, "space");
  expect(ls, line, "N");
  a.N = take<long>(ls, line, "N");
  expect(ls, line, "p");
  a.p = take<long>(ls, line, "p");
  expect(ls, line, "k");
  a.k = take<long>(ls, line, "k");
  expect(ls, line, "precision");
  a.precision = take<long>(ls, line, "precision");
  expect(ls, line, "cutoff");
  a.cutoff = take<long>(ls, line, "cutoff");
  expect(ls, line, "sturm");
  a.sturm = take<int>(ls, line, "sturm flag") != 0;
  expect(ls, line, "excluded");
  a.excluded_degree = take<int>(ls, line, "excluded degree");
  if (!next(ls)) bad(line + 1, "missing primes line");
  expect(ls, line, "primes");
  for (long ell; ls >> ell;) a.primes.push_back(ell);
  while (next(ls)) {
    std::string head;
    if (!(ls >> head)) continue;
    if (head != "form") bad(line, "expected 'form'");
    Eigensystem s;
    s.N = a.N;
    s.p = a.p;
    s.k = a.k;
    s.precision = a.precision;
    s.index = take<int>(ls, line, "index");
    expect(ls, line, "eps");
    s.eps = take<int>(ls, line, "eps");
    expect(ls, line, "ap");
    s.ap = take_integer(ls, line, "a_p");
    expect(ls, line, "aell");
    for (long ell : a.primes) s.aell[ell] = take_integer(ls, line, "a_ell");
    std::string extra;
    if (ls >> extra) bad(line, "trailing data");
    a.systems.push_back(std::move(s));
  }
  return a;
}

void write_archive_file(const std::string& path, const EigenArchive& archive) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_archive(out, archive);
}

EigenArchive read_archive_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return read_archive(in);
}

}  // namespace heckecong
