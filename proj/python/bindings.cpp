#include "heckecong/errors.hpp"
#include "heckecong/local_semistable.hpp"
#include "heckecong/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace heckecong;

namespace {

py::object big(const Integer& z) { return py::module_::import("builtins").attr("int")(z.get_str()); }

py::object fraction(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(big(q.get_num()), big(q.get_den()));
}

py::dict system_dict(const Eigensystem& s) {
  py::dict d;
  d["index"] = s.index;
  d["eps"] = s.eps;
  d["ap"] = big(s.ap);
  d["precision"] = s.precision;
  py::dict aell;
  for (const auto& [ell, a] : s.aell) aell[py::int_(ell)] = big(a);
  d["aell"] = aell;
  return d;
}

EigenArchive archive_from(long N, long p, long k, long precision, long cutoff) {
  RunConfig c;
  c.N = N;
  c.p = p;
  c.k = k;
  c.precision = precision;
  c.cutoff = cutoff;
  return run_newspace(c);
}

py::list table_rows(const Analysis& an) {
  py::list rows;
  for (const auto& row : an.table.rows) {
    py::list classes;
    for (const auto& c : canonical_classes(row, [&](int i) { return an.label(i); })) classes.append(py::cast(c));
    rows.append(py::make_tuple(row.depth, classes));
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "p-new Hecke eigensystems and their congruences";

  py::register_exception<Error>(m, "Error");

  m.def("c_constant", &c_constant, py::arg("p"), py::arg("k"));
  m.def("is_admissible", py::overload_cast<long, long, long>(&is_admissible), py::arg("vL"), py::arg("p"),
        py::arg("k"));
  m.def("equidistribution_interval", [](long p, long k) {
    auto [lo, hi] = equidistribution_interval(p, k);
    return py::make_tuple(fraction(lo), fraction(hi));
  });

  m.def(
      "sturm_bound",
      [](long N, long p, long k) {
        SturmData s = sturm_bound(N, p, k);
        py::dict d;
        d["Nprime"] = s.Nprime;
        d["index"] = big(s.index);
        d["exact"] = fraction(s.bound_exact);
        d["bound"] = s.bound;
        d["num_primes"] = s.primes.size();
        return d;
      },
      py::arg("N"), py::arg("p"), py::arg("k"));

  m.def(
      "eigensystems",
      [](long N, long p, long k, long precision, long cutoff) {
        EigenArchive a;
        {
          py::gil_scoped_release release;
          a = archive_from(N, p, k, precision, cutoff);
        }
        py::list out;
        for (const auto& s : a.systems) out.append(system_dict(s));
        return out;
      },
      py::arg("N") = 1, py::arg("p"), py::arg("k"), py::arg("precision") = 10, py::arg("cutoff") = 100);

  m.def(
      "depth_table",
      [](long N, long p, long k, long precision, long cutoff, std::optional<std::string> linv_text) {
        EigenArchive a;
        {
          py::gil_scoped_release release;
          a = archive_from(N, p, k, precision, cutoff);
        }
        std::optional<LInvariantFile> linv;
        if (linv_text) {
          std::istringstream in(*linv_text);
          linv = parse_linv(in);
        }
        Analysis an = analyze(a, linv ? &*linv : nullptr);
        py::dict d;
        d["rows"] = table_rows(an);
        d["changepoints"] = an.table.changepoints();
        d["fully_split"] = an.table.fully_split;
        d["markdown"] = an.markdown();
        if (an.report) d["verification_pass"] = an.report->pass();
        return d;
      },
      py::arg("N") = 1, py::arg("p"), py::arg("k"), py::arg("precision") = 10, py::arg("cutoff") = 100,
      py::arg("linv") = py::none());

  m.def("parse_linv", [](const std::string& text) {
    std::istringstream in(text);
    LInvariantFile f = parse_linv(in);
    py::list records;
    for (const auto& r : f.records) {
      py::dict d;
      d["index"] = r.index;
      d["eps"] = r.eps;
      d["vL"] = r.vL;
      d["has_L"] = r.L.has_value();
      records.append(d);
    }
    return py::make_tuple(py::make_tuple(f.N, f.p, f.k), records);
  });
}
