#include <optional>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "molscope/bounds.hpp"
#include "molscope/cli.hpp"
#include "molscope/construct.hpp"
#include "molscope/errors.hpp"
#include "molscope/search.hpp"

namespace py = pybind11;
using namespace molscope;

namespace {

using Rows = std::vector<std::vector<int>>;

Rows to_rows(const LatinSquare& l) {
  const int n = l.order();
  Rows rows(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = l.at(i, j);
  return rows;
}

LatinSquare latin(const Rows& rows) { return validate_latin(Square::from_rows(rows)); }

SearchOptions options(unsigned threads, std::optional<std::string> threshold) {
  SearchOptions opts;
  opts.threads = threads;
  if (threshold) opts.stop_threshold = BigInt(*threshold);
  return opts;
}

/// {"value": int, "exact": bool}; value is a lower bound when not exact.
template <class W>
py::dict to_dict(const CountResult<W>& r) {
  py::dict d;
  d["value"] = py::int_(py::str(r.value.exact_value().str()));
  d["exact"] = r.exact;
  return d;
}

py::dict report_dict(const BoundReport& rep) {
  py::dict values;
  for (const auto& v : rep.values) values[py::str(v.name)] = v.nats;
  py::dict checks;
  for (const auto& [name, holds] : rep.checks) checks[py::str(name)] = holds;
  py::dict d;
  d["values"] = values;
  d["checks"] = checks;
  d["propagated_error"] = rep.propagated_error;
  return d;
}

std::optional<std::string> threshold_arg(const py::object& t) {
  if (t.is_none()) return std::nullopt;
  return py::str(t).cast<std::string>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact enumeration and extension bounds for Latin squares and MOLS";
  py::register_exception<Error>(m, "Error");

  m.def("is_latin", [](const Rows& rows) {
    try {
      latin(rows);
      return true;
    } catch (const ValidationError&) {
      return false;
    }
  }, py::arg("rows"));
  m.def("orthogonal", [](const Rows& a, const Rows& b) { return check_orthogonal(latin(a), latin(b)); },
        py::arg("a"), py::arg("b"));

  m.def("cayley_table", [](std::vector<int> factors) { return to_rows(cayley_table(GroupSpec::make(factors))); },
        py::arg("factors"));
  m.def("kronecker", [](const Rows& a, const Rows& b) { return to_rows(kronecker(latin(a), latin(b))); },
        py::arg("a"), py::arg("b"));

  m.def("count_mols",
        [](int n, int k, unsigned threads, const py::object& t) {
          return to_dict(count_mols(n, k, options(threads, threshold_arg(t))));
        },
        py::arg("n"), py::arg("k") = 1, py::kw_only(), py::arg("threads") = 1u, py::arg("threshold") = py::none());
  m.def("count_mates",
        [](const Rows& rows, unsigned threads, const py::object& t) {
          return to_dict(count_mates(latin(rows), options(threads, threshold_arg(t))));
        },
        py::arg("rows"), py::kw_only(), py::arg("threads") = 1u, py::arg("threshold") = py::none());
  m.def("count_transversals",
        [](const Rows& rows, unsigned threads, const py::object& t) {
          return to_dict(enumerate_transversals(latin(rows), options(threads, threshold_arg(t))));
        },
        py::arg("rows"), py::kw_only(), py::arg("threads") = 1u, py::arg("threshold") = py::none());
  m.def("count_partitions",
        [](const Rows& rows, unsigned threads, const py::object& t) {
          return to_dict(count_transversal_partitions(latin(rows), options(threads, threshold_arg(t))));
        },
        py::arg("rows"), py::kw_only(), py::arg("threads") = 1u, py::arg("threshold") = py::none());
  m.def("count_systems",
        [](const Rows& regions, int k, unsigned threads, const py::object& t) {
          const auto sq = Square::from_rows(regions);
          const RegionPartition p(sq.order(), {sq.cells().begin(), sq.cells().end()});
          return to_dict(count_systems(p, k, options(threads, threshold_arg(t))));
        },
        py::arg("regions"), py::arg("k") = 1, py::kw_only(), py::arg("threads") = 1u,
        py::arg("threshold") = py::none());
  m.def("count_sudoku",
        [](int n, unsigned threads, const py::object& t) {
          return to_dict(count_systems(partition_boxes(n), 1, options(threads, threshold_arg(t))));
        },
        py::arg("n"), py::kw_only(), py::arg("threads") = 1u, py::arg("threshold") = py::none());

  m.def("integral_I", [](std::int64_t n, int d) { return integral_I(n, d); }, py::arg("n"), py::arg("d"));
  m.def("closed_form_estimate", &closed_form_estimate, py::arg("n"), py::arg("d"));
  m.def("extension_bound_mols", [](std::int64_t n, int k) { return extension_bound_mols(n, k); }, py::arg("n"),
        py::arg("k"));
  m.def("c_beta", [](double beta) { return c_beta(beta); }, py::arg("beta"));
  m.def("mols_count_bound", [](std::int64_t n, int k) { return report_dict(mols_count_bound(n, k)); },
        py::arg("n"), py::arg("k"));
  m.def("sudoku_extension_bound", [](std::int64_t n, int k) { return report_dict(sudoku_extension_bound(n, k)); },
        py::arg("n"), py::arg("k") = 0);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line interface; returns (exit_code, stdout, stderr).");
}
