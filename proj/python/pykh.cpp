#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kh/diagram.hpp"
#include "kh/homology.hpp"
#include "kh/polynomials.hpp"
#include "kh/qpmod.hpp"
#include "kh/resolution.hpp"
#include "kh/statecycle.hpp"

namespace py = pybind11;
using namespace kh;

namespace {

Diagram load(const std::string& text) {
  std::string t = text;
  std::size_t first = t.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && t.compare(first, 3, "PD[") == 0) return parse_pd(t);
  return from_braid(parse_braid_text(t));
}

RunConfig config_from(const std::string& mode, std::uint64_t budget, int threads) {
  RunConfig cfg;
  cfg.mode = mode == "modp" ? CoeffMode::ModP : CoeffMode::Exact;
  cfg.budget = budget;
  cfg.threads = threads;
  cfg.validate();
  return cfg;
}

py::dict table_dict(const BigradedTable& t) {
  py::dict out;
  py::list cells;
  for (auto& [tq, r] : t.ranks) {
    py::dict cell;
    cell["t"] = tq.first;
    cell["q"] = tq.second;
    cell["rank"] = r;
    cells.append(cell);
  }
  DiagonalProfile p = diagonal_profile(t);
  out["cells"] = cells;
  out["width"] = p.width();
  out["diagonals"] = p.deltas;
  out["thick"] = is_thick(t);
  out["components"] = t.components;
  out["mode"] = t.mode == CoeffMode::Exact ? "exact" : "modp";
  return out;
}

}  // namespace

PYBIND11_MODULE(pykh, m) {
  m.doc() = "Khovanov homology, state cycles and quasipositive modification";

  py::class_<Diagram>(m, "Diagram")
      .def("pd", &Diagram::to_pd)
      .def("crossings", &Diagram::n)
      .def("components", &Diagram::components)
      .def("writhe", &Diagram::writhe)
      .def("counts", &Diagram::counts)
      .def("__repr__", &Diagram::to_pd);

  m.def("diagram", &load, py::arg("text"),
        "parse a PD code or braid word ('s=3 1 -2 ...') into a diagram");
  m.def("mirror", &mirror);
  m.def("plus_adequate", &is_plus_adequate);
  m.def("minus_adequate", &is_minus_adequate);

  m.def(
      "jones", [](const Diagram& d) { return jones_bracket(d).str(); },
      "Jones polynomial via the Kauffman bracket");

  m.def(
      "homology",
      [](const Diagram& d, const std::string& mode, std::uint64_t budget, int threads) {
        return table_dict(homology_table(d, config_from(mode, budget, threads)));
      },
      py::arg("diagram"), py::arg("mode") = "exact", py::arg("budget") = 200'000'000,
      py::arg("threads") = 1);

  m.def("s_invariant", [](const Diagram& d) { return s_invariant(d); });
  m.def("lee_rank", [](const Diagram& d) { return lee_homology_rank(d); });

  m.def(
      "state_cycles",
      [](const Diagram& d, bool classified_only) {
        py::list out;
        Cube cube(d);
        enumerate_state_cycles(d, 0, d.n(), classified_only, [&](const Gen& g) {
          Bigrading b = cube.bigrading(g);
          const TracedState& ts = cube.traced(g.state);
          std::string marks(ts.nloops, '-');
          for (int l = 0; l < ts.nloops; ++l)
            if ((g.marks >> l) & 1) marks[l] = '+';
          py::dict rec;
          rec["state"] = state_to_string(State{g.state, d.n()});
          rec["marks"] = marks;
          rec["t"] = b.t;
          rec["q"] = b.q;
          rec["classified"] = classify(g, d).all();
          out.append(rec);
        });
        return out;
      },
      py::arg("diagram"), py::arg("classified_only") = false);

  m.def(
      "family",
      [](const std::string& name, int n) { return family(family_kind_from_name(name), n); },
      py::arg("name"), py::arg("n"));

  py::register_exception<ParseError>(m, "KhParseError");
  py::register_exception<BudgetError>(m, "KhBudgetError");
}
