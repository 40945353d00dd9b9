#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "gsys/error.hpp"
#include "gsys/io.hpp"
#include "gsys/scenario.hpp"
#include "gsys/symbols.hpp"

namespace py = pybind11;
using gsys::io::Json;

namespace {

// Symbols and maps cross the boundary as JSON text in the scenario format.
std::string star(const std::string& p, const std::string& phi1, const std::string& k, const std::string& phi2, int dim) {
  const auto a = gsys::io::symbol_from_json(Json::parse(p), dim, "p");
  const auto b = gsys::io::symbol_from_json(Json::parse(k), dim, "k");
  const auto f = gsys::io::affine_from_json(Json::parse(phi1), dim, "phi1");
  const auto g = gsys::io::affine_from_json(Json::parse(phi2), dim, "phi2");
  return gsys::io::symbol_to_json(gsys::star_compose(a, f, b, g)).dump();
}

std::string invert(const std::string& u, int dim) {
  return gsys::io::symbol_to_json(gsys::invert_unit(gsys::io::symbol_from_json(Json::parse(u), dim, "u"))).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact twisted group-cochain computations";
  m.attr("__version__") = GSYS_VERSION;

  py::register_exception<gsys::Error>(m, "GsysError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Json::exception& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<gsys::Scenario>(m, "Scenario")
      .def_readonly("name", &gsys::Scenario::name)
      .def_readonly("sha256", &gsys::Scenario::sha256)
      .def_readonly("dimension", &gsys::Scenario::dimension)
      .def_readonly("order", &gsys::Scenario::order)
      .def_property_readonly("cochains",
                             [](const gsys::Scenario& s) {
                               std::vector<std::string> names;
                               for (const auto& [k, v] : s.cochains) names.push_back(k);
                               return names;
                             })
      .def_property_readonly("task_count", [](const gsys::Scenario& s) { return s.tasks.size(); });

  m.def("load_scenario", [](const std::string& path) { return gsys::load_scenario(path); }, py::arg("path"));

  m.def(
      "report_json",
      [](const std::string& path, bool timing) {
        const auto r = gsys::run_scenario(gsys::load_scenario(path));
        return gsys::report_json(r, timing).dump(2);
      },
      py::arg("path"), py::arg("timing") = false, "Runs every task and returns the JSON report text.");

  m.def(
      "report_text",
      [](const std::string& path, int verbosity) {
        return gsys::report_text(gsys::run_scenario(gsys::load_scenario(path)), verbosity, false);
      },
      py::arg("path"), py::arg("verbosity") = 1);

  m.def("star_compose", &star, py::arg("p"), py::arg("phi1"), py::arg("k"), py::arg("phi2"), py::arg("dimension"));
  m.def("invert_unit", &invert, py::arg("u"), py::arg("dimension"));
}
