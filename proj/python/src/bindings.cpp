#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "msre/mc.hpp"
#include "msre/model.hpp"
#include "msre/pipeline.hpp"
#include "msre/rbdo.hpp"
#include "msre/ugf.hpp"

namespace py = pybind11;
using namespace msre;

namespace {

Acceptance make_acceptance(std::optional<double> demand,
                           std::optional<std::vector<double>> states) {
  if (demand) return Acceptance::demand_at_least(*demand);
  if (states) return Acceptance::accepted_states(*states);
  return {};
}

StructureFunction structure_by_name(const std::string& name) {
  if (name == "series") return StructureFunction::series();
  if (name == "parallel") return StructureFunction::parallel();
  if (name == "xor") return StructureFunction::exclusive_or();
  throw Error(ErrorCode::InvalidArgument, "unknown structure '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_msre, m) {
  m.doc() = "Hierarchical multi-state reliability engine";

  py::register_exception<Error>(m, "EngineError");

  py::class_<UFunction>(m, "UFunction")
      .def_static("make",
                  [](std::vector<double> g, std::vector<double> p) {
                    return make_ufunction(g, p);
                  },
                  py::arg("performances"), py::arg("probabilities"))
      .def("terms",
           [](const UFunction& u) {
             std::vector<std::pair<double, double>> out;
             for (const Term& t : u.terms())
               out.emplace_back(t.performance, t.probability);
             return out;
           })
      .def("prob_at_least", [](const UFunction& u, double demand) {
        return u.prob_at_least(demand);
      });

  m.def("compose",
        [](std::vector<UFunction> inputs, const std::string& structure) {
          return compose(inputs, structure_by_name(structure));
        },
        py::arg("inputs"), py::arg("structure"));

  py::class_<HierarchicalSystem>(m, "System")
      .def_property_readonly("levels",
                             [](const HierarchicalSystem& s) { return s.level_count; })
      .def_property_readonly("component_count",
                             [](const HierarchicalSystem& s) {
                               return s.components.size();
                             })
      .def_property_readonly("node_count", [](const HierarchicalSystem& s) {
        return s.nodes.size();
      });

  m.def("parse_model", &parse_model, py::arg("document"));
  m.def("load_model", &load_model, py::arg("path"));
  m.def("validate_model", &validate_model, py::arg("system"));

  m.def("analyze",
        [](const HierarchicalSystem& sys, double t, const std::string& method,
           std::optional<double> demand, std::optional<std::vector<double>> states) {
          Acceptance acc = make_acceptance(demand, states);
          AnalysisResult r = method == "purebn"
                                 ? system_reliability_purebn(sys, t, acc)
                                 : system_reliability_ugfbn(sys, t, acc);
          py::dict out;
          out["distribution"] = r.top_distribution;
          out["reliability"] = r.reliability;
          return out;
        },
        py::arg("system"), py::arg("time"), py::arg("method") = "ugfbn",
        py::arg("demand") = std::nullopt, py::arg("accept") = std::nullopt);

  m.def("simulate",
        [](const HierarchicalSystem& sys, double t, std::uint64_t trials,
           std::uint64_t seed, std::optional<double> demand,
           std::optional<std::vector<double>> states) {
          SimulationResult r =
              simulate(sys, t, trials, seed, make_acceptance(demand, states));
          py::dict out;
          out["estimate"] = r.estimate;
          out["std_error"] = r.std_error;
          out["trials"] = r.trials;
          out["frequencies"] = r.frequencies;
          return out;
        },
        py::arg("system"), py::arg("time"), py::arg("trials"), py::arg("seed"),
        py::arg("demand") = std::nullopt, py::arg("accept") = std::nullopt);

  m.def("optimize",
        [](const HierarchicalSystem& sys, double t) {
          OptimizeResult r = optimize(sys, t);
          py::dict out;
          out["feasible"] = r.feasible_found;
          out["exhaustive"] = r.exhaustive;
          out["design"] = r.best.counts;
          out["reliability"] = r.evaluation.reliability;
          out["mass_kg"] = r.evaluation.totals.mass_kg;
          out["power_w"] = r.evaluation.totals.power_w;
          out["cost_m"] = r.evaluation.totals.cost_m;
          return out;
        },
        py::arg("system"), py::arg("time") = -1.0);
}
