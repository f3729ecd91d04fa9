#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcsp/io.hpp"
#include "pcsp/oracle.hpp"
#include "pcsp/propagate.hpp"
#include "pcsp/search.hpp"

namespace py = pybind11;

namespace {

pcsp::Labeling to_labeling(const py::dict& assignments) {
    pcsp::Labeling labeling;
    for (auto item : assignments) {
        labeling.assign(py::cast<std::string>(item.first),
                        pcsp::Label(py::cast<std::string>(item.second)));
    }
    return labeling;
}

py::dict from_labeling(const pcsp::Labeling& labeling) {
    py::dict assignments;
    for (const auto& [variable, label] : labeling.assignments()) {
        assignments[py::str(variable)] = label.text();
    }
    return assignments;
}

py::list from_labelings(const std::vector<pcsp::Labeling>& labelings) {
    py::list out;
    for (const auto& labeling : labelings) out.append(from_labeling(labeling));
    return out;
}

pcsp::search::OrderTag parse_heuristic(const std::string& text) {
    if (text == "declared") return pcsp::search::OrderTag::Declared;
    if (text == "max-degree") return pcsp::search::OrderTag::MaxDegree;
    if (text == "max-cardinality") return pcsp::search::OrderTag::MaxCardinality;
    throw pcsp::Error("unknown heuristic '" + text + "'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-domain constraint problems with necessity-valued constraints";

    py::register_exception<pcsp::Error>(m, "PcspError", PyExc_ValueError);

    py::class_<pcsp::Problem>(m, "Problem")
        .def_property_readonly("name", &pcsp::Problem::name)
        .def_property_readonly("variables",
                               [](const pcsp::Problem& p) {
                                   std::vector<std::string> names;
                                   for (const auto& var : p.variables()) {
                                       names.push_back(var.name());
                                   }
                                   return names;
                               })
        .def("domain",
             [](const pcsp::Problem& p, const std::string& variable) {
                 std::vector<std::string> labels;
                 for (const auto& label : p.variable(variable).domain()) {
                     labels.push_back(label.text());
                 }
                 return labels;
             })
        .def_property_readonly("constraint_ids",
                               [](const pcsp::Problem& p) {
                                   std::vector<std::string> ids;
                                   for (const auto& vc : p.constraints()) {
                                       ids.push_back(vc.id());
                                   }
                                   return ids;
                               })
        .def("labeling_count", &pcsp::Problem::labeling_count)
        .def("__repr__", [](const pcsp::Problem& p) {
            return "<Problem '" + p.name() + "': " +
                   std::to_string(p.variables().size()) + " variables, " +
                   std::to_string(p.constraints().size()) + " constraints>";
        });

    m.def("parse_problem",
          [](const std::string& text) { return pcsp::io::parse_problem(text); },
          py::arg("text"));
    m.def("write_problem", &pcsp::io::write_problem, py::arg("problem"));
    m.def("builtin_menu", &pcsp::io::builtin_menu);
    m.def(
        "random_problem",
        [](std::uint64_t seed, int n_vars, int domain_size, int n_constraints,
           int max_arity, double tightness, const std::vector<double>& necessity_levels) {
            pcsp::io::GeneratorSpec spec;
            spec.seed = seed;
            spec.n_vars = n_vars;
            spec.domain_size = domain_size;
            spec.n_constraints = n_constraints;
            spec.max_arity = max_arity;
            spec.tightness = tightness;
            spec.necessity_levels.clear();
            for (double level : necessity_levels) {
                spec.necessity_levels.push_back(pcsp::Degree::from_double(level));
            }
            return pcsp::io::random_problem(spec);
        },
        py::arg("seed") = 0, py::arg("n_vars") = 3, py::arg("domain_size") = 3,
        py::arg("n_constraints") = 3, py::arg("max_arity") = 2,
        py::arg("tightness") = 0.5,
        py::arg("necessity_levels") = std::vector<double>{1.0});

    m.def(
        "pi_star",
        [](const pcsp::Problem& p, const py::dict& labeling) {
            return pcsp::pi_star(p, to_labeling(labeling)).to_double();
        },
        py::arg("problem"), py::arg("labeling"),
        "Compatibility of a complete labeling: 1 minus the highest necessity "
        "among the constraints it violates.");
    m.def(
        "partial_bound",
        [](const pcsp::Problem& p, const py::dict& labeling) {
            return pcsp::partial_bound(p, to_labeling(labeling)).to_double();
        },
        py::arg("problem"), py::arg("labeling"));

    m.def(
        "enumerate_best",
        [](const pcsp::Problem& p, std::uint64_t budget) {
            const auto best = pcsp::oracle::enumerate_best(p, budget);
            py::dict out;
            out["consistency"] = best.consistency.to_double();
            out["labelings"] = from_labelings(best.labelings);
            return out;
        },
        py::arg("problem"), py::arg("budget") = pcsp::oracle::default_budget,
        "Exhaustive reference: the consistency degree and every best labeling.");

    m.def(
        "solve",
        [](const pcsp::Problem& p, double alpha, double beta, bool all_best,
           bool forward_check, const std::optional<std::uint64_t>& node_limit,
           const std::optional<std::vector<std::string>>& order,
           const std::string& heuristic, const std::string& value_order) {
            pcsp::search::SearchOptions options;
            options.alpha0 = pcsp::Degree::from_double(alpha);
            options.beta0 = pcsp::Degree::from_double(beta);
            options.all_best = all_best;
            options.forward_check = forward_check;
            options.node_limit = node_limit;
            options.variable_order = order;
            options.heuristic = parse_heuristic(heuristic);
            if (value_order == "declared") {
                options.value_order = pcsp::search::ValueOrder::Declared;
            } else if (value_order == "bound") {
                options.value_order = pcsp::search::ValueOrder::Bound;
            } else {
                throw pcsp::Error("unknown value order '" + value_order + "'");
            }
            const auto result = pcsp::search::solve(p, options);
            py::dict out;
            out["consistency"] = result.best_value.to_double();
            out["labelings"] = from_labelings(result.best_labelings);
            out["status"] = std::string(pcsp::search::to_string(result.status));
            out["nodes"] = result.nodes_expanded;
            out["cutoffs"] = result.cutoffs;
            return out;
        },
        py::arg("problem"), py::arg("alpha") = 0.0, py::arg("beta") = 1.0,
        py::arg("all_best") = false, py::arg("forward_check") = false,
        py::arg("node_limit") = py::none(), py::arg("order") = py::none(),
        py::arg("heuristic") = "declared", py::arg("value_order") = "declared",
        "Branch-and-bound search for the consistency degree and best labelings.");

    m.def(
        "enforce_ac",
        [](const pcsp::Problem& p, double gamma) {
            const auto result = pcsp::propagate::enforce_ac(
                p, pcsp::Degree::from_double(gamma));
            py::dict out;
            out["delta"] = result.delta.to_double();
            py::list inferences;
            for (const auto& inference : result.inferences) {
                py::dict entry;
                entry["variable"] = inference.variable;
                entry["label"] = inference.label.text();
                entry["necessity"] = inference.necessity.to_double();
                inferences.append(entry);
            }
            out["inferences"] = inferences;
            out["rounds"] = result.rounds;
            out["arc_consistent"] = result.arc_consistent;
            out["closed_problem"] = result.closed_problem;
            return out;
        },
        py::arg("problem"), py::arg("gamma") = 0.0,
        "Possibilistic arc consistency: inferred unary restrictions and the "
        "delta upper bound.");

    m.def(
        "bound_b",
        [](const pcsp::Problem& p, const std::string& variable, const std::string& label,
           const std::string& constraint_id) {
            const pcsp::ValuedConstraint* vc = p.find_constraint(constraint_id);
            if (vc == nullptr) {
                throw pcsp::Error("unknown constraint '" + constraint_id + "'");
            }
            return pcsp::propagate::bound_b(p, variable, pcsp::Label(label), *vc)
                .to_double();
        },
        py::arg("problem"), py::arg("variable"), py::arg("label"),
        py::arg("constraint_id"));

    m.def(
        "forward_check",
        [](const pcsp::Problem& p, const py::dict& partial,
           const std::vector<std::string>& unassigned) {
            const auto table = pcsp::propagate::forward_check(
                p, to_labeling(partial),
                std::set<std::string>(unassigned.begin(), unassigned.end()));
            py::dict out;
            for (const auto& [variable, row] : table) {
                py::dict bounds;
                for (const auto& [label, bound] : row) {
                    bounds[py::str(label.text())] = bound.to_double();
                }
                out[py::str(variable)] = bounds;
            }
            return out;
        },
        py::arg("problem"), py::arg("partial"), py::arg("unassigned"));
}
