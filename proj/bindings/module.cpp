#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hybsat/cdcl.hpp"
#include "hybsat/dimacs.hpp"
#include "hybsat/generate.hpp"
#include "hybsat/hybrid.hpp"
#include "hybsat/mus.hpp"

namespace py = pybind11;
using namespace hybsat;

namespace {

const char* status_str(Status s) {
    switch (s) {
        case Status::Sat: return "SAT";
        case Status::Unsat: return "UNSAT";
        default: return "UNKNOWN";
    }
}

std::vector<std::vector<int>> clauses_as_ints(const Formula& f) {
    std::vector<std::vector<int>> out;
    out.reserve(f.original().size());
    for (const Clause& c : f.original()) {
        std::vector<int> cl;
        cl.reserve(c.size());
        for (Lit l : c.lits) cl.push_back(l.to_dimacs());
        out.push_back(std::move(cl));
    }
    return out;
}

py::dict stats_dict(const SolveStats& st) {
    py::dict d;
    d["decisions"] = st.decisions;
    d["propagations"] = st.propagations;
    d["conflicts"] = st.conflicts;
    d["learned"] = st.learned;
    d["removed"] = st.removed;
    d["restarts"] = st.restarts;
    d["flips"] = st.flips;
    d["local_minima"] = st.local_minima;
    d["fix_calls"] = st.fix_calls;
    d["seconds"] = st.seconds;
    return d;
}

Model model_from_ints(const Formula& f, const std::vector<int>& lits) {
    Model m(f.num_vars());
    for (int n : lits) {
        int v = n > 0 ? n : -n;
        if (v < 1 || v > f.num_vars())
            throw std::invalid_argument("model literal out of range");
        m.set(v, n > 0);
    }
    return m;
}

std::vector<int> model_to_ints(const Model& m) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(m.num_vars()));
    for (Var v = 1; v <= m.num_vars(); ++v) out.push_back(m.value(v) ? v : -v);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "hybrid local-search / clause-learning SAT solver";

    py::class_<Formula>(m, "Formula")
        .def_property_readonly("num_vars", &Formula::num_vars)
        .def_property_readonly("num_clauses",
                               [](const Formula& f) { return f.original().size(); })
        .def_property_readonly("num_learned", &Formula::num_learned)
        .def_property_readonly("clauses", &clauses_as_ints)
        .def("__repr__", [](const Formula& f) {
            std::ostringstream ss;
            ss << "Formula(vars=" << f.num_vars() << ", clauses=" << f.original().size() << ")";
            return ss.str();
        });

    py::class_<SolveOutcome>(m, "SolveOutcome")
        .def_property_readonly("status",
                               [](const SolveOutcome& o) { return status_str(o.status); })
        .def_property_readonly("model",
                               [](const SolveOutcome& o) -> py::object {
                                   if (o.status != Status::Sat) return py::none();
                                   return py::cast(model_to_ints(o.model));
                               })
        .def_property_readonly("stats", [](const SolveOutcome& o) { return stats_dict(o.stats); })
        .def("__repr__", [](const SolveOutcome& o) {
            return std::string("SolveOutcome(") + status_str(o.status) + ")";
        });

    m.def("parse_dimacs", [](const std::string& text) { return parse_dimacs(text); },
          py::arg("text"), "Parse DIMACS CNF text into a Formula.");
    m.def("parse_dimacs_file", &parse_dimacs_file, py::arg("path"));
    m.def("from_clauses", &make_formula, py::arg("num_vars"), py::arg("clauses"),
          "Build a formula from clauses of signed 1-based integers.");
    m.def("to_dimacs", [](const Formula& f) { return to_dimacs(f); }, py::arg("formula"));

    m.def(
        "solve_hybrid",
        [](Formula& f, uint64_t seed, uint64_t max_flips, double timeout, uint64_t flip_limit) {
            HybridParams params;
            params.seed = seed;
            params.max_flips = max_flips;
            params.budget = Budget{timeout, 0, flip_limit};
            py::gil_scoped_release release;
            return solve_hybrid(f, params);
        },
        py::arg("formula"), py::arg("seed") = 0, py::arg("max_flips") = 0,
        py::arg("timeout") = 1200.0, py::arg("flip_limit") = 0,
        "Local-search-driven solve with clause learning at local minima.");

    m.def(
        "solve_cdcl",
        [](Formula& f, double timeout, uint64_t conflict_limit) {
            Budget budget{timeout, conflict_limit, 0};
            py::gil_scoped_release release;
            return solve_cdcl(f, budget);
        },
        py::arg("formula"), py::arg("timeout") = 0.0, py::arg("conflict_limit") = 0,
        "Complete clause-learning solve.");

    m.def(
        "verify_model",
        [](const Formula& f, const std::vector<int>& lits) {
            return verify_model(f, model_from_ints(f, lits));
        },
        py::arg("formula"), py::arg("model"),
        "Check a model given as a list of signed literals.");

    m.def(
        "enumerate_mus",
        [](const Formula& f, size_t max_clauses, int max_vars) {
            return enumerate_mus(f, max_clauses, max_vars);
        },
        py::arg("formula"), py::arg("max_clauses") = 20, py::arg("max_vars") = 15,
        "All minimal unsatisfiable subsets as clause index lists (brute force).");

    m.def(
        "pigeonhole_dimacs",
        [](int pigeons, int holes) { return to_dimacs(pigeonhole(pigeons, holes)); },
        py::arg("pigeons"), py::arg("holes"));

    m.def(
        "random_3sat_dimacs",
        [](int num_vars, double ratio, uint64_t seed) {
            return to_dimacs(random_3sat(num_vars, ratio, seed));
        },
        py::arg("num_vars"), py::arg("ratio"), py::arg("seed"));
}
