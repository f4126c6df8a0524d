#include "hopfcyc/cochains.hpp"
#include "hopfcyc/hopf.hpp"
#include "hopfcyc/scenario.hpp"
#include "hopfcyc/weil.hpp"
#include "hopfcyc/window.hpp"
#include "hopfcyc/workbench.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>

namespace py = pybind11;
using namespace hopfcyc;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_python(const py::object& o) { return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

// A scenario argument is either YAML text or a path to a file.
Scenario scenario_of(const std::string& text_or_path)
{
    if (text_or_path.find('\n') == std::string::npos && std::ifstream(text_or_path).good())
        return load_scenario(text_or_path);
    return parse_scenario(text_or_path, "<string>");
}

py::dict report_dict(const CheckReport& r)
{
    py::list violations;
    for (const auto& v : r.violations())
        violations.append(py::make_tuple(v.check, v.witness));
    py::dict d;
    d["passed"] = r.passed();
    d["checked"] = r.checked();
    d["failures"] = r.failures();
    d["violations"] = violations;
    return d;
}

std::shared_ptr<AlgebraCochains> cochains(const std::string& algebra, bool normalized)
{
    AlgebraPtr a = builtin_algebra(algebra);
    if (normalized && !a->unit_index())
        a = rebase_unit(*a).algebra;
    return std::make_shared<AlgebraCochains>(a, normalized);
}

WindowSpec window(int max_level, bool cyclic)
{
    WindowSpec spec;
    spec.max_level = max_level;
    spec.cyclic = cyclic;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_hopfcyc, m)
{
    m.doc() = "Exact cyclic cohomology of graded algebras and Hopf actions";

    // leaked on purpose: the types must outlive interpreter shutdown
    static auto* scenario_error = new py::exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    static auto* window_error = new py::exception<WindowTooSmall>(m, "WindowTooSmall", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const ScenarioError& e) {
            py::object err = py::handle(scenario_error->ptr())(e.what());
            py::setattr(err, "line", py::int_(e.line));
            py::setattr(err, "field", py::str(e.field));
            PyErr_SetObject(scenario_error->ptr(), err.ptr());
        } catch (const WindowTooSmall& e) {
            PyErr_SetString(window_error->ptr(), e.what());
        }
    });

    m.def("builtin_algebras", &builtin_algebra_names);
    m.def("builtin_hopf_algebras", &builtin_hopf_names);
    m.def("builtin_lie_algebras", &builtin_lie_algebra_names);

    m.def(
        "run_scenario",
        [](const std::string& scenario, std::optional<std::vector<std::string>> verbs, std::optional<int> window,
           std::optional<int> levels, std::optional<int> truncate, bool concurrent, bool informational) {
            const Scenario s = scenario_of(scenario);
            RunOptions o;
            o.window = window;
            o.levels = levels;
            o.truncate = truncate;
            o.verbs = verbs.value_or(std::vector<std::string>{});
            o.concurrent = concurrent;
            RunReport r;
            {
                py::gil_scoped_release release;
                r = run_scenario(s, o);
            }
            py::dict out = to_python(report_json(r, informational ? ReportSection::kAll : ReportSection::kComparable));
            py::dict certs;
            for (const auto& t : r.tasks)
                if (t.certificate)
                    certs[py::int_(t.index)] = to_python(*t.certificate);
            out["certificates"] = certs;
            return out;
        },
        py::arg("scenario"), py::arg("verbs") = py::none(), py::arg("window") = py::none(),
        py::arg("levels") = py::none(), py::arg("truncate") = py::none(), py::arg("concurrent") = true,
        py::arg("informational") = false,
        "Runs a scenario given as YAML text or a file path; returns the report as a dict.");

    m.def(
        "format_scenario", [](const std::string& scenario) { return format_scenario(scenario_of(scenario)); },
        py::arg("scenario"));

    m.def(
        "verify_certificate",
        [](const std::string& scenario, const py::object& certificate) {
            const VerifyOutcome v = verify_certificate_json(scenario_of(scenario), from_python(certificate));
            const char* kind = v.kind == VerifyOutcome::Kind::kPass   ? "pass"
                               : v.kind == VerifyOutcome::Kind::kFail ? "fail"
                                                                      : "reference-error";
            return py::make_tuple(kind, v.message);
        },
        py::arg("scenario"), py::arg("certificate"));

    m.def(
        "hc",
        [](const std::string& algebra, int degree, int max_level, bool normalized) {
            return compute_HC(*cochains(algebra, normalized), degree, window(max_level, true));
        },
        py::arg("algebra"), py::arg("degree"), py::arg("max_level") = 6, py::arg("normalized") = false);
    m.def(
        "hh",
        [](const std::string& algebra, int degree, int max_level, bool normalized) {
            return compute_HH(*cochains(algebra, normalized), degree, window(max_level, false));
        },
        py::arg("algebra"), py::arg("degree"), py::arg("max_level") = 6, py::arg("normalized") = false);
    m.def(
        "hp",
        [](const std::string& algebra, int parity, int max_level) {
            const PeriodicResult r = compute_HP(*cochains(algebra, false), parity, window(max_level, true));
            py::dict d;
            d["dim"] = r.dim;
            d["stabilized"] = r.stabilized;
            d["hc_dims"] = r.hc_dims;
            d["shift_ranks"] = r.shift_ranks;
            return d;
        },
        py::arg("algebra"), py::arg("parity"), py::arg("max_level") = 6);

    m.def(
        "check_cyclic_axioms",
        [](const std::string& algebra, int levels) { return report_dict(check_cyclic_axioms(*cochains(algebra, false), levels)); },
        py::arg("algebra"), py::arg("levels") = 3);
    m.def(
        "check_operator_identities",
        [](const std::string& algebra, int levels) {
            return report_dict(check_operator_identities(*cochains(algebra, false), levels));
        },
        py::arg("algebra"), py::arg("levels") = 3);
    m.def(
        "check_dga", [](const std::string& algebra) { return report_dict(check_dga_axioms(*builtin_algebra(algebra))); },
        py::arg("algebra"));

    m.def(
        "weil_cohomology",
        [](const std::string& lie, int q, bool basic) {
            TruncatedWeil w(builtin_lie_algebra(lie), q);
            const WeilCohomology h = weil_cohomology(w, basic);
            std::vector<std::vector<std::string>> reps;
            for (const auto& per_degree : h.representatives) {
                reps.emplace_back();
                for (const auto& e : per_degree)
                    reps.back().push_back(w.format(e));
            }
            py::dict d;
            d["complex_dims"] = h.complex_dims;
            d["dims"] = h.dims;
            d["representatives"] = reps;
            d["euler"] = h.euler;
            return d;
        },
        py::arg("lie"), py::arg("q"), py::arg("basic") = false);
}
