// Python module _core: functions, functionals, bounds and the verifier.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chebdiff/analyze.hpp"
#include "chebdiff/bounds.hpp"
#include "chebdiff/error.hpp"
#include "chebdiff/functional.hpp"
#include "chebdiff/report.hpp"
#include "chebdiff/verify.hpp"

namespace py = pybind11;
using namespace chebdiff;

namespace {

IntervalConfig make_cfg(double a, double u, double v, double b, bool nested) {
    IntervalConfig cfg{a, u, v, b, nested ? IntervalConfig::Mode::nested : IntervalConfig::Mode::overlap};
    return cfg;
}

py::dict quad_dict(const QuadResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["err"] = r.err_est;
    d["evals"] = r.evals;
    return d;
}

py::dict bound_dict(const BoundResult& r) {
    py::dict d;
    d["theorem"] = r.theorem;
    d["rhs"] = r.rhs;
    d["inputs"] = r.inputs;
    d["preconditions_ok"] = r.preconditions_ok;
    d["checks"] = r.checks;
    d["note"] = r.note;
    return d;
}

ClassConstants constants_from(const py::dict& c) {
    ClassConstants k;
    for (auto item : c) {
        const auto key = py::cast<std::string>(item.first);
        if (key == "V") k.total_variation = py::cast<double>(item.second);
        else if (key == "L") k.lipschitz = py::cast<double>(item.second);
        else if (key == "holder") {
            auto [order, H] = py::cast<std::pair<double, double>>(item.second);
            k.holder = HolderConstant{order, H};
        } else if (key == "norms") {
            k.lp_norms = py::cast<std::map<double, double>>(item.second);
        } else if (key == "monotone") k.monotone_nondecreasing = py::cast<bool>(item.second);
        else if (key == "range") {
            auto [m, M] = py::cast<std::pair<double, double>>(item.second);
            k.range_bounds = RangeBounds{m, M};
        } else {
            throw PreconditionError("unknown constant '" + key + "'");
        }
    }
    return k;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Chebyshev functional, differences of functionals and their bounds";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());
    auto pre = py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<MissingConstantError>(m, "MissingConstantError", pre.ptr());

    py::class_<FunctionSpec>(m, "Function")
        .def(py::init([](const std::string& src, double lo, double hi, py::dict constants) {
                 return parse_function(src, Interval{lo, hi}, constants_from(constants));
             }),
             py::arg("source"), py::arg("lo") = 0.0, py::arg("hi") = 1.0, py::arg("constants") = py::dict())
        .def("__call__", &FunctionSpec::evaluate)
        .def_property_readonly("source", &FunctionSpec::source)
        .def_property_readonly("domain", [](const FunctionSpec& f) {
            return std::make_pair(f.domain().lo, f.domain().hi);
        })
        .def_property_readonly("breakpoints", &FunctionSpec::breakpoints)
        .def_property_readonly("jumps", [](const FunctionSpec& f) {
            std::vector<std::pair<double, double>> out;
            for (const Jump& j : f.jumps()) out.emplace_back(j.at, j.size);
            return out;
        })
        .def_property_readonly("is_continuous", &FunctionSpec::is_continuous)
        .def("__repr__", [](const FunctionSpec& f) { return "Function('" + f.source() + "')"; });

    m.def("chebyshev_functional",
          [](const FunctionSpec& f, const FunctionSpec& g, double lo, double hi, double tol) {
              return quad_dict(chebyshev_functional(f, g, lo, hi, tol));
          },
          py::arg("f"), py::arg("g"), py::arg("lo") = 0.0, py::arg("hi") = 1.0, py::arg("tol") = kDefaultTol);

    m.def("chebyshev_via_identity",
          [](const FunctionSpec& f, const FunctionSpec& g, double lo, double hi, const std::string& which,
             double tol) {
              Identity id;
              if (which == "cerone") id = Identity::cerone;
              else if (which == "dragomir") id = Identity::dragomir;
              else throw PreconditionError("identity must be 'cerone' or 'dragomir'");
              return quad_dict(chebyshev_via_identity(f, g, lo, hi, id, tol));
          },
          py::arg("f"), py::arg("g"), py::arg("lo") = 0.0, py::arg("hi") = 1.0, py::arg("identity") = "cerone",
          py::arg("tol") = kDefaultTol);

    m.def("functional_difference",
          [](const FunctionSpec& f, const FunctionSpec& g, double a, double u, double v, double b, bool nested,
             double tol) {
              const auto d = functional_difference(f, g, make_cfg(a, u, v, b, nested), tol);
              py::dict out;
              out["left"] = quad_dict(d.t_left);
              out["right"] = quad_dict(d.t_right);
              out["diff"] = d.diff_abs;
              out["err"] = d.err_total;
              return out;
          },
          py::arg("f"), py::arg("g"), py::arg("a"), py::arg("u"), py::arg("v"), py::arg("b"),
          py::arg("nested") = false, py::arg("tol") = kDefaultTol);

    m.def("pre_gruss",
          [](const FunctionSpec& f, const FunctionSpec& g, double a, double u, double v, double b, bool nested) {
              const auto r = generalized_pre_gruss(f, g, make_cfg(a, u, v, b, nested));
              py::dict out;
              out["level1"] = r.level1;
              out["level2"] = r.level2;
              out["err1"] = r.err1;
              out["err2"] = r.err2;
              return out;
          },
          py::arg("f"), py::arg("g"), py::arg("a"), py::arg("u"), py::arg("v"), py::arg("b"),
          py::arg("nested") = false);

    m.def("bound_ids", &bound_ids);
    m.def("sweep_ids", &sweep_ids);

    m.def("evaluate_bound",
          [](const std::string& id, const BoundParams& params, double a, double u, double v, double b, bool nested,
             const FunctionSpec* f, const FunctionSpec* g, double tol) {
              return bound_dict(evaluate_bound(id, params, make_cfg(a, u, v, b, nested), f, g, tol));
          },
          py::arg("id"), py::arg("params") = BoundParams{}, py::arg("a") = 0.0, py::arg("u") = 0.25,
          py::arg("v") = 0.75, py::arg("b") = 1.0, py::arg("nested") = false, py::arg("f") = nullptr,
          py::arg("g") = nullptr, py::arg("tol") = kDefaultTol);

    m.def("params_from",
          [](const FunctionSpec& f, const FunctionSpec& g, double a, double u, double v, double b, bool nested,
             double p, double alpha) { return params_from(f, g, make_cfg(a, u, v, b, nested), p, alpha); },
          py::arg("f"), py::arg("g"), py::arg("a") = 0.0, py::arg("u") = 0.25, py::arg("v") = 0.75,
          py::arg("b") = 1.0, py::arg("nested") = false, py::arg("p") = 2.0, py::arg("alpha") = 2.0);

    m.def("beta", &beta, py::arg("x"), py::arg("y"));

    // Runs a sweep and hands back JSON lines; the package wrapper decodes them.
    m.def("_verify_jsonl",
          [](const std::string& config_json) {
              const RunConfig cfg = run_config_from_json(nlohmann::json::parse(config_json));
              std::vector<VerificationRecord> records;
              {
                  py::gil_scoped_release release;
                  if (cfg.budget > 0) set_default_budget(cfg.budget);
                  records = sweep(build_corpus(cfg), cfg.theorem_list(), cfg.sweep_options());
              }
              std::ostringstream out;
              write_jsonl(out, records);
              return out.str();
          },
          py::arg("config_json"));

    m.def("_summary_text",
          [](const std::string& jsonl) {
              std::istringstream in(jsonl);
              std::ostringstream out;
              write_summary(out, tightness_report(read_jsonl(in)));
              return out.str();
          },
          py::arg("jsonl"));
}
