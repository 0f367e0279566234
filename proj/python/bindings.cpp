#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "projkit/error.hpp"
#include "projkit/expr.hpp"
#include "projkit/input.hpp"
#include "projkit/report.hpp"
#include "projkit/structure.hpp"
#include "projkit/symmetry.hpp"
#include "projkit/verify.hpp"

namespace py = pybind11;
using namespace projkit;

namespace {

// Parameters arrive as strings ("1/2", "-3") so Fractions and ints both work.
ParamEnv to_env(const std::map<std::string, std::string> &params)
{
    ParamEnv env;
    for (const auto &[name, text] : params) {
        env[name] = parse_rational(text);
    }
    return env;
}

ProjectiveStructure make_structure(const std::string &A, const std::string &B, const std::string &C,
                                   const std::string &D, int order, const std::map<std::string, std::string> &params)
{
    const ParamEnv env = to_env(params);
    return {expand(A, env, order), expand(B, env, order), expand(C, env, order), expand(D, env, order)};
}

// Nonzero coefficients of a jet as {(i, j): "p/q"}.
std::map<std::pair<int, int>, std::string> coefficients(const Jet2 &u)
{
    std::map<std::pair<int, int>, std::string> out;
    for (int d = 0; d <= u.order(); ++d) {
        for (int i = d; i >= 0; --i) {
            const Rational &c = u.coeff(i, d - i);
            if (sgn(c) != 0) {
                out[{i, d - i}] = to_string(c);
            }
        }
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact jets of projective structures y'' = A + B y' + C y'^2 + D y'^3";

    static py::exception<Error> error(m, "ProjkitError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            error(("(" + std::string(to_string(e.kind())) + ") " + e.what()).c_str());
        }
    });

    m.attr("DEFAULT_ORDER") = kDefaultOrder;

    py::class_<ProjectiveStructure>(m, "Structure")
        .def(py::init(&make_structure), py::arg("A"), py::arg("B") = "0", py::arg("C") = "0", py::arg("D") = "0",
             py::arg("order") = kDefaultOrder, py::arg("params") = std::map<std::string, std::string>{})
        .def_property_readonly("order", &ProjectiveStructure::order)
        .def_property_readonly("effective_order", &ProjectiveStructure::effective_order)
        .def("coefficients", [](const ProjectiveStructure &pi, int k) { return coefficients(pi[k]); }, py::arg("k"))
        .def("__str__", [](const ProjectiveStructure &pi) { return to_string(pi); })
        .def("__repr__", [](const ProjectiveStructure &pi) { return "<Structure order " + std::to_string(pi.order()) + ">"; });

    m.def("liouville", [](const ProjectiveStructure &pi) {
        const LiouvillePair L = liouville(pi);
        return std::make_pair(coefficients(L.L1), coefficients(L.L2));
    });
    m.def("is_linearizable", &is_linearizable);
    m.def(
        "is_symmetry",
        [](const std::string &a, const std::string &b, const ProjectiveStructure &pi,
           const std::map<std::string, std::string> &params) {
            const ParamEnv env = to_env(params);
            const int n = pi.order() + 2;
            return is_symmetry(VectorField(expand(a, env, n), expand(b, env, n)), pi);
        },
        py::arg("a"), py::arg("b"), py::arg("structure"), py::arg("params") = std::map<std::string, std::string>{});
    m.def(
        "symmetry_dim",
        [](const ProjectiveStructure &pi, int order) {
            const SymDimReport r = symmetry_dim(pi, order);
            return py::make_tuple(r.dim_at_order, r.dim_at_next, r.stabilized);
        },
        py::arg("structure"), py::arg("order") = kDefaultOrder);
    m.def("cubic_curve", [](const std::string &alpha, const std::string &beta) {
        return to_string(cubic_curve(parse_rational(alpha), parse_rational(beta)));
    });
    m.def("known_cases", &known_ids);
    m.def(
        "verify_case",
        [](const std::string &id, const std::map<std::string, std::string> &params, int order) {
            return to_json({run_case(id, to_env(params), order)});
        },
        py::arg("case_id"), py::arg("params") = std::map<std::string, std::string>{}, py::arg("order") = kDefaultOrder);
    m.def(
        "verify_all", [](int order) { return to_json(run_all(order)); }, py::arg("order") = kDefaultOrder);
}
