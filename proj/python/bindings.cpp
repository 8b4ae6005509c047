#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lidskii/errors.hpp"
#include "lidskii/evolve.hpp"
#include "lidskii/fraccalc.hpp"
#include "lidskii/growth.hpp"
#include "lidskii/io.hpp"
#include "lidskii/verify.hpp"

namespace py = pybind11;
using namespace lidskii;

namespace {

// One solve config (JSON text) -> list of u(t) vectors, plus residuals if asked.
py::dict solve_json(const std::string& text, bool with_residual) {
    const SolveConfig cfg = parse_solve_config(text);
    const CauchySolution u(cfg.problem, cfg.grouping);
    py::list values, res;
    for (double t : cfg.times) {
        values.append(CVector(u(t)));
        if (with_residual) res.append(residual(u, t));
    }
    py::dict out;
    out["t"] = cfg.times;
    out["u"] = values;
    if (with_residual) out["residual"] = res;
    return out;
}

Grid1D to_grid(double a, double b, const std::vector<cplx>& v) { return Grid1D(a, b, v); }

}  // namespace

PYBIND11_MODULE(_lidskii, m) {
    m.doc() = "Abel-Lidskii root-vector summation";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", base.ptr());
    py::register_exception<NonDecayingError>(m, "NonDecayingError", base.ptr());

    m.def("solve_json", &solve_json, py::arg("config"), py::arg("residual") = false);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("margin", &CheckResult::margin)
        .def_readonly("detail", &CheckResult::detail);
    m.def(
        "verify", [](std::uint64_t seed) { return run_verify({seed, -1.0}); }, py::arg("seed") = 1);

    py::class_<GrowthReport>(m, "GrowthReport")
        .def_readonly("rho_hat", &GrowthReport::rho_hat)
        .def_readonly("genus", &GrowthReport::genus)
        .def_readonly("diverges_at_rho", &GrowthReport::diverges_at_rho);
    m.def(
        "convergence_exponent",
        [](std::vector<double> moduli) { return convergence_exponent(ZeroSequence(std::move(moduli)), default_lambda_grid()); },
        py::arg("moduli"));
    m.def(
        "log_damped_moduli", [](double rho, int count) { return log_damped_sequence(rho, count).modulus; },
        py::arg("rho"), py::arg("count"));
    m.def(
        "beta",
        [](std::vector<double> moduli, double r, int p, double rho1, double tail) {
            return beta_function(ZeroSequence(std::move(moduli)), r, p, rho1, tail).value;
        },
        py::arg("moduli"), py::arg("r"), py::arg("p"), py::arg("rho1"), py::arg("tail_exponent"));

    m.def(
        "rl_integral",
        [](double a, double b, const std::vector<cplx>& v, double psi) { return rl_integral(to_grid(a, b, v), psi).values; },
        py::arg("a"), py::arg("b"), py::arg("values"), py::arg("psi"));
    m.def(
        "rl_derivative",
        [](double a, double b, const std::vector<cplx>& v, double psi) { return rl_derivative(to_grid(a, b, v), psi).values; },
        py::arg("a"), py::arg("b"), py::arg("values"), py::arg("psi"));
}
