#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "qig/group_actions.hpp"
#include "qig/monotone_function.hpp"
#include "qig/petz.hpp"
#include "qig/spectral.hpp"
#include "qig/state_space.hpp"
#include "qig/suites.hpp"

namespace py = pybind11;
using namespace qig;

namespace {

using carray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const carray& arr) {
    const auto buf = arr.request();
    if (buf.ndim != 2 || buf.shape[0] != buf.shape[1])
        throw UsageError("expected a square 2-d complex array");
    const int n = static_cast<int>(buf.shape[0]);
    ComplexMatrix m(n);
    const auto* data = static_cast<const std::complex<double>*>(buf.ptr);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m(r, c) = data[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)];
    return m;
}

HermitianMatrix to_hermitian(const carray& arr) { return HermitianMatrix(to_matrix(arr)); }

py::array from_matrix(const ComplexMatrix& m) {
    const int n = m.dim();
    py::array_t<std::complex<double>> out({n, n});
    auto buf = out.mutable_unchecked<2>();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            buf(r, c) = m(r, c);
    return out;
}

DensityState to_state(const carray& arr) { return DensityState(to_hermitian(arr)); }

MetricSpec to_metric(const std::string& spec, double kappa_prefactor) {
    return MetricSpec{MonotoneFunctionSpec::parse(spec), kappa_prefactor};
}

TangentVector state_tangent(const carray& arr) {
    return TangentVector(to_hermitian(arr), TangentVector::Kind::StateSpace);
}

}  // namespace

PYBIND11_MODULE(_qig, mod) {
    mod.doc() = "Monotone metrics and deformed group actions on faithful density matrices";
    mod.attr("__version__") = kVersion;

    py::register_exception<UsageError>(mod, "QigUsageError", PyExc_ValueError);
    py::register_exception<DomainError>(mod, "QigDomainError", PyExc_ValueError);
    py::register_exception<DimensionError>(mod, "QigDimensionError", PyExc_ValueError);
    py::register_exception<ConditioningError>(mod, "QigConditioningError", PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(mod, "QigConvergenceError", PyExc_ArithmeticError);

    mod.def("eval_f", [](const std::string& spec, double x) {
        return eval_f(MonotoneFunctionSpec::parse(spec), x);
    }, py::arg("spec"), py::arg("x"),
    "Evaluate the scalar representing function named by spec at x > 0");

    mod.def("hermitian_eig", [](const carray& a) {
        const auto dec = hermitian_eig(to_hermitian(a));
        return py::make_tuple(py::cast(dec.eigenvalues), from_matrix(dec.u));
    }, py::arg("a"), "Eigenvalues (ascending) and unitary eigenvector matrix of a Hermitian array");

    mod.def("matrix_exp", [](const carray& a) { return from_matrix(matrix_exp(to_hermitian(a)).matrix()); }, py::arg("a"));
    mod.def("matrix_log", [](const carray& a) { return from_matrix(matrix_log(hermitian_eig(to_hermitian(a))).matrix()); }, py::arg("a"));
    mod.def("matrix_power", [](const carray& a, double p) {
        return from_matrix(matrix_power(hermitian_eig(to_hermitian(a)), p).matrix());
    }, py::arg("a"), py::arg("p"));

    mod.def("random_density", [](int n, std::uint64_t seed) {
        return from_matrix(random_density(n, seed).matrix());
    }, py::arg("n"), py::arg("seed"), "Seeded random faithful density matrix");
    mod.def("random_observable", [](int n, std::uint64_t seed) {
        return from_matrix(random_observable(n, seed).matrix());
    }, py::arg("n"), py::arg("seed"), "Seeded random Hermitian observable");
    mod.def("random_unitary", [](int n, std::uint64_t seed) {
        return from_matrix(random_unitary(n, seed));
    }, py::arg("n"), py::arg("seed"), "Seeded Haar-like random unitary");

    mod.def("metric_eval", [](const std::string& spec, const carray& rho, const carray& v,
                              const carray& w, double kappa_prefactor) {
        return metric_eval(to_metric(spec, kappa_prefactor), to_state(rho), state_tangent(v), state_tangent(w));
    }, py::arg("spec"), py::arg("rho"), py::arg("v"), py::arg("w"), py::arg("kappa_prefactor") = 1.0,
    "Monotone metric pairing of two traceless Hermitian tangents at a density matrix");

    mod.def("apply_K", [](const std::string& spec, const carray& rho, const carray& v) {
        const auto st = to_state(rho);
        const auto K = build_K(st.positive(), MonotoneFunctionSpec::parse(spec));
        return from_matrix(K.apply(to_hermitian(v)).matrix());
    }, py::arg("spec"), py::arg("rho"), py::arg("v"), "Apply the metric superoperator of spec at rho");

    mod.def("gradient_field", [](const std::string& spec, const carray& rho, const carray& a,
                                 double kappa_prefactor) {
        const auto st = to_state(rho);
        return from_matrix(gradient_field(to_metric(spec, kappa_prefactor), Observable(to_hermitian(a)), st).matrix());
    }, py::arg("spec"), py::arg("rho"), py::arg("a"), py::arg("kappa_prefactor") = 1.0,
    "Metric gradient of the expectation function of observable a at rho");

    mod.def("fund_X", [](const carray& b, const carray& rho) {
        return from_matrix(fund_X(to_hermitian(b), to_state(rho)).matrix());
    }, py::arg("b"), py::arg("rho"));
    mod.def("fund_Y", [](const carray& a, const carray& rho) {
        return from_matrix(fund_Y(to_hermitian(a), to_state(rho)).matrix());
    }, py::arg("a"), py::arg("rho"));
    mod.def("fund_W", [](const carray& a, const carray& rho) {
        return from_matrix(fund_W(to_hermitian(a), to_state(rho)).matrix());
    }, py::arg("a"), py::arg("rho"));
    mod.def("fund_W_deformed", [](const carray& a, const carray& rho, double kappa) {
        return from_matrix(fund_W_deformed(to_hermitian(a), to_state(rho), DeformationParam(kappa)).matrix());
    }, py::arg("a"), py::arg("rho"), py::arg("kappa"));
    mod.def("fund_Z", [](const carray& a, const carray& rho, double kappa) {
        return from_matrix(fund_Z(to_hermitian(a), to_state(rho), DeformationParam(kappa)).matrix());
    }, py::arg("a"), py::arg("rho"), py::arg("kappa"));

    mod.def("act_beta", [](const carray& g, const carray& rho, double kappa) {
        return from_matrix(act_beta_deformed(GLElement(to_matrix(g)), to_state(rho), DeformationParam(kappa)).matrix());
    }, py::arg("g"), py::arg("rho"), py::arg("kappa") = 1.0,
    "Deformed conjugation action of an invertible g on a density matrix");
    mod.def("act_gamma", [](const carray& u, const carray& a, const carray& rho, double kappa) {
        return from_matrix(act_gamma_deformed(CotangentElement(to_matrix(u), to_hermitian(a)), to_state(rho), DeformationParam(kappa)).matrix());
    }, py::arg("u"), py::arg("a"), py::arg("rho"), py::arg("kappa") = 1.0,
    "Deformed cotangent-group action (u unitary, a Hermitian) on a density matrix");
    mod.def("act_zeta", [](const carray& u, const carray& a, const carray& x) {
        return from_matrix(act_zeta(CotangentElement(to_matrix(u), to_hermitian(a)), to_hermitian(x)).matrix());
    }, py::arg("u"), py::arg("a"), py::arg("x"), "Affine action u x u^dag + a on Hermitian x");

    mod.def("monotonicity_witness", [](const std::string& spec, int n, int trials, std::uint64_t seed)
                -> py::object {
        const auto w = matrix_monotonicity_witness(MonotoneFunctionSpec::parse(spec), n, trials, seed);
        if (!w)
            return py::none();
        py::dict d;
        d["a"] = from_matrix(w->a.matrix());
        d["b"] = from_matrix(w->b.matrix());
        d["lambda_min"] = w->lambda_min;
        d["trial"] = w->trial;
        return d;
    }, py::arg("spec"), py::arg("n"), py::arg("trials"), py::arg("seed"),
    "Search for an ordered pair violating matrix monotonicity; None when no violation is found");

    mod.def("derivative_at_zero", [](double kappa) {
        const auto s = derivative_at_zero_plus(MonotoneFunctionSpec::power_interpolation(kappa));
        py::dict d;
        d["divergent"] = s.divergent;
        d["value"] = s.value;
        return d;
    }, py::arg("kappa"), "Extrapolated one-sided derivative of the power-interpolation function at 0+");

    mod.def("fisher_rao", [](const std::vector<double>& p, const std::vector<double>& dv,
                             const std::vector<double>& dw) {
        return fisher_rao_eval(p, dv, dw);
    }, py::arg("p"), py::arg("dv"), py::arg("dw"), "Classical Fisher information pairing");
}
