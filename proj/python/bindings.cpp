#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "passcov/experiments.hpp"
#include "passcov/mc_oracle.hpp"
#include "passcov/optimizer.hpp"
#include "passcov/piecewise_dep.hpp"
#include "passcov/rng.hpp"

namespace py = pybind11;
using namespace passcov;

PYBIND11_MODULE(_core, m) {
    m.doc() = "covert pinching-antenna downlink: detectability and rate core";

    py::register_exception<Error>(m, "PasscovError");

    // Vec3 is std::array<double, 3>: plain 3-element sequences on the
    // python side.
    py::class_<SystemGeometry>(m, "SystemGeometry")
        .def(py::init<>())
        .def_readwrite("length", &SystemGeometry::length)
        .def_readwrite("height", &SystemGeometry::height)
        .def_readwrite("lateral_offset", &SystemGeometry::lateral_offset)
        .def_readwrite("carrier_hz", &SystemGeometry::carrier_hz)
        .def_readwrite("effective_index", &SystemGeometry::effective_index)
        .def_readonly("wavelength", &SystemGeometry::wavelength)
        .def_readonly("guide_wavelength", &SystemGeometry::guide_wavelength)
        .def_readonly("eta", &SystemGeometry::eta)
        .def("finalize", &SystemGeometry::finalize)
        .def("finalized", &SystemGeometry::finalized);

    py::enum_<Waveguide>(m, "Waveguide")
        .value("Covert", Waveguide::Covert)
        .value("Jamming", Waveguide::Jamming);

    py::enum_<RadiationModel>(m, "RadiationModel")
        .value("General", RadiationModel::General)
        .value("Proportional", RadiationModel::Proportional)
        .value("Equal", RadiationModel::Equal);

    py::class_<RadiationSpec>(m, "RadiationSpec")
        .def(py::init<>())
        .def_readwrite("model", &RadiationSpec::model)
        .def_readwrite("delta", &RadiationSpec::delta)
        .def_readwrite("delta_sq", &RadiationSpec::delta_sq)
        .def_readwrite("rho", &RadiationSpec::rho);

    py::class_<DesignPoint>(m, "DesignPoint")
        .def(py::init<>())
        .def_readwrite("p_c", &DesignPoint::p_c)
        .def_readwrite("p_j_max", &DesignPoint::p_j_max)
        .def_readwrite("rad_c", &DesignPoint::rad_c)
        .def_readwrite("rad_j", &DesignPoint::rad_j)
        .def_readwrite("x_c", &DesignPoint::x_c)
        .def_readwrite("x_j", &DesignPoint::x_j);

    py::class_<WardenSet>(m, "WardenSet")
        .def(py::init<>())
        .def_readwrite("positions", &WardenSet::positions)
        .def_readwrite("sigma_w_sq", &WardenSet::sigma_w_sq);

    py::class_<WardenProfile>(m, "WardenProfile")
        .def(py::init<>())
        .def_readwrite("a_c", &WardenProfile::a_c)
        .def_readwrite("a_j", &WardenProfile::a_j)
        .def_readwrite("p_c", &WardenProfile::p_c)
        .def_readwrite("p_j_max", &WardenProfile::p_j_max)
        .def_readwrite("sigma_w_sq", &WardenProfile::sigma_w_sq)
        .def_readonly("alpha1", &WardenProfile::alpha1)
        .def_readonly("alpha2", &WardenProfile::alpha2)
        .def_readonly("alpha3", &WardenProfile::alpha3)
        .def_readonly("degenerate_jamming", &WardenProfile::degenerate_jamming);

    m.def("fractions", &fractions, py::arg("spec"), py::arg("n"),
          "per-PA radiated power fractions");
    m.def("residual_power", &residual_power, py::arg("fractions"));
    m.def("make_profile", &make_profile, py::arg("a_c"), py::arg("a_j"),
          py::arg("p_c"), py::arg("p_j_max"), py::arg("sigma_w_sq"));
    m.def("p_fa", &p_fa, py::arg("profile"), py::arg("tau"));
    m.def("p_md", &p_md, py::arg("profile"), py::arg("tau"));

    m.def("esp", &esp, py::arg("x"), "elementary symmetric polynomials");
    m.def(
        "vote_distribution",
        [](const std::vector<double>& p) { return pgf_coeffs(p, Sense::Alarm).coeff; },
        py::arg("p"), "P(exactly i of the wardens vote), i = 0..M");
    m.def("majority_threshold", &majority_threshold, py::arg("m"));
    m.def("dep_exact", &dep_exact, py::arg("tau"), py::arg("wardens"),
          "fused detectability at a threshold");
    m.def(
        "min_dep_threshold",
        [](const std::vector<WardenProfile>& w, int grid_density) {
            const MinDepResult r = min_dep_threshold(w, grid_density);
            return py::make_tuple(r.tau_star, r.g_star);
        },
        py::arg("wardens"), py::arg("grid_density") = 64,
        "(tau_star, min detectability)");

    m.def("array_gain", &array_gain, py::arg("geometry"), py::arg("waveguide"),
          py::arg("design"), py::arg("target"));
    m.def("warden_profiles", &warden_profiles, py::arg("geometry"),
          py::arg("design"), py::arg("wardens"));

    m.def(
        "gauss_legendre",
        [](int n) {
            const QuadratureRule q = gauss_legendre(n);
            return py::make_tuple(q.nodes, q.weights);
        },
        py::arg("n"));
    m.def(
        "avg_covert_rate",
        [](double s, double i, double sigma_b_sq, int nodes) {
            return avg_covert_rate(LinkBudget{s, i, sigma_b_sq}, gauss_legendre(nodes));
        },
        py::arg("s"), py::arg("i"), py::arg("sigma_b_sq"), py::arg("nodes") = 32,
        "average covert rate [bits/s/Hz] over the uniform jamming draw");
    m.def(
        "bob_rate",
        [](const SystemGeometry& g, const DesignPoint& d, const Vec3& bob,
           double sigma_b_sq, int nodes) {
            return avg_covert_rate(make_link_budget(g, d, bob, sigma_b_sq),
                                   gauss_legendre(nodes));
        },
        py::arg("geometry"), py::arg("design"), py::arg("bob"),
        py::arg("sigma_b_sq"), py::arg("nodes") = 32);

    m.def(
        "mc_system_dep",
        [](const std::vector<WardenProfile>& w, double tau, std::uint64_t seed,
           std::int64_t trials, bool shared_jamming, int finite_n) {
            McConfig cfg;
            cfg.seed = seed;
            cfg.trials = trials;
            cfg.jamming_mode = shared_jamming ? JammingMode::SharedRealization
                                              : JammingMode::IndependentPerWarden;
            cfg.finite_n = finite_n;
            const McDepEstimate e = mc_system_dep(w, tau, cfg);
            return py::make_tuple(e.dep, e.se);
        },
        py::arg("wardens"), py::arg("tau"), py::arg("seed") = 1,
        py::arg("trials") = 100000, py::arg("shared_jamming") = false,
        py::arg("finite_n") = 0);
    m.def(
        "enum_fusion",
        [](const std::vector<double>& fa, const std::vector<double>& md, int t) {
            const EnumFusionResult r = enum_fusion(fa, md, t);
            return py::make_tuple(r.p_fa_sys, r.p_md_sys, r.dep);
        },
        py::arg("p_fa"), py::arg("p_md"), py::arg("t_major"));

    m.def("philox_u01", &philox_u01, py::arg("seed"), py::arg("trial"),
          py::arg("stream"), py::arg("draw"));

    py::class_<OptimizerProblem>(m, "OptimizerProblem")
        .def(py::init<>())
        .def_readwrite("geom", &OptimizerProblem::geom)
        .def_readwrite("wardens", &OptimizerProblem::wardens)
        .def_readwrite("bob", &OptimizerProblem::bob)
        .def_readwrite("sigma_b_sq", &OptimizerProblem::sigma_b_sq)
        .def_readwrite("n_c", &OptimizerProblem::n_c)
        .def_readwrite("n_j", &OptimizerProblem::n_j)
        .def_readwrite("model", &OptimizerProblem::model);

    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &OptimizerConfig::epsilon)
        .def_readwrite("p_max", &OptimizerConfig::p_max)
        .def_readwrite("dx_min", &OptimizerConfig::dx_min)
        .def_readwrite("outer_max", &OptimizerConfig::outer_max)
        .def_readwrite("inner_max", &OptimizerConfig::inner_max)
        .def_readwrite("multistart", &OptimizerConfig::multistart)
        .def_readwrite("seed", &OptimizerConfig::seed)
        .def_readwrite("grid_density", &OptimizerConfig::grid_density)
        .def_readwrite("quad_nodes", &OptimizerConfig::quad_nodes);

    m.def(
        "optimize",
        [](const OptimizerProblem& p, const OptimizerConfig& cfg) {
            const OptimizeResult r = optimize(p, cfg);
            py::dict d;
            d["acr"] = r.acr;
            d["g"] = r.g;
            d["tau_star"] = r.tau_star;
            d["start_index"] = r.start_index;
            d["feasible"] = r.feasible;
            d["design"] = r.design;
            return d;
        },
        py::arg("problem"), py::arg("config"),
        "covert-rate maximization; returns the best feasible design");
    m.def("feasible_init", &feasible_init, py::arg("problem"), py::arg("config"),
          py::arg("seed") = 0, py::arg("start_index") = 0);
    m.def("project_spacing", &project_spacing, py::arg("x"), py::arg("dx_min"),
          py::arg("length"));
}
