#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hankel/diagnostics.hpp"
#include "hankel/inverse_map.hpp"
#include "hankel/perturbation.hpp"
#include "hankel/szego.hpp"

namespace py = pybind11;
using namespace hankel;

namespace {

HankelSymbol make_symbol(const CVec& coeffs) {
    HankelSymbol u;
    u.coeffs = coeffs;
    return u;
}

}  // namespace

PYBIND11_MODULE(_hankel, m) {
    m.doc() = "spectral maps for anti-linear Hankel operators with simple spectrum";

    py::register_exception<Error>(m, "HankelError");

    py::class_<Atom>(m, "Atom")
        .def(py::init<double, double>(), py::arg("s"), py::arg("w"))
        .def_readonly("s", &Atom::s)
        .def_readonly("w", &Atom::w)
        .def("__repr__", [](const Atom& a) {
            return "Atom(s=" + std::to_string(a.s) + ", w=" + std::to_string(a.w) + ")";
        });

    py::class_<SpectralMeasure>(m, "SpectralMeasure")
        .def_property_readonly("atoms", &SpectralMeasure::atoms)
        .def_property_readonly("support", &SpectralMeasure::support)
        .def_property_readonly("weights", &SpectralMeasure::weights)
        .def_property_readonly("tol", &SpectralMeasure::tol)
        .def("total_mass", &SpectralMeasure::total_mass)
        .def("inverse_moment", &SpectralMeasure::inverse_moment, py::arg("p"))
        .def("__len__", &SpectralMeasure::size);

    m.def(
        "validate_measure",
        [](const std::vector<std::pair<double, double>>& raw, double tol) {
            std::vector<Atom> atoms;
            for (auto& [s, w] : raw) atoms.push_back({s, w});
            return SpectralMeasure::validate(std::move(atoms), tol);
        },
        py::arg("atoms"), py::arg("tol") = 1e-12);

    m.def("discretize_density", &discretize_density, py::arg("density"), py::arg("a"),
          py::arg("b"), py::arg("n"), py::arg("scale") = 1.0, py::arg("tol") = 1e-12);
    m.def("discretize_density_inv2", &discretize_density_inv2, py::arg("density"), py::arg("a"),
          py::arg("b"), py::arg("n"), py::arg("inv2_target"), py::arg("tol") = 1e-12);

    m.def("classify_kernel", [](const SpectralMeasure& rho) {
        const KernelVerdict v = classify_kernel(rho);
        return py::make_tuple(v.inv2, v.inv4,
                              v.verdict == KernelVerdict::Verdict::TrivialKernel
                                  ? "TrivialKernel"
                                  : "NontrivialKernel");
    });

    m.def("pushforward_unimodular", [](const SpectralMeasure& rho, const CVec& phase) {
        std::vector<std::pair<double, double>> out;
        for (const AngleAtom& a : pushforward_unimodular(rho, phase))
            out.push_back({a.angle, a.weight});
        return out;
    });

    py::class_<SpectralDatum>(m, "SpectralDatum")
        .def(py::init([](const SpectralMeasure& rho, const CVec& psi, const CVec& psi_tilde) {
                 SpectralDatum d{rho, psi, psi_tilde};
                 d.check_unimodular();
                 return d;
             }),
             py::arg("rho"), py::arg("psi"), py::arg("psi_tilde"))
        .def_readonly("rho", &SpectralDatum::rho)
        .def_readonly("psi", &SpectralDatum::psi)
        .def_readonly("psi_tilde", &SpectralDatum::psi_tilde);

    m.def("count_positive_tilde_atoms", &count_positive_tilde_atoms);

    py::class_<ModelOperators>(m, "ModelOperators")
        .def_readonly("s", &ModelOperators::s)
        .def_readonly("stilde", &ModelOperators::stilde)
        .def_readonly("Mtilde", &ModelOperators::Mtilde)
        .def_readonly("Sigma0_star", &ModelOperators::Sigma0_star)
        .def_readonly("Sigma_star", &ModelOperators::Sigma_star)
        .def_readonly("q", &ModelOperators::q)
        .def_readonly("H_kernel", &ModelOperators::H_kernel)
        .def_readonly("Htilde_kernel", &ModelOperators::Htilde_kernel)
        .def_property_readonly("rho_tilde",
                               [](const ModelOperators& mo) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const Atom& a : mo.rho_tilde)
                                       out.push_back({a.s, a.w});
                                   return out;
                               })
        .def_property_readonly("dim", &ModelOperators::dim);

    m.def("build_model", &build_model, py::arg("datum"));
    m.def("apply_antilinear", &apply_antilinear, py::arg("kernel"), py::arg("f"));
    m.def("strict_contraction_check", &strict_contraction_check);

    m.def(
        "forward_spectral_map",
        [](const CVec& coeffs, int n, double tau_rank) {
            return forward_spectral_map(make_symbol(coeffs), n, tau_rank);
        },
        py::arg("coeffs"), py::arg("N"), py::arg("tau_rank") = 1e-10);

    m.def(
        "simplicity_check",
        [](const CVec& coeffs, int n) {
            const SimplicityReport rep = simplicity_check(make_symbol(coeffs), n);
            return py::make_tuple(rep.is_simple, rep.gram_det_H, rep.gram_det_Htilde,
                                  rep.min_singval_gap);
        },
        py::arg("coeffs"), py::arg("N"));

    m.def(
        "hankel_singular_values",
        [](const CVec& coeffs, int n) { return hankel_matrices(make_symbol(coeffs), n).singvals; },
        py::arg("coeffs"), py::arg("N"));

    m.def(
        "recover_symbol",
        [](const SpectralDatum& d, int k, double tail) {
            return recover_symbol(d, k, tail).coeffs;
        },
        py::arg("datum"), py::arg("K") = -1, py::arg("tail") = 1e-12);

    m.def(
        "recover_symbol_resolvent",
        [](const SpectralDatum& d, Complex z) { return recover_symbol_resolvent(d, z); },
        py::arg("datum"), py::arg("z"));

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("decay_curve", &StabilityReport::decay_curve)
        .def_readonly("spectral_radius", &StabilityReport::spectral_radius)
        .def_readonly("probe_terminal_ratio", &StabilityReport::probe_terminal_ratio)
        .def_readonly("isometry_defect", &StabilityReport::isometry_defect)
        .def_readonly("max_telescoping_residual", &StabilityReport::max_telescoping_residual)
        .def_readonly("k_half_decay", &StabilityReport::k_half_decay)
        .def_readonly("terminal_ratio", &StabilityReport::terminal_ratio)
        .def_readonly("plateau", &StabilityReport::plateau)
        .def_readonly("tail_bound", &StabilityReport::tail_bound)
        .def_property_readonly("verdict", [](const StabilityReport& r) {
            switch (r.verdict) {
                case StabilityReport::Verdict::Stable: return "Stable";
                case StabilityReport::Verdict::NotStable: return "NotStable";
                default: return "Inconclusive";
            }
        });

    m.def(
        "stability_report",
        [](const SpectralDatum& d, int k_max, int probes, std::uint64_t seed) {
            return stability_report(d, k_max, probes, seed);
        },
        py::arg("datum"), py::arg("k_max") = 200, py::arg("probes") = 3,
        py::arg("seed") = 1234);

    m.def(
        "roundtrip",
        [](const SpectralDatum& d, double tail) {
            const RoundtripResult rt = roundtrip(d, -1, tail);
            return py::make_tuple(rt.u.coeffs, rt.datum_out, rt.max_error);
        },
        py::arg("datum"), py::arg("tail") = 1e-12);

    m.def("datum_distance", &datum_distance);

    // diagnostics
    m.def("classify_defect", [](const SpectralMeasure& rho) {
        const DefectClassification d = classify_defect(rho);
        const char* c = d.kase == DefectClassification::Case::Case_1_0       ? "Case_1_0"
                        : d.kase == DefectClassification::Case::Case_1_1_a ? "Case_1_1_a"
                                                                           : "Case_1_1_b";
        return py::make_tuple(d.inv2, d.inv4, c);
    });
    m.def("build_W", [](const SpectralDatum& d) { return build_W(build_model(d)); });
    m.def(
        "spectral_type_probe",
        [](const SpectralDatum& d, const std::vector<int>& ladder) {
            const SpectralTypeProbe p = spectral_type_probe(build_model(d), ladder);
            const char* hint =
                p.hint == SpectralTypeProbe::Hint::PurePointLike ? "PurePointLike"
                : p.hint == SpectralTypeProbe::Hint::AbsolutelyContinuousLike
                    ? "AbsolutelyContinuousLike"
                    : "Mixed";
            return py::make_tuple(p.eigenphases, p.eigenweights, p.ladder, p.cesaro, p.slope,
                                  hint);
        },
        py::arg("datum"), py::arg("ladder"));
    m.def("gauge_transform", &gauge_transform, py::arg("datum"), py::arg("psi_sharp"));

    // perturbation
    py::class_<DensityMeasure>(m, "DensityMeasure")
        .def(py::init([](double a, double b, std::function<double(double)> w, int atoms,
                         double scale) {
                 return DensityMeasure{a, b, std::move(w), atoms, scale};
             }),
             py::arg("a"), py::arg("b"), py::arg("w"), py::arg("atom_count") = 400,
             py::arg("scale") = 1.0)
        .def_readonly("a", &DensityMeasure::a)
        .def_readonly("b", &DensityMeasure::b)
        .def_readonly("scale", &DensityMeasure::scale)
        .def("discretize", [](const DensityMeasure& dm) { return dm.discretize(); })
        .def("inverse_moment", &DensityMeasure::inverse_moment)
        .def("with_inv2", &DensityMeasure::with_inv2);

    m.def("perturbation_determinant", &perturbation_determinant, py::arg("rho"), py::arg("t"));
    m.def("sigma0_defect_integral", [](const SpectralMeasure& rho) {
        const DefectIntegralResult r = sigma0_defect_integral(rho);
        return py::make_tuple(r.op, r.direct_error, r.tail_estimate, r.evaluations);
    });
    m.def("cauchy_transforms",
          [](const SpectralMeasure& rho, Complex z) { return cauchy_transforms(rho, z); });
    m.def("cauchy_transforms_density",
          [](const DensityMeasure& dm, Complex z) { return cauchy_transforms(dm, z); });
    m.def(
        "kappa",
        [](const DensityMeasure& dm, double s0) {
            const KappaResult k = kappa(dm, s0);
            return py::make_tuple(k.kappa, k.f0prime, k.f1prime, k.t0_boundary, k.eta_error,
                                  k.f1_positive);
        },
        py::arg("dm"), py::arg("s0"));
    m.def(
        "halmos_arc_experiment",
        [](const DensityMeasure& dm, double s0, const std::vector<int>& refinements) {
            const TwoProjectionReport rep = halmos_arc_experiment(dm, s0, refinements);
            py::list levels;
            for (const auto& lv : rep.levels) {
                py::dict d;
                d["atoms"] = lv.atoms;
                d["n_nontrivial"] = lv.n_nontrivial;
                d["n_negative_fixed"] = lv.n_negative_fixed;
                d["max_abs_phase"] = lv.max_abs_phase;
                d["coverage"] = lv.coverage;
                d["inside_inflated"] = lv.inside_inflated;
                d["phases"] = lv.phases;
                levels.append(d);
            }
            py::dict out;
            out["s0"] = rep.s0;
            out["kappa"] = rep.kappa;
            out["sigma_max"] = rep.sigma_max;
            out["theta_max"] = rep.theta_max;
            out["endpoint"] = rep.endpoint;
            out["levels"] = levels;
            return out;
        },
        py::arg("dm"), py::arg("s0"), py::arg("refinements"));
    m.def("graded_interface_mesh", &graded_interface_mesh, py::arg("dm"), py::arg("s0"),
          py::arg("n_atoms"), py::arg("inv2_target"));

    // szego
    m.def("flow_spectral", &flow_spectral, py::arg("datum"), py::arg("t"));
    m.def("szego_rhs", &szego_rhs, py::arg("modes"));
    m.def(
        "integrate_direct",
        [](const CVec& coeffs, double t_end, int n_modes, double dt) {
            return integrate_direct(make_symbol(coeffs), t_end, n_modes, dt).modes;
        },
        py::arg("coeffs"), py::arg("t_end"), py::arg("n_modes"), py::arg("dt") = 1e-3);
    m.def(
        "compare_flows",
        [](const CVec& coeffs, double t, int n_modes, double dt) {
            const FlowComparison cmp = compare_flows(make_symbol(coeffs), t, n_modes, dt);
            return py::make_tuple(cmp.max_coeff_error, cmp.spectral_coeffs,
                                  cmp.galerkin_coeffs);
        },
        py::arg("coeffs"), py::arg("t"), py::arg("n_modes") = 32, py::arg("dt") = 1e-3);
    m.def(
        "conservation_checks",
        [](const CVec& coeffs, double t_end, int n_modes, double dt, int samples) {
            const ConservationReport rep =
                conservation_checks(make_symbol(coeffs), t_end, n_modes, dt, samples);
            return py::make_tuple(rep.max_singval_drift, rep.max_l2_drift,
                                  rep.max_opnorm_drift);
        },
        py::arg("coeffs"), py::arg("t_end"), py::arg("n_modes"), py::arg("dt") = 1e-3,
        py::arg("samples") = 8);
    m.def("hat_u0_of_t", &hat_u0_of_t, py::arg("datum"), py::arg("t"));
    m.def("pushforward_symbol_measure", &pushforward_symbol_measure, py::arg("datum"));
    m.def("ap_time_average", &ap_time_average, py::arg("atoms"), py::arg("T"));
    m.def("ap_time_average_quadrature", &ap_time_average_quadrature, py::arg("atoms"),
          py::arg("T"));

    m.attr("__version__") = "0.1.0";
}
