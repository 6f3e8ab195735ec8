#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "hankel/diagnostics.hpp"
#include "hankel/inverse_map.hpp"
#include "hankel/perturbation.hpp"
#include "hankel/serialize.hpp"
#include "hankel/szego.hpp"

namespace fs = std::filesystem;
using namespace hankel;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    std::string out;
    bool emit_plot_data = false;
    std::uint64_t seed = 1234;
};

Json provenance(const std::string& input_bytes, const Json& tolerances, std::uint64_t seed) {
    return Json{{"input_hash", fnv1a_hex(input_bytes)},
                {"tolerances", tolerances},
                {"seed", seed},
                {"version", kVersion}};
}

void emit(const CommonOpts& opts, Json payload) {
    const std::string text = payload.dump(2) + "\n";
    if (opts.out.empty())
        std::cout << text;
    else
        write_file(opts.out, text);
}

std::string plot_path(const CommonOpts& opts, const std::string& stem) {
    const fs::path base = opts.out.empty() ? fs::path("hankel-lab-out.json") : fs::path(opts.out);
    fs::path p = base;
    p.replace_filename(base.stem().string() + "." + stem + ".csv");
    return p.string();
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << header << "\n";
    for (const auto& [x, y] : rows) os << x << "," << y << "\n";
    write_file(path, os.str());
}

std::function<double(double)> density_by_name(const std::string& name) {
    if (name == "uniform") return [](double) { return 1.0; };
    if (name == "linear") return [](double s) { return s; };
    if (name == "quadratic") return [](double s) { return s * s; };
    throw Error(ErrorCode::InvalidArgument, "unknown density '" + name + "'");
}

std::function<Complex(double)> phase_by_name(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const double param =
        colon == std::string::npos ? 0.0 : std::stod(spec.substr(colon + 1));
    if (name == "one") return [](double) { return Complex(1.0, 0.0); };
    if (name == "exp_is") return [](double s) { return std::polar(1.0, s); };
    if (name == "exp_mis") return [](double s) { return std::polar(1.0, -s); };
    if (name == "sign")
        return [param](double s) { return Complex(s < param ? -1.0 : 1.0, 0.0); };
    if (name == "exp_its2")
        return [param](double s) { return std::polar(1.0, param * s * s); };
    throw Error(ErrorCode::InvalidArgument, "unknown phase function '" + spec + "'");
}

std::pair<double, double> parse_interval(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw Error(ErrorCode::InvalidArgument, "interval must be 'a,b'");
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty list");
    return out;
}

// datum assembled from a discretized density and named phase functions;
// psi~ is sampled at the computed positive atoms of rho~
SpectralDatum density_datum(const std::string& density, double a, double b, int atoms,
                            double inv2, const std::string& psi_name,
                            const std::string& psit_name) {
    SpectralMeasure rho = discretize_density_inv2(density_by_name(density), a, b, atoms, inv2);
    const auto psi_fun = phase_by_name(psi_name);
    const auto psit_fun = phase_by_name(psit_name);
    const Vec s = rho.support();
    CVec psi(rho.size());
    for (int j = 0; j < rho.size(); ++j) psi[j] = psi_fun(s[j]);
    SpectralDatum tmp{rho, psi, CVec::Ones(count_positive_tilde_atoms(rho))};
    const ModelOperators m = build_model(tmp);
    std::vector<Complex> vals;
    for (int j = 0; j < m.dim(); ++j)
        if (!m.tilde_zero[j]) vals.push_back(psit_fun(m.stilde[j]));
    CVec psit = Eigen::Map<CVec>(vals.data(), vals.size());
    return SpectralDatum{std::move(rho), std::move(psi), std::move(psit)};
}

struct DatumSource {
    std::string datum_path;
    std::string density = "uniform";
    std::string interval = "1,2";
    int atoms = 400;
    double inv2 = 1.0;
    std::string psi_name = "one";
    std::string psit_name = "one";

    void add_options(CLI::App* cmd) {
        cmd->add_option("--datum", datum_path, "spectral datum JSON file");
        cmd->add_option("--density", density, "named density for a discretized datum");
        cmd->add_option("--interval", interval, "support interval a,b");
        cmd->add_option("--atoms", atoms, "atom count for the discretization");
        cmd->add_option("--inv2", inv2, "target sum w/s^2 of the discretized measure");
        cmd->add_option("--psi", psi_name, "phase function: one|exp_is|exp_mis|sign:s0|exp_its2:t");
        cmd->add_option("--psitilde", psit_name, "phase function for Psi~");
    }

    std::pair<SpectralDatum, std::string> load() const {
        if (!datum_path.empty()) {
            const std::string bytes = read_file(datum_path);
            return {datum_from_json(Json::parse(bytes)), bytes};
        }
        auto [a, b] = parse_interval(interval);
        SpectralDatum d = density_datum(density, a, b, atoms, inv2, psi_name, psit_name);
        const std::string config = density + "|" + interval + "|" + std::to_string(atoms) +
                                   "|" + std::to_string(inv2) + "|" + psi_name + "|" +
                                   psit_name;
        return {std::move(d), config};
    }
};

int dispatch(CLI::App& app, int argc, char** argv);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the spectral maps of Hankel operators"};
    app.require_subcommand(1);
    try {
        return dispatch(app, argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code() == ErrorCode::IoError) return 4;
        return is_validation_error(e.code()) ? 2 : 3;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

namespace {

int dispatch(CLI::App& app, int argc, char** argv) {
    CommonOpts common;

    // ---- direct ----
    auto* cmd_direct = app.add_subcommand("direct", "symbol -> spectral datum");
    std::string direct_input;
    int direct_order = -1;
    double tau_rank = 1e-10;
    cmd_direct->add_option("--input", direct_input, "symbol JSON")->required();
    cmd_direct->add_option("--order", direct_order, "truncation size N (default order+1)");
    cmd_direct->add_option("--tau-rank", tau_rank, "relative rank threshold");
    cmd_direct->add_option("--out", common.out, "output path");

    // ---- inverse ----
    auto* cmd_inverse = app.add_subcommand("inverse", "spectral datum -> symbol");
    std::string inverse_datum;
    double tail = 1e-12;
    int inverse_order = -1;
    cmd_inverse->add_option("--datum", inverse_datum, "datum JSON")->required();
    cmd_inverse->add_option("--tail", tail, "certified tail tolerance");
    cmd_inverse->add_option("--order", inverse_order, "explicit truncation order K");
    cmd_inverse->add_option("--out", common.out, "output path");

    // ---- roundtrip ----
    auto* cmd_roundtrip = app.add_subcommand("roundtrip", "inverse then forward, with errors");
    std::string rt_u, rt_datum;
    double rt_tail = 1e-12;
    cmd_roundtrip->add_option("--u", rt_u, "symbol JSON (forward first)");
    cmd_roundtrip->add_option("--datum", rt_datum, "datum JSON");
    cmd_roundtrip->add_option("--tail", rt_tail, "certified tail tolerance");
    cmd_roundtrip->add_option("--out", common.out, "output path");

    // ---- stability ----
    auto* cmd_stab = app.add_subcommand("stability", "decay diagnostics for Sigma*");
    DatumSource stab_src;
    stab_src.add_options(cmd_stab);
    int kmax = 2000, probes = 3;
    std::string dump_dir;
    cmd_stab->add_option("--kmax", kmax, "iteration horizon");
    cmd_stab->add_option("--probes", probes, "random probe vectors");
    cmd_stab->add_option("--seed", common.seed, "probe seed");
    cmd_stab->add_option("--dump-model", dump_dir, "write model matrices (binary) here");
    cmd_stab->add_option("--out", common.out, "output path");
    cmd_stab->add_flag("--emit-plot-data", common.emit_plot_data, "write CSV curves");

    // ---- diagnose ----
    auto* cmd_diag = app.add_subcommand("diagnose", "spectral-type probe of W");
    DatumSource diag_src;
    diag_src.add_options(cmd_diag);
    std::string ladder_str = "16,32,64,128,256,512";
    cmd_diag->add_option("--ladder", ladder_str, "Cesaro ladder");
    cmd_diag->add_option("--out", common.out, "output path");
    cmd_diag->add_flag("--emit-plot-data", common.emit_plot_data, "write CSV curves");

    // ---- kappa ----
    auto* cmd_kappa = app.add_subcommand("kappa", "interface density of the projection pair");
    std::string kappa_density = "uniform", kappa_interval = "1,2", kappa_scale = "auto";
    double kappa_s0 = 1.5, kappa_inv2 = 0.9;
    cmd_kappa->add_option("--density", kappa_density, "named density");
    cmd_kappa->add_option("--interval", kappa_interval, "support a,b");
    cmd_kappa->add_option("--scale", kappa_scale, "'auto' (match --inv2) or a number");
    cmd_kappa->add_option("--inv2", kappa_inv2, "target sum w/s^2 under 'auto'");
    cmd_kappa->add_option("--s0", kappa_s0, "split point")->required();
    cmd_kappa->add_option("--out", common.out, "output path");

    // ---- arc-experiment ----
    auto* cmd_arc = app.add_subcommand("arc-experiment", "two-projection eigenphases vs arc");
    std::string arc_density = "uniform", arc_interval = "1,2", arc_scale = "auto";
    double arc_s0 = 1.5, arc_inv2 = 0.9;
    std::string refinements_str = "200,400,800";
    int jobs = 1;
    cmd_arc->add_option("--density", arc_density, "named density");
    cmd_arc->add_option("--interval", arc_interval, "support a,b");
    cmd_arc->add_option("--scale", arc_scale, "'auto' (match --inv2) or a number");
    cmd_arc->add_option("--inv2", arc_inv2, "target sum w/s^2 under 'auto'");
    cmd_arc->add_option("--s0", arc_s0, "split point");
    cmd_arc->add_option("--refinements", refinements_str, "atom counts");
    cmd_arc->add_option("--jobs", jobs, "parallel refinement levels");
    cmd_arc->add_option("--out", common.out, "output path");
    cmd_arc->add_flag("--emit-plot-data", common.emit_plot_data, "write eigenphase CSVs");

    // ---- flow ----
    auto* cmd_flow = app.add_subcommand("flow", "cubic Szego evolution");
    std::string flow_u0, method = "both";
    double flow_t = 1.0, flow_dt = 1e-3;
    int flow_modes = 32;
    cmd_flow->add_option("--u0", flow_u0, "initial symbol JSON")->required();
    cmd_flow->add_option("--t", flow_t, "final time");
    cmd_flow->add_option("--method", method, "spectral|galerkin|both");
    cmd_flow->add_option("--modes", flow_modes, "Galerkin modes");
    cmd_flow->add_option("--dt", flow_dt, "time step");
    cmd_flow->add_option("--out", common.out, "output path");
    cmd_flow->add_flag("--emit-plot-data", common.emit_plot_data, "write u^_0(t) trace");

    // ---- apcheck ----
    auto* cmd_ap = app.add_subcommand("apcheck", "almost-periodicity time averages");
    std::string ap_datum;
    std::string ts_str = "10,100,1000";
    cmd_ap->add_option("--datum", ap_datum, "datum JSON")->required();
    cmd_ap->add_option("--T", ts_str, "time horizons");
    cmd_ap->add_option("--out", common.out, "output path");

    app.parse(argc, argv);

    if (*cmd_direct) {
        const std::string bytes = read_file(direct_input);
        const HankelSymbol u = symbol_from_json(Json::parse(bytes));
        const int n = direct_order > 0 ? direct_order : u.order() + 1;
        const SpectralDatum d = forward_spectral_map(u, n, tau_rank);
        Json out = datum_to_json(d);
        out["provenance"] = provenance(
            bytes, Json{{"tau_rank", tau_rank}, {"order", n}}, common.seed);
        emit(common, out);
        return 0;
    }

    if (*cmd_inverse) {
        const std::string bytes = read_file(inverse_datum);
        const SpectralDatum d = datum_from_json(Json::parse(bytes));
        const HankelSymbol u = recover_symbol(d, inverse_order, tail);
        Json out = symbol_to_json(u);
        out["provenance"] = provenance(bytes, Json{{"tail", tail}}, common.seed);
        emit(common, out);
        return 0;
    }

    if (*cmd_roundtrip) {
        std::string bytes;
        std::optional<SpectralDatum> d;
        if (!rt_u.empty()) {
            bytes = read_file(rt_u);
            const HankelSymbol u = symbol_from_json(Json::parse(bytes));
            d = forward_spectral_map(u, u.order() + 1);
        } else if (!rt_datum.empty()) {
            bytes = read_file(rt_datum);
            d = datum_from_json(Json::parse(bytes));
        } else {
            throw Error(ErrorCode::InvalidArgument, "roundtrip needs --u or --datum");
        }
        const RoundtripResult rt = roundtrip(*d, -1, rt_tail);
        Json out{{"max_error", rt.max_error},
                 {"symbol", symbol_to_json(rt.u)},
                 {"datum", datum_to_json(rt.datum_out)}};
        out["provenance"] = provenance(bytes, Json{{"tail", rt_tail}}, common.seed);
        emit(common, out);
        return 0;
    }

    if (*cmd_stab) {
        auto [d, bytes] = stab_src.load();
        const ModelOperators model = build_model(d);
        if (!dump_dir.empty()) {
            fs::create_directories(dump_dir);
            dump_matrix(dump_dir + "/Sigma_star.bin", model.Sigma_star);
            dump_matrix(dump_dir + "/Sigma0_star.bin", model.Sigma0_star.cast<Complex>());
            dump_matrix(dump_dir + "/Mtilde.bin", model.Mtilde.cast<Complex>());
            dump_matrix(dump_dir + "/H_kernel.bin", model.H_kernel);
            dump_matrix(dump_dir + "/Htilde_kernel.bin", model.Htilde_kernel);
        }
        const StabilityReport rep = stability_report(model, kmax, probes, common.seed);
        Json curve = Json::array();
        for (double v : rep.decay_curve) curve.push_back(v);
        Json out{{"spectral_radius", rep.spectral_radius},
                 {"verdict", rep.verdict == StabilityReport::Verdict::Stable ? "Stable"
                             : rep.verdict == StabilityReport::Verdict::NotStable
                                 ? "NotStable"
                                 : "Inconclusive"},
                 {"terminal_ratio", rep.terminal_ratio},
                 {"k_half_decay", rep.k_half_decay},
                 {"plateau", rep.plateau},
                 {"probe_terminal_ratio", rep.probe_terminal_ratio},
                 {"isometry_defect", rep.isometry_defect},
                 {"max_telescoping_residual", rep.max_telescoping_residual},
                 {"tail_bound", rep.tail_bound},
                 {"decay_curve", curve}};
        out["provenance"] = provenance(
            bytes, Json{{"kmax", kmax}, {"probes", probes}}, common.seed);
        if (common.emit_plot_data) {
            std::vector<std::pair<double, double>> rows;
            for (size_t k = 0; k < rep.decay_curve.size(); ++k)
                rows.push_back({static_cast<double>(k), rep.decay_curve[k]});
            write_csv(plot_path(common, "decay"), "k,norm", rows);
        }
        emit(common, out);
        return 0;
    }

    if (*cmd_diag) {
        auto [d, bytes] = diag_src.load();
        const ModelOperators model = build_model(d);
        const auto ladder = parse_int_list(ladder_str);
        const SpectralTypeProbe probe = spectral_type_probe(model, ladder);
        Json out{{"hint", probe.hint == SpectralTypeProbe::Hint::PurePointLike
                              ? "PurePointLike"
                              : probe.hint == SpectralTypeProbe::Hint::AbsolutelyContinuousLike
                                  ? "AbsolutelyContinuousLike"
                                  : "Mixed"},
                 {"slope", probe.slope},
                 {"ladder", probe.ladder},
                 {"cesaro", probe.cesaro},
                 {"note", "finite unitary matrices have pure point spectrum; the hint is a "
                          "refinement-trend heuristic over the recorded ladder"}};
        Json phases = Json::array();
        for (int j = 0; j < probe.eigenphases.size(); ++j)
            phases.push_back(Json{{"angle", probe.eigenphases[j]},
                                  {"weight", probe.eigenweights[j]}});
        out["eigenphases"] = phases;
        out["provenance"] = provenance(bytes, Json{{"ladder", ladder}}, common.seed);
        if (common.emit_plot_data) {
            std::vector<std::pair<double, double>> rows;
            for (int j = 0; j < probe.eigenphases.size(); ++j)
                rows.push_back({probe.eigenphases[j], probe.eigenweights[j]});
            write_csv(plot_path(common, "eigenphases"), "angle,weight", rows);
            rows.clear();
            for (size_t i = 0; i < probe.ladder.size(); ++i)
                rows.push_back({static_cast<double>(probe.ladder[i]), probe.cesaro[i]});
            write_csv(plot_path(common, "cesaro"), "N,value", rows);
        }
        emit(common, out);
        return 0;
    }

    if (*cmd_kappa) {
        auto [a, b] = parse_interval(kappa_interval);
        DensityMeasure dm{a, b, density_by_name(kappa_density), 400, 1.0};
        if (kappa_scale == "auto")
            dm = dm.with_inv2(kappa_inv2);
        else
            dm.scale = std::stod(kappa_scale);
        const KappaResult kr = kappa(dm, kappa_s0);
        Json out{{"kappa", kr.kappa},
                 {"f0prime", kr.f0prime},
                 {"f1prime", kr.f1prime},
                 {"t0_boundary", complex_to_json(kr.t0_boundary)},
                 {"eta_error", kr.eta_error},
                 {"f1_positive", kr.f1_positive},
                 {"sigma_max", std::sqrt(kr.kappa)},
                 {"theta_max", 2.0 * std::asin(std::min(1.0, std::sqrt(kr.kappa)))}};
        const std::string cfg = kappa_density + "|" + kappa_interval + "|" + kappa_scale +
                                "|" + std::to_string(kappa_s0);
        out["provenance"] = provenance(cfg, Json{{"inv2", kappa_inv2}}, common.seed);
        emit(common, out);
        return 0;
    }

    if (*cmd_arc) {
        auto [a, b] = parse_interval(arc_interval);
        DensityMeasure dm{a, b, density_by_name(arc_density), 400, 1.0};
        if (arc_scale == "auto")
            dm = dm.with_inv2(arc_inv2);
        else
            dm.scale = std::stod(arc_scale);
        const auto refinements = parse_int_list(refinements_str);

        TwoProjectionReport rep;
        if (jobs > 1) {
            // levels are independent jobs
            std::vector<std::future<TwoProjectionReport>> futs;
            for (int m : refinements)
                futs.push_back(std::async(std::launch::async, [&dm, arc_s0, m] {
                    return halmos_arc_experiment(dm, arc_s0, {m});
                }));
            rep = futs.front().get();
            for (size_t i = 1; i < futs.size(); ++i)
                rep.levels.push_back(futs[i].get().levels.front());
        } else {
            rep = halmos_arc_experiment(dm, arc_s0, refinements);
        }
        Json levels = Json::array();
        for (const auto& lv : rep.levels) {
            levels.push_back(Json{{"atoms", lv.atoms},
                                  {"n_nontrivial", lv.n_nontrivial},
                                  {"n_negative_fixed", lv.n_negative_fixed},
                                  {"max_abs_phase", lv.max_abs_phase},
                                  {"coverage", lv.coverage},
                                  {"inside_inflated", lv.inside_inflated},
                                  {"phases", lv.phases}});
            if (common.emit_plot_data) {
                std::vector<std::pair<double, double>> rows;
                for (double p : lv.phases) rows.push_back({p, 1.0});
                write_csv(plot_path(common, "phases_" + std::to_string(lv.atoms)),
                          "angle,count", rows);
            }
        }
        Json out{{"s0", rep.s0},
                 {"kappa", rep.kappa},
                 {"sigma_max", rep.sigma_max},
                 {"theta_max", rep.theta_max},
                 {"endpoint", complex_to_json(rep.endpoint)},
                 {"coverage_eps", rep.coverage_eps},
                 {"inflation", rep.inflation},
                 {"levels", levels}};
        const std::string cfg = arc_density + "|" + arc_interval + "|" + arc_scale + "|" +
                                std::to_string(arc_s0) + "|" + refinements_str;
        out["provenance"] = provenance(cfg, Json{{"inv2", arc_inv2}}, common.seed);
        emit(common, out);
        return 0;
    }

    if (*cmd_flow) {
        const std::string bytes = read_file(flow_u0);
        const HankelSymbol u0 = symbol_from_json(Json::parse(bytes));
        Json out;
        if (method == "both") {
            const FlowComparison cmp = compare_flows(u0, flow_t, flow_modes, flow_dt);
            const ConservationReport cons =
                conservation_checks(u0, flow_t, flow_modes, flow_dt, 8);
            Json gal = Json::array(), spec = Json::array();
            for (int k = 0; k < cmp.galerkin_coeffs.size(); ++k) {
                gal.push_back(complex_to_json(cmp.galerkin_coeffs[k]));
                spec.push_back(complex_to_json(cmp.spectral_coeffs[k]));
            }
            out = Json{{"comparison_error", cmp.max_coeff_error},
                       {"galerkin", gal},
                       {"spectral", spec},
                       {"max_singval_drift", cons.max_singval_drift},
                       {"max_l2_drift", cons.max_l2_drift},
                       {"max_opnorm_drift", cons.max_opnorm_drift}};
        } else if (method == "galerkin") {
            const GalerkinState st = integrate_direct(u0, flow_t, flow_modes, flow_dt);
            Json gal = Json::array();
            for (int k = 0; k < st.modes.size(); ++k)
                gal.push_back(complex_to_json(st.modes[k]));
            out = Json{{"galerkin", gal}, {"t", st.t}};
        } else if (method == "spectral") {
            const SpectralDatum d0 = forward_spectral_map(u0, u0.order() + 1);
            const SpectralDatum dt_ = flow_spectral(d0, flow_t);
            const HankelSymbol ut = recover_symbol(dt_, flow_modes - 1);
            Json spec = Json::array();
            for (int k = 0; k < ut.coeffs.size(); ++k)
                spec.push_back(complex_to_json(ut.coeffs[k]));
            out = Json{{"spectral", spec}, {"t", flow_t}, {"datum", datum_to_json(dt_)}};
        } else {
            throw Error(ErrorCode::InvalidArgument, "method must be spectral|galerkin|both");
        }
        if (method != "galerkin") {
            const SpectralDatum d0 = forward_spectral_map(u0, u0.order() + 1);
            Json trace = Json::array();
            std::vector<std::pair<double, double>> rows;
            const int samples = 64;
            for (int i = 0; i <= samples; ++i) {
                const double t = flow_t * i / samples;
                const Complex v = hat_u0_of_t(d0, t);
                trace.push_back(Json{{"t", t}, {"re", v.real()}, {"im", v.imag()}});
                rows.push_back({t, std::abs(v)});
            }
            out["hat_u0_trace"] = trace;
            if (common.emit_plot_data) write_csv(plot_path(common, "u0_trace"), "t,abs", rows);
        }
        out["provenance"] = provenance(
            bytes, Json{{"t", flow_t}, {"modes", flow_modes}, {"dt", flow_dt}}, common.seed);
        emit(common, out);
        return 0;
    }

    if (*cmd_ap) {
        const std::string bytes = read_file(ap_datum);
        const SpectralDatum d = datum_from_json(Json::parse(bytes));
        const ComplexAtoms atoms = pushforward_symbol_measure(d);
        double bench = 0.0;
        for (const auto& [l, a] : atoms) bench += std::abs(a);
        bench *= bench;
        const auto ts = parse_double_list(ts_str);
        Json values = Json::array();
        for (double t : ts) {
            const double sinc_sum = ap_time_average(atoms, t);
            values.push_back(
                Json{{"T", t}, {"sinc_sum", sinc_sum}, {"ratio_to_benchmark", sinc_sum / bench}});
        }
        const double t_small = ts.front();
        Json out{{"values", values},
                 {"benchmark", bench},
                 {"quadrature_check",
                  Json{{"T", t_small},
                       {"sinc_sum", ap_time_average(atoms, t_small)},
                       {"quadrature", ap_time_average_quadrature(atoms, t_small)}}}};
        out["provenance"] = provenance(bytes, Json{{"T", ts}}, common.seed);
        emit(common, out);
        return 0;
    }

    return 2;
}

}  // namespace
