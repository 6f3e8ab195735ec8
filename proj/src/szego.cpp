#include "hankel/szego.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "hankel/inverse_map.hpp"

namespace hankel {

FlowState::FlowState(SpectralDatum datum0, double t) : datum0_(std::move(datum0)), t_(t) {
    const ModelOperators model = build_model(datum0_);
    std::vector<double> pos;
    for (int j = 0; j < model.dim(); ++j)
        if (!model.tilde_zero[j]) pos.push_back(model.stilde[j]);
    stilde_pos_ = Eigen::Map<Vec>(pos.data(), pos.size());
}

SpectralDatum FlowState::datum() const {
    SpectralDatum out = datum0_;
    const Vec s = datum0_.rho.support();
    for (int j = 0; j < out.psi.size(); ++j)
        out.psi[j] *= std::polar(1.0, -t_ * s[j] * s[j]);
    for (int j = 0; j < out.psi_tilde.size(); ++j)
        out.psi_tilde[j] *= std::polar(1.0, t_ * stilde_pos_[j] * stilde_pos_[j]);
    return out;
}

SpectralDatum flow_spectral(const SpectralDatum& datum0, double t) {
    return FlowState(datum0, t).datum();
}

CVec szego_rhs(const CVec& modes) {
    const int n = static_cast<int>(modes.size());
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one mode");
    // v = u conj(u), modes -(n-1)..n-1
    CVec v = CVec::Zero(2 * n - 1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) v[a - b + n - 1] += modes[a] * std::conj(modes[b]);
    CVec out = CVec::Zero(n);
    for (int k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (int c = 0; c < n; ++c) {
            const int idx = k - c + n - 1;
            if (idx >= 0 && idx < 2 * n - 1) acc += v[idx] * modes[c];
        }
        out[k] = Complex(0.0, -1.0) * acc;
    }
    return out;
}

GalerkinState integrate_direct(const HankelSymbol& u0, double t_end, int n_modes, double dt) {
    if (n_modes < u0.coeffs.size())
        throw Error(ErrorCode::InvalidArgument, "mode count below the symbol order");
    if (dt <= 0.0) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
    GalerkinState st;
    st.modes = CVec::Zero(n_modes);
    st.modes.head(u0.coeffs.size()) = u0.coeffs;
    st.t = 0.0;
    st.dt = dt;
    st.l2_norm0 = st.modes.norm();

    const long n_steps = std::lround(t_end / dt);
    const double step = n_steps > 0 ? t_end / n_steps : dt;
    for (long i = 0; i < n_steps; ++i) {
        const CVec k1 = szego_rhs(st.modes);
        const CVec k2 = szego_rhs(st.modes + 0.5 * step * k1);
        const CVec k3 = szego_rhs(st.modes + 0.5 * step * k2);
        const CVec k4 = szego_rhs(st.modes + step * k3);
        st.modes += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        st.t += step;
        if (std::abs(st.modes.norm() - st.l2_norm0) > 1e-4 * std::max(1.0, st.l2_norm0))
            throw Error(ErrorCode::StepUnstable,
                        "L2 drift " + std::to_string(std::abs(st.modes.norm() - st.l2_norm0)) +
                            " at t = " + std::to_string(st.t));
    }
    return st;
}

FlowComparison compare_flows(const HankelSymbol& u0, double t, int n_modes, double dt) {
    const SpectralDatum datum0 = forward_spectral_map(u0, std::max<int>(u0.order() + 1, 2));
    const StabilityReport stab = stability_report(datum0, /*k_max=*/64, /*probes=*/0);
    if (stab.verdict != StabilityReport::Verdict::Stable)
        throw Error(ErrorCode::SpectralRadiusNearOne,
                    "flow comparison needs a stable spectral-side datum");
    const SpectralDatum datum_t = flow_spectral(datum0, t);
    const HankelSymbol u_spec = recover_symbol(datum_t, n_modes - 1);
    const GalerkinState gal = integrate_direct(u0, t, n_modes, dt);

    FlowComparison cmp;
    cmp.spectral_coeffs = u_spec.coeffs;
    cmp.galerkin_coeffs = gal.modes;
    cmp.max_coeff_error = (cmp.spectral_coeffs - cmp.galerkin_coeffs).cwiseAbs().maxCoeff();
    return cmp;
}

namespace {

Vec hankel_singvals(const CVec& modes) {
    const int n = static_cast<int>(modes.size());
    CMat g = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) g(i, j) = modes[i + j];
    return g.jacobiSvd().singularValues();
}

}  // namespace

ConservationReport conservation_checks(const HankelSymbol& u0, double t_end, int n_modes,
                                       double dt, int samples) {
    CVec m0 = CVec::Zero(n_modes);
    m0.head(u0.coeffs.size()) = u0.coeffs;
    const Vec sv0 = hankel_singvals(m0);
    const double l20 = m0.norm();

    ConservationReport rep{0.0, 0.0, 0.0, samples};
    for (int i = 1; i <= samples; ++i) {
        const double t = t_end * i / samples;
        HankelSymbol u;
        u.coeffs = m0;
        const GalerkinState st = integrate_direct(u, t, n_modes, dt);
        const Vec sv = hankel_singvals(st.modes);
        rep.max_singval_drift =
            std::max(rep.max_singval_drift, (sv - sv0).cwiseAbs().maxCoeff());
        rep.max_l2_drift = std::max(rep.max_l2_drift, std::abs(st.modes.norm() - l20));
        rep.max_opnorm_drift = std::max(rep.max_opnorm_drift, std::abs(sv[0] - sv0[0]));
    }
    return rep;
}

Complex hat_u0_of_t(const SpectralDatum& datum0, double t) {
    Complex acc = 0.0;
    const auto& atoms = datum0.rho.atoms();
    for (size_t j = 0; j < atoms.size(); ++j)
        acc += std::polar(1.0, -t * atoms[j].s * atoms[j].s) * datum0.psi[j] * atoms[j].w /
               atoms[j].s;
    return acc;
}

ComplexAtoms pushforward_symbol_measure(const SpectralDatum& datum) {
    ComplexAtoms out;
    const auto& atoms = datum.rho.atoms();
    for (size_t j = 0; j < atoms.size(); ++j)
        out.push_back({atoms[j].s * atoms[j].s, datum.psi[j] * atoms[j].w / atoms[j].s});
    return out;
}

double ap_time_average(const ComplexAtoms& atoms, double T) {
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
    double acc = 0.0;
    for (const auto& [lj, aj] : atoms)
        for (const auto& [lk, ak] : atoms) {
            const double x = T * (lj - lk);
            const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
            acc += (aj * std::conj(ak)).real() * sinc;
        }
    return acc;
}

double ap_time_average_quadrature(const ComplexAtoms& atoms, double T) {
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
    // |mu^(t)|^2 oscillates no faster than the spread of the lambda_j;
    // resolve the fastest beat with ~12 nodes per period
    double lmin = atoms.front().first, lmax = atoms.front().first;
    for (const auto& [l, a] : atoms) {
        lmin = std::min(lmin, l);
        lmax = std::max(lmax, l);
    }
    const double beat = std::max(lmax - lmin, 1e-6);
    const long panels = std::max<long>(64, std::lround(2.0 * T * beat / 3.0));
    // 4-point Gauss-Legendre per panel
    static const double nodes[2] = {0.3399810435848563, 0.8611363115940526};
    static const double wts[2] = {0.6521451548625461, 0.3478548451374538};
    auto fhat = [&atoms](double t) {
        Complex acc = 0.0;
        for (const auto& [l, a] : atoms) acc += a * std::polar(1.0, -t * l);
        return std::norm(acc);
    };
    double acc = 0.0;
    const double h = 2.0 * T / panels;
    for (long p = 0; p < panels; ++p) {
        const double mid = -T + (p + 0.5) * h;
        for (int i = 0; i < 2; ++i)
            acc += wts[i] * (fhat(mid + 0.5 * h * nodes[i]) + fhat(mid - 0.5 * h * nodes[i]));
    }
    return acc * (0.5 * h) / (2.0 * T);
}

}  // namespace hankel
