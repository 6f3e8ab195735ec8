#include "hankel/inverse_map.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hankel {

double spectral_radius(const CMat& a) {
    Eigen::ComplexEigenSolver<CMat> es(a, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

HankelSymbol recover_symbol(const ModelOperators& model, int K, double tail_tol) {
    const CVec q_ortho = model.space.vec_to_ortho(model.q);
    const CMat sigma_ortho = model.space.to_ortho(model.Sigma_star);
    const double qn = q_ortho.norm();
    CVec x = model.space.vec_to_ortho(model.space.ones());

    std::vector<Complex> coeffs;
    if (K >= 0) {
        coeffs.reserve(K + 1);
        for (int k = 0; k <= K; ++k) {
            coeffs.push_back(q_ortho.dot(x));
            x = sigma_ortho * x;
        }
    } else {
        const double sr = spectral_radius(model.Sigma_star);
        if (sr >= 1.0 - 1e-6)
            throw Error(ErrorCode::SpectralRadiusNearOne,
                        "spectral radius " + std::to_string(sr) +
                            "; pass an explicit truncation order");
        // predicted length plus slack for non-normal transients
        const double x0 = x.norm();
        const long k_pred = sr > 0.0
                                ? std::lround(std::log(tail_tol / (x0 * qn + 1e-300)) /
                                              std::log(sr))
                                : 8;
        const long k_cap = std::max<long>(16 * std::max<long>(k_pred, 1), 1024);
        long k = 0;
        while (true) {
            coeffs.push_back(q_ortho.dot(x));
            x = sigma_ortho * x;
            ++k;
            if (x.norm() * qn <= tail_tol) break;
            if (k > k_cap)
                throw Error(ErrorCode::SpectralRadiusNearOne,
                            "tail did not certify within " + std::to_string(k_cap) +
                                " iterations");
        }
    }
    HankelSymbol u;
    u.coeffs = Eigen::Map<CVec>(coeffs.data(), coeffs.size());
    return u;
}

HankelSymbol recover_symbol(const SpectralDatum& datum, int K, double tail_tol) {
    return recover_symbol(build_model(datum), K, tail_tol);
}

Complex recover_symbol_resolvent(const ModelOperators& model, Complex z) {
    if (std::abs(z) > 1.0 - 1e-9)
        throw Error(ErrorCode::InvalidArgument, "|z| must stay below 1 - 1e-9");
    const int n = model.dim();
    const CMat sigma_ortho = model.space.to_ortho(model.Sigma_star);
    const CMat lhs = CMat::Identity(n, n) - z * sigma_ortho;
    const CVec rhs = model.space.vec_to_ortho(model.space.ones());
    Eigen::PartialPivLU<CMat> lu(lhs);
    const CVec x = lu.solve(rhs);
    if (!x.allFinite() || (lhs * x - rhs).norm() > 1e-8 * rhs.norm())
        throw Error(ErrorCode::SolveFailed, "resolvent solve did not converge");
    return model.space.vec_to_ortho(model.q).dot(x);
}

Complex recover_symbol_resolvent(const SpectralDatum& datum, Complex z) {
    return recover_symbol_resolvent(build_model(datum), z);
}

StabilityReport stability_report(const ModelOperators& model, int k_max, int probes,
                                 std::uint64_t seed, double eps_sr) {
    const int n = model.dim();
    const CMat sigma_ortho = model.space.to_ortho(model.Sigma_star);
    const CVec q_ortho = model.space.vec_to_ortho(model.q);

    StabilityReport rep;
    rep.spectral_radius = spectral_radius(model.Sigma_star);
    rep.max_telescoping_residual = 0.0;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<CVec> probe_vecs;
    probe_vecs.push_back(model.space.vec_to_ortho(model.space.ones()));
    for (int p = 0; p < probes; ++p) {
        CVec f(n);
        for (int j = 0; j < n; ++j) f[j] = Complex(gauss(rng), gauss(rng));
        probe_vecs.push_back(f);
    }

    for (size_t p = 0; p < probe_vecs.size(); ++p) {
        CVec x = probe_vecs[p];
        const double f0sq = x.squaredNorm();
        double partial = 0.0;
        for (int k = 0; k < k_max; ++k) {
            if (p == 0) rep.decay_curve.push_back(x.norm());
            partial += std::norm(q_ortho.dot(x));
            x = sigma_ortho * x;
            const double resid = std::abs(f0sq - x.squaredNorm() - partial) / f0sq;
            rep.max_telescoping_residual = std::max(rep.max_telescoping_residual, resid);
        }
        if (p == 0) {
            rep.decay_curve.push_back(x.norm());
            rep.tail_bound = x.norm() * q_ortho.norm();
        }
        rep.probe_terminal_ratio.push_back(x.norm() / std::sqrt(f0sq));
        rep.isometry_defect.push_back(std::abs(f0sq - partial) / f0sq);
    }

    rep.k_half_decay = -1;
    for (size_t k = 0; k < rep.decay_curve.size(); ++k) {
        if (rep.decay_curve[k] <= 0.5 * rep.decay_curve[0]) {
            rep.k_half_decay = static_cast<int>(k);
            break;
        }
    }
    rep.terminal_ratio = rep.decay_curve.back() / rep.decay_curve.front();
    rep.plateau = *std::max_element(rep.probe_terminal_ratio.begin(),
                                    rep.probe_terminal_ratio.end());
    if (rep.spectral_radius >= 1.0 - 1e-12)
        rep.verdict = StabilityReport::Verdict::NotStable;
    else if (rep.spectral_radius < 1.0 - eps_sr)
        rep.verdict = StabilityReport::Verdict::Stable;
    else
        rep.verdict = StabilityReport::Verdict::Inconclusive;
    return rep;
}

StabilityReport stability_report(const SpectralDatum& datum, int k_max, int probes,
                                 std::uint64_t seed, double eps_sr) {
    return stability_report(build_model(datum), k_max, probes, seed, eps_sr);
}

double datum_distance(const SpectralDatum& a, const SpectralDatum& b) {
    if (a.rho.size() != b.rho.size() || a.psi_tilde.size() != b.psi_tilde.size())
        return std::numeric_limits<double>::infinity();
    double err = 0.0;
    for (int j = 0; j < a.rho.size(); ++j) {
        err = std::max(err, std::abs(a.rho.atoms()[j].s - b.rho.atoms()[j].s));
        err = std::max(err, std::abs(a.rho.atoms()[j].w - b.rho.atoms()[j].w));
        err = std::max(err, std::abs(a.psi[j] - b.psi[j]));
    }
    for (int j = 0; j < a.psi_tilde.size(); ++j)
        err = std::max(err, std::abs(a.psi_tilde[j] - b.psi_tilde[j]));
    return err;
}

RoundtripResult roundtrip(const SpectralDatum& datum, int N, double tail_tol) {
    const ModelOperators model = build_model(datum);
    HankelSymbol u = recover_symbol(model, -1, tail_tol);
    const int n_trunc = N > 0 ? std::max(N, u.order() + 1) : u.order() + 1;
    SpectralDatum out = forward_spectral_map(u, n_trunc);
    const double err = datum_distance(datum, out);
    return {std::move(u), std::move(out), err};
}

}  // namespace hankel
