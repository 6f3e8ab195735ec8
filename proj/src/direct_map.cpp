#include "hankel/direct_map.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace hankel {

namespace {

constexpr double kCyclicityRel = 1e-10;

// Eigen-decomposition of the anti-linear operator f -> B conj(f) on a
// subspace with the standard inner product. Returns ascending s_j >= 0,
// vectors as columns, and the anti-linear multipliers mu_j = <B conj(y_j), y_j>.
struct AntilinearEigs {
    Vec s;
    CMat y;
    CVec mu;
    std::vector<bool> zero;
};

AntilinearEigs antilinear_eigs(const CMat& b, double zero_scale) {
    const int r = static_cast<int>(b.rows());
    CMat bsq = b * b.conjugate();
    bsq = 0.5 * (bsq + bsq.adjoint());  // Hermitian PSD up to roundoff
    Eigen::SelfAdjointEigenSolver<CMat> es(bsq);
    Vec lam = es.eigenvalues();
    AntilinearEigs out;
    out.s = Vec(r);
    out.y = es.eigenvectors();
    out.mu = CVec(r);
    out.zero.assign(r, false);
    const double cut = kTildeZeroRel * std::max(lam.cwiseAbs().maxCoeff(), zero_scale);
    for (int j = 0; j < r; ++j) {
        out.zero[j] = lam[j] <= cut;
        out.s[j] = out.zero[j] ? 0.0 : std::sqrt(std::max(lam[j], 0.0));
        out.mu[j] = out.y.col(j).dot(b * out.y.col(j).conjugate());
    }
    return out;
}

}  // namespace

HankelSymbol HankelSymbol::trimmed() const {
    const double cut = 1e-14 * norm();
    int last = static_cast<int>(coeffs.size()) - 1;
    while (last > 0 && std::abs(coeffs[last]) < cut) --last;
    HankelSymbol out;
    out.coeffs = coeffs.head(last + 1);
    return out;
}

bool HankelSymbol::is_real(double tol) const {
    for (int j = 0; j < coeffs.size(); ++j)
        if (std::abs(coeffs[j].imag()) > tol * std::max(1.0, norm())) return false;
    return true;
}

HankelMatrices hankel_matrices(const HankelSymbol& u, int N, double tau_rank) {
    const int k = u.order();
    if (u.coeffs.size() == 0)
        throw Error(ErrorCode::InvalidArgument, "empty symbol");
    if (N < k + 1)
        throw Error(ErrorCode::TruncationTooSmall,
                    "N = " + std::to_string(N) + " < order+1 = " + std::to_string(k + 1));
    HankelMatrices m;
    m.N = N;
    m.Gamma = CMat::Zero(N, N);
    m.Gamma_tilde = CMat::Zero(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i + j <= k) m.Gamma(i, j) = u.coeffs[i + j];
            if (i + j + 1 <= k) m.Gamma_tilde(i, j) = u.coeffs[i + j + 1];
        }
    Vec sv;
    CMat u_full;
    if (N <= 48) {
        Eigen::JacobiSVD<CMat> svd(m.Gamma, Eigen::ComputeThinU);
        sv = svd.singularValues();
        u_full = svd.matrixU();
    } else {
        Eigen::BDCSVD<CMat> svd(m.Gamma, Eigen::ComputeThinU);
        sv = svd.singularValues();
        u_full = svd.matrixU();
    }
    int r = 0;
    while (r < N && sv[r] > tau_rank * sv[0]) ++r;
    if (r == 0) throw Error(ErrorCode::InvalidArgument, "zero symbol");
    m.rank = r;
    m.singvals = sv.head(r);
    m.range_basis = u_full.leftCols(r);
    return m;
}

SimplicityReport simplicity_check(const HankelSymbol& u, int N, double gram_floor,
                                  double gap_floor) {
    const HankelMatrices hm = hankel_matrices(u, N);
    const int r = hm.rank;
    CVec uvec = CVec::Zero(N);
    uvec.head(u.coeffs.size()) = u.coeffs;

    auto normalized_gram_det = [&](const CMat& sq) {
        CMat krylov(N, r);
        CVec x = uvec;
        for (int j = 0; j < r; ++j) {
            krylov.col(j) = x / x.norm();
            x = sq * krylov.col(j);
        }
        return std::abs((krylov.adjoint() * krylov).determinant());
    };
    const CMat hsq = hm.Gamma * hm.Gamma.adjoint();
    const CMat htsq = hm.Gamma_tilde * hm.Gamma_tilde.adjoint();

    SimplicityReport rep;
    rep.gram_det_H = normalized_gram_det(hsq);
    rep.gram_det_Htilde = normalized_gram_det(htsq);

    // relative gaps of the squared singular values of both restricted moduli
    const double top = hm.singvals[0] * hm.singvals[0];
    double gap = 1.0;
    for (int j = 0; j + 1 < r; ++j) {
        const double a = hm.singvals[j] * hm.singvals[j];
        const double b = hm.singvals[j + 1] * hm.singvals[j + 1];
        gap = std::min(gap, (a - b) / top);
    }
    const CMat v = hm.range_basis;
    CMat restricted = v.adjoint() * htsq * v;
    restricted = 0.5 * (restricted + restricted.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(restricted, Eigen::EigenvaluesOnly);
    const Vec lt = es.eigenvalues();
    const double top_t = std::max(lt.cwiseAbs().maxCoeff(), 1e-300);
    for (int j = 0; j + 1 < r; ++j) gap = std::min(gap, (lt[j + 1] - lt[j]) / top_t);

    rep.min_singval_gap = gap;
    // normalized Krylov Gram determinants decay factorially with the rank
    // even on well-separated spectra; the per-column geometric mean is the
    // scale on which the floor is meaningful
    const double scaled_h = std::pow(std::max(rep.gram_det_H, 0.0), 1.0 / r);
    const double scaled_ht = std::pow(std::max(rep.gram_det_Htilde, 0.0), 1.0 / r);
    rep.is_simple = scaled_h > gram_floor && scaled_ht > gram_floor && gap > gap_floor;
    return rep;
}

SpectralDatum forward_spectral_map(const HankelSymbol& u, int N, double tau_rank) {
    const SimplicityReport simp = simplicity_check(u, N);
    if (!simp.is_simple)
        throw Error(ErrorCode::NotSimple,
                    "gram dets " + std::to_string(simp.gram_det_H) + ", " +
                        std::to_string(simp.gram_det_Htilde) + ", min gap " +
                        std::to_string(simp.min_singval_gap));
    const HankelMatrices hm = hankel_matrices(u, N, tau_rank);
    const int r = hm.rank;
    CVec uvec = CVec::Zero(N);
    uvec.head(u.coeffs.size()) = u.coeffs;
    const double unorm = uvec.norm();

    // H_u on its range: eigenbasis of Gamma Gamma^*, ascending.
    const AntilinearEigs eh = antilinear_eigs(hm.Gamma, hm.singvals[0] * hm.singvals[0]);
    // For the full Gamma all range eigenvalues are positive.
    std::vector<Atom> atoms(r);
    CVec psi(r);
    for (int j = N - r; j < N; ++j) {
        const int i = j - (N - r);
        const Complex cj = eh.y.col(j).dot(uvec);  // <u, v_j>
        const double sj = eh.s[j];
        if (std::abs(cj) < kCyclicityRel * unorm)
            throw Error(ErrorCode::CyclicityLost,
                        "|<u, v_j>| = " + std::to_string(std::abs(cj)) + " at s = " +
                            std::to_string(sj));
        atoms[i] = {sj, std::norm(cj)};
        Complex val = cj * std::conj(eh.mu[j]) / (sj * std::conj(cj));
        psi[i] = val / std::abs(val);
    }

    // Truncated operator restricted to Ran H_u.
    const CMat v = hm.range_basis;
    const CMat btil = v.adjoint() * hm.Gamma_tilde * v.conjugate();
    const AntilinearEigs et = antilinear_eigs(btil, hm.singvals[0] * hm.singvals[0]);
    const CVec ur = v.adjoint() * uvec;
    int n_pos = 0;
    for (int j = 0; j < r; ++j)
        if (!et.zero[j]) ++n_pos;
    CVec psi_tilde(n_pos);
    int idx = 0;
    for (int j = 0; j < r; ++j) {
        if (et.zero[j]) continue;
        const Complex cj = et.y.col(j).dot(ur);
        if (std::abs(cj) < kCyclicityRel * unorm)
            throw Error(ErrorCode::CyclicityLost,
                        "|<u, v~_j>| = " + std::to_string(std::abs(cj)) + " at s~ = " +
                            std::to_string(et.s[j]));
        Complex val = std::conj(cj) * et.mu[j] / (et.s[j] * cj);
        psi_tilde[idx++] = val / std::abs(val);
    }

    SpectralDatum datum{SpectralMeasure::validate(std::move(atoms), 1e-10), std::move(psi),
                        std::move(psi_tilde)};
    datum.check_unimodular();
    return datum;
}

SelfAdjointReport selfadjoint_checks(const HankelSymbol& u, int N) {
    if (!u.is_real())
        throw Error(ErrorCode::NotSelfAdjoint, "symbol has non-real coefficients");
    const SpectralDatum datum = forward_spectral_map(u, N);
    const HankelMatrices hm = hankel_matrices(u, N);
    const int r = hm.rank;

    SelfAdjointReport rep{0.0, 0.0, 0.0};
    for (int j = 0; j < datum.psi.size(); ++j)
        rep.max_imag_psi = std::max(rep.max_imag_psi, std::abs(datum.psi[j].imag()));
    for (int j = 0; j < datum.psi_tilde.size(); ++j)
        rep.max_imag_psi = std::max(rep.max_imag_psi, std::abs(datum.psi_tilde[j].imag()));

    // Gamma = Psi(|Gamma|) |Gamma| with Psi(0) = 0 on the kernel. The datum
    // phases are matched to |Gamma|'s positive eigenvalues in ascending order.
    const AntilinearEigs eh = antilinear_eigs(hm.Gamma, hm.singvals[0] * hm.singvals[0]);
    CMat phi_abs = CMat::Zero(N, N);
    for (int j = N - r; j < N; ++j) {
        const int i = j - (N - r);
        phi_abs += datum.psi[i] * eh.s[j] * (eh.y.col(j) * eh.y.col(j).adjoint());
    }
    rep.residual_gamma = (hm.Gamma - phi_abs).norm() / hm.Gamma.norm();

    // Same for Gamma~ on the full space; its positive spectrum coincides with
    // the positive part of rho~.
    const AntilinearEigs et = antilinear_eigs(hm.Gamma_tilde, hm.singvals[0] * hm.singvals[0]);
    CMat phit_abs = CMat::Zero(N, N);
    int idx = 0;
    for (int j = 0; j < N; ++j) {
        if (et.zero[j]) continue;
        if (idx >= datum.psi_tilde.size())
            throw Error(ErrorCode::NotSimple, "positive spectrum of Gamma~ does not match rho~");
        phit_abs += datum.psi_tilde[idx++] * et.s[j] * (et.y.col(j) * et.y.col(j).adjoint());
    }
    if (idx != datum.psi_tilde.size())
        throw Error(ErrorCode::NotSimple, "positive spectrum of Gamma~ does not match rho~");
    rep.residual_gamma_tilde = (hm.Gamma_tilde - phit_abs).norm() /
                               std::max(hm.Gamma_tilde.norm(), 1e-300);
    return rep;
}

}  // namespace hankel
