#include "hankel/model.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace hankel {

WeightedSpace::WeightedSpace(Vec weights) : w_(std::move(weights)) {
    sw_ = w_.cwiseSqrt();
    isw_ = sw_.cwiseInverse();
}

Complex WeightedSpace::inner(const CVec& f, const CVec& g) const {
    if (f.size() != dim() || g.size() != dim())
        throw Error(ErrorCode::DimensionMismatch, "inner product operands");
    Complex acc = 0.0;
    for (int j = 0; j < dim(); ++j) acc += w_[j] * f[j] * std::conj(g[j]);
    return acc;
}

double WeightedSpace::norm(const CVec& f) const {
    double acc = 0.0;
    for (int j = 0; j < dim(); ++j) acc += w_[j] * std::norm(f[j]);
    return std::sqrt(acc);
}

CMat WeightedSpace::to_ortho(const CMat& a) const {
    return sw_.asDiagonal() * a * isw_.asDiagonal();
}

CMat WeightedSpace::from_ortho(const CMat& a) const {
    return isw_.asDiagonal() * a * sw_.asDiagonal();
}

CVec WeightedSpace::vec_from_ortho(const CVec& g) const { return isw_.asDiagonal() * g; }

CMat WeightedSpace::adjoint(const CMat& a) const {
    return w_.cwiseInverse().asDiagonal() * a.adjoint() * w_.asDiagonal();
}

double WeightedSpace::op_norm(const CMat& a) const {
    return to_ortho(a).jacobiSvd().singularValues()(0);
}

void SpectralDatum::check_unimodular(double tol) const {
    for (int j = 0; j < psi.size(); ++j)
        if (std::abs(std::abs(psi[j]) - 1.0) > tol)
            throw Error(ErrorCode::NotUnimodular, "|psi| = " + std::to_string(std::abs(psi[j])));
    for (int j = 0; j < psi_tilde.size(); ++j)
        if (std::abs(std::abs(psi_tilde[j]) - 1.0) > tol)
            throw Error(ErrorCode::NotUnimodular,
                        "|psi_tilde| = " + std::to_string(std::abs(psi_tilde[j])));
}

WeightedSpace build_weighted_space(const SpectralMeasure& rho) {
    return WeightedSpace(rho.weights());
}

int count_positive_tilde_atoms(const SpectralMeasure& rho) {
    const Vec s = rho.support();
    const Vec sw = rho.weights().cwiseSqrt();
    Mat a1 = Mat(s.cwiseAbs2().asDiagonal()) - sw * sw.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(a1, Eigen::EigenvaluesOnly);
    const Vec lam = es.eigenvalues();
    const double zero_cut = kTildeZeroRel * std::max(lam.cwiseAbs().maxCoeff(), s.cwiseAbs2().maxCoeff());
    int pos = 0;
    for (int j = 0; j < lam.size(); ++j)
        if (lam[j] > zero_cut) ++pos;
    return pos;
}

ModelOperators build_model(const SpectralDatum& datum) {
    datum.check_unimodular();
    const int n = datum.rho.size();
    if (datum.psi.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "psi samples do not match atom count");

    WeightedSpace space = build_weighted_space(datum.rho);
    const Vec s = datum.rho.support();
    const Vec& sw = space.sqrt_w();

    // M~^2 = M^2 - <.,1>1, assembled in orthonormal coordinates where it is
    // the symmetric matrix diag(s^2) - sqrt(w) sqrt(w)^T.
    Mat a1 = Mat(s.cwiseAbs2().asDiagonal()) - sw * sw.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(a1);
    Vec lam = es.eigenvalues();
    const Mat v = es.eigenvectors();
    const double scale2 = s.cwiseAbs2().maxCoeff();
    if (lam.minCoeff() < -kPsdClampRel * scale2)
        throw Error(ErrorCode::NotPSD, "smallest eigenvalue of M^2 - 1x1 is " +
                                           std::to_string(lam.minCoeff()));

    const double zero_cut = kTildeZeroRel * std::max(lam.cwiseAbs().maxCoeff(), scale2);
    std::vector<bool> zero(n, false);
    Vec stilde(n);
    for (int j = 0; j < n; ++j) {
        zero[j] = lam[j] <= zero_cut;
        stilde[j] = zero[j] ? 0.0 : std::sqrt(lam[j]);
    }

    int n_pos = 0;
    for (int j = 0; j < n; ++j)
        if (!zero[j]) ++n_pos;
    if (datum.psi_tilde.size() != n_pos)
        throw Error(ErrorCode::MissingPsiTildeSample,
                    "rho~ has " + std::to_string(n_pos) + " positive atoms, got " +
                        std::to_string(datum.psi_tilde.size()) + " psi_tilde samples");

    ModelOperators m{space, s,    datum.psi, Mat(),  stilde, v,      zero,
                     {},    CVec(n), CVec(n), Mat(), CMat(), CMat(), CMat()};

    // rho~ from the eigenbasis against 1: weights |<1, v~_j>|^2 = (sqrt(w)^T v_j)^2
    m.rho_tilde.resize(n);
    {
        const Vec overlaps = v.transpose() * sw;
        for (int j = 0; j < n; ++j) m.rho_tilde[j] = {stilde[j], overlaps[j] * overlaps[j]};
    }

    int idx = 0;
    for (int j = 0; j < n; ++j)
        m.psi_tilde_full[j] = zero[j] ? Complex(1.0, 0.0) : datum.psi_tilde[idx++];

    const Mat mtilde_ortho = v * stilde.asDiagonal() * v.transpose();
    m.Mtilde = space.from_ortho(mtilde_ortho.cast<Complex>()).real();
    const Mat sigma0_ortho = mtilde_ortho * s.cwiseInverse().asDiagonal();
    m.Sigma0_star = space.from_ortho(sigma0_ortho.cast<Complex>()).real();

    const CMat psit_ortho =
        v.cast<Complex>() * m.psi_tilde_full.asDiagonal() * v.transpose().cast<Complex>();
    const CMat sigma_ortho =
        psit_ortho * sigma0_ortho.cast<Complex>() * datum.psi.asDiagonal();
    m.Sigma_star = space.from_ortho(sigma_ortho);

    for (int j = 0; j < n; ++j) m.q[j] = std::conj(datum.psi[j]) / s[j];

    // Hf = M conj(Psi)(M) conj(f): diagonal kernel. H~f = M~ Psi~(M~) conj(f).
    CVec hdiag(n);
    for (int j = 0; j < n; ++j) hdiag[j] = s[j] * std::conj(datum.psi[j]);
    m.H_kernel = CMat(hdiag.asDiagonal());
    const CMat htilde_ortho =
        (v * stilde.asDiagonal()).cast<Complex>() * m.psi_tilde_full.asDiagonal() *
        v.transpose().cast<Complex>();
    m.Htilde_kernel = space.from_ortho(htilde_ortho);
    return m;
}

CMat ModelOperators::psi_tilde_of_Mtilde() const {
    const CMat ortho = Vtilde_ortho.cast<Complex>() * psi_tilde_full.asDiagonal() *
                       Vtilde_ortho.transpose().cast<Complex>();
    return space.from_ortho(ortho);
}

CVec apply_antilinear(const CMat& kernel, const CVec& f) {
    if (kernel.cols() != f.size())
        throw Error(ErrorCode::DimensionMismatch, "kernel is " + std::to_string(kernel.rows()) +
                                                      "x" + std::to_string(kernel.cols()) +
                                                      ", vector has " + std::to_string(f.size()));
    return kernel * f.conjugate();
}

std::pair<double, double> strict_contraction_check(const ModelOperators& model) {
    const Vec isqrt_s = model.s.cwiseSqrt().cwiseInverse();
    const Mat mtilde_ortho =
        model.Vtilde_ortho * model.stilde.asDiagonal() * model.Vtilde_ortho.transpose();
    const Mat sym = isqrt_s.asDiagonal() * mtilde_ortho * isqrt_s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (sym + sym.transpose()),
                                          Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    const double nrm = es.eigenvalues().cwiseAbs().maxCoeff();
    return {nrm, lmax};
}

CyclicityReport cyclicity_grams(const ModelOperators& model) {
    const int n = model.dim();
    auto gram_stats = [n](const Mat& a_ortho, const Vec& start) {
        Mat krylov(n, n);
        Vec x = start;
        for (int k = 0; k < n; ++k) {
            krylov.col(k) = x / x.norm();
            x = a_ortho * krylov.col(k);
        }
        Eigen::JacobiSVD<Mat> svd(krylov);
        const Vec sv = svd.singularValues();
        return std::make_pair(sv(n - 1), sv(0) / sv(n - 1));
    };
    const Mat m2 = Mat(model.s.cwiseAbs2().asDiagonal());
    const Mat mt2 = model.Vtilde_ortho * model.stilde.cwiseAbs2().asDiagonal() *
                    model.Vtilde_ortho.transpose();
    const Vec ones_ortho = model.space.sqrt_w();
    auto [sv_m, cond_m] = gram_stats(m2, ones_ortho);
    auto [sv_t, cond_t] = gram_stats(mt2, ones_ortho);
    return {sv_m, sv_t, cond_m, cond_t};
}

}  // namespace hankel
