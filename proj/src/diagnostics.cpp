#include "hankel/diagnostics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace hankel {

DefectClassification classify_defect(const SpectralMeasure& rho, double tol) {
    DefectClassification d;
    d.inv2 = rho.inverse_moment(2);
    d.inv4 = rho.inverse_moment(4);
    d.kase = std::abs(d.inv2 - 1.0) <= tol ? DefectClassification::Case::Case_1_1_a
                                           : DefectClassification::Case::Case_1_1_b;
    return d;
}

DefectLadderReport classify_defect_ladder(const std::vector<SpectralMeasure>& ladder,
                                          double tol, double trend_factor) {
    if (ladder.empty()) throw Error(ErrorCode::InvalidArgument, "empty ladder");
    DefectLadderReport rep;
    bool all_critical = true;
    bool monotone = true;
    for (size_t i = 0; i < ladder.size(); ++i) {
        rep.levels.push_back(classify_defect(ladder[i], tol));
        if (std::abs(rep.levels[i].inv2 - 1.0) > tol) all_critical = false;
        if (i > 0 && rep.levels[i].inv4 <= rep.levels[i - 1].inv4) monotone = false;
    }
    const double growth = rep.levels.back().inv4 / rep.levels.front().inv4;
    rep.inv4_divergence_trend = all_critical && monotone && growth >= trend_factor;
    rep.kase = rep.inv4_divergence_trend ? DefectClassification::Case::Case_1_0
                                         : rep.levels.back().kase;
    return rep;
}

CMat build_W(const ModelOperators& model) {
    const CMat w_op = model.psi_tilde_of_Mtilde() * CMat(model.psi.asDiagonal());
    const CMat w_ortho = model.space.to_ortho(w_op);
    const int n = model.dim();
    const double resid = (w_ortho.adjoint() * w_ortho - CMat::Identity(n, n)).norm();
    if (resid > 1e-10 * std::sqrt(static_cast<double>(n)))
        throw Error(ErrorCode::NotUnimodular,
                    "W is not unitary, residual " + std::to_string(resid));
    return w_op;
}

SpectralTypeProbe spectral_type_probe(const WeightedSpace& space, const CMat& w_op,
                                      const CVec& probe, const std::vector<int>& ladder) {
    if (ladder.empty()) throw Error(ErrorCode::InvalidArgument, "empty ladder");
    const double pn = space.norm(probe);
    if (!(pn > 0.0)) throw Error(ErrorCode::InvalidArgument, "zero probe vector");

    const CMat w_ortho = space.to_ortho(w_op);
    Eigen::ComplexEigenSolver<CMat> es(w_ortho);
    const int n = space.dim();

    SpectralTypeProbe out;
    out.ladder = ladder;
    const CVec probe_ortho = space.vec_to_ortho(probe) / pn;
    std::vector<std::pair<double, double>> phases(n);
    for (int j = 0; j < n; ++j) {
        phases[j].first = std::arg(es.eigenvalues()[j]);
        phases[j].second = std::norm(es.eigenvectors().col(j).dot(probe_ortho));
    }
    std::sort(phases.begin(), phases.end());
    out.eigenphases = Vec(n);
    out.eigenweights = Vec(n);
    for (int j = 0; j < n; ++j) {
        out.eigenphases[j] = phases[j].first;
        out.eigenweights[j] = phases[j].second;
    }

    const int n_max = *std::max_element(ladder.begin(), ladder.end());
    CVec x = probe_ortho;
    double acc = 0.0;
    size_t li = 0;
    std::vector<int> sorted_ladder = ladder;
    std::sort(sorted_ladder.begin(), sorted_ladder.end());
    out.cesaro.assign(ladder.size(), 0.0);
    for (int k = 0; k < n_max && li < sorted_ladder.size(); ++k) {
        acc += std::norm(x.dot(probe_ortho));
        x = w_ortho * x;
        while (li < sorted_ladder.size() && k + 1 == sorted_ladder[li]) {
            out.cesaro[li] = acc / sorted_ladder[li];
            ++li;
        }
    }
    out.ladder = sorted_ladder;

    // log-log least squares slope across the ladder
    double mx = 0, my = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(sorted_ladder.size());
    for (int i = 0; i < m; ++i) {
        mx += std::log(static_cast<double>(sorted_ladder[i]));
        my += std::log(std::max(out.cesaro[i], 1e-300));
    }
    mx /= m;
    my /= m;
    for (int i = 0; i < m; ++i) {
        const double dx = std::log(static_cast<double>(sorted_ladder[i])) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(std::max(out.cesaro[i], 1e-300)) - my);
    }
    out.slope = m > 1 ? sxy / sxx : 0.0;
    if (out.slope > -0.3)
        out.hint = SpectralTypeProbe::Hint::PurePointLike;
    else if (out.slope < -0.7)
        out.hint = SpectralTypeProbe::Hint::AbsolutelyContinuousLike;
    else
        out.hint = SpectralTypeProbe::Hint::Mixed;
    return out;
}

SpectralTypeProbe spectral_type_probe(const ModelOperators& model,
                                      const std::vector<int>& ladder) {
    return spectral_type_probe(model.space, build_W(model), model.q, ladder);
}

SpectralDatum gauge_transform(const SpectralDatum& datum,
                              const std::function<Complex(double)>& psi_sharp) {
    const ModelOperators model = build_model(datum);
    auto eval = [&psi_sharp](double s) {
        const Complex v = psi_sharp(s);
        if (std::abs(std::abs(v) - 1.0) > 1e-12)
            throw Error(ErrorCode::NotUnimodular,
                        "|psi#(" + std::to_string(s) + ")| = " + std::to_string(std::abs(v)));
        return v;
    };
    SpectralDatum out = datum;
    for (int j = 0; j < out.psi.size(); ++j)
        out.psi[j] = std::conj(eval(model.s[j])) * datum.psi[j];
    int idx = 0;
    for (int j = 0; j < model.dim(); ++j) {
        if (model.tilde_zero[j]) continue;
        out.psi_tilde[idx] = eval(model.stilde[j]) * datum.psi_tilde[idx];
        ++idx;
    }
    return out;
}

}  // namespace hankel
