#include "hankel/perturbation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace hankel {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
const double kGlNodes[8] = {0.0,
                            0.2011940939974345,
                            0.3941513470775634,
                            0.5709721726085388,
                            0.7244177313601701,
                            0.8482065834104272,
                            0.9372733924007060,
                            0.9879925180204854};
const double kGlWeights[8] = {0.2025782419255613, 0.1984314853271116, 0.1861610000155622,
                              0.1662692058169939, 0.1395706779261543, 0.1071592204671719,
                              0.0703660474881081, 0.0307532419961173};

template <typename F, typename V>
V gl15(const F& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    V acc = kGlWeights[0] * f(mid);
    for (int i = 1; i < 8; ++i) {
        acc += kGlWeights[i] * (f(mid + half * kGlNodes[i]) + f(mid - half * kGlNodes[i]));
    }
    return half * acc;
}

template <typename F, typename V, typename NormFn>
V adaptive_gl_rec(const F& f, double lo, double hi, double tol, int max_depth,
                  const NormFn& norm_of, long& evals, bool& converged, double scale) {
    const V whole = gl15<F, V>(f, lo, hi);
    const double mid = 0.5 * (lo + hi);
    const V left = gl15<F, V>(f, lo, mid);
    const V right = gl15<F, V>(f, mid, hi);
    evals += 45;
    V sum = left + right;
    const double err = norm_of(sum - whole);
    // the global-scale floor keeps deep panels from chasing roundoff
    const double target = std::max(tol, 1e-15 * scale);
    if (err <= target || max_depth <= 0) {
        if (max_depth <= 0 && err > target) converged = false;
        return sum;
    }
    return adaptive_gl_rec<F, V>(f, lo, mid, 0.5 * tol, max_depth - 1, norm_of, evals,
                                 converged, scale) +
           adaptive_gl_rec<F, V>(f, mid, hi, 0.5 * tol, max_depth - 1, norm_of, evals,
                                 converged, scale);
}

template <typename F, typename V, typename NormFn>
V adaptive_gl(const F& f, double lo, double hi, double tol, int max_depth,
              const NormFn& norm_of, long& evals, bool& converged) {
    const V whole = gl15<F, V>(f, lo, hi);
    evals += 15;
    const double scale = std::max(norm_of(whole), tol);
    return adaptive_gl_rec<F, V>(f, lo, hi, tol, max_depth, norm_of, evals, converged, scale);
}

// int_T^inf t^2 dt / ((p^2+t^2)(q^2+t^2)), closed form
double tail_integral(double p, double q, double T) {
    if (std::abs(p - q) > 1e-12 * std::max(p, q)) {
        return (p * std::atan2(p, T) - q * std::atan2(q, T)) / (p * p - q * q);
    }
    return 0.5 * (std::atan2(p, T) / p + T / (p * p + T * T));
}

}  // namespace

SpectralMeasure DensityMeasure::discretize(double tol) const {
    return discretize(atom_count, tol);
}

SpectralMeasure DensityMeasure::discretize(int n, double tol) const {
    return discretize_density(w, a, b, n, scale, tol);
}

double DensityMeasure::inverse_moment(int p) const {
    long evals = 0;
    bool ok = true;
    auto f = [this, p](double s) { return scale * w(s) / std::pow(s, p); };
    auto nrm = [](double x) { return std::abs(x); };
    const double v = adaptive_gl<decltype(f), double>(f, a, b, 1e-13, 24, nrm, evals, ok);
    if (!ok) throw Error(ErrorCode::QuadratureNotConverged, "density moment");
    return v;
}

DensityMeasure DensityMeasure::with_inv2(double target) const {
    DensityMeasure out = *this;
    out.scale = 1.0;
    out.scale = target / out.inverse_moment(2);
    return out;
}

double perturbation_determinant(const SpectralMeasure& rho, double t) {
    double acc = 0.0;
    for (const Atom& a : rho.atoms()) acc += a.w / (a.s * a.s + t * t);
    return 1.0 - acc;
}

DefectIntegralResult sigma0_defect_integral(const SpectralMeasure& rho,
                                            const QuadratureSpec& spec) {
    const int n = rho.size();
    const Vec s = rho.support();
    const Vec w = rho.weights();
    const double s_max = s[n - 1];
    const double t_cut = spec.t_cut_factor * s_max;

    auto integrand = [&](double t) -> Mat {
        const double delta = perturbation_determinant(rho, t);
        Vec at(n), bt(n);
        for (int j = 0; j < n; ++j) {
            bt[j] = 1.0 / (s[j] * s[j] + t * t);
            at[j] = bt[j] / s[j];
        }
        Mat op(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) op(i, j) = bt[i] * at[j] * w[j];
        return (2.0 / M_PI) * (t * t / delta) * op;
    };
    auto nrm = [](const Mat& m) { return m.cwiseAbs().maxCoeff(); };

    long evals = 0;
    bool ok = true;
    // split at the support scale; the integrand peaks around t ~ s
    Mat val = adaptive_gl<decltype(integrand), Mat>(integrand, 0.0, 4.0 * s_max,
                                                    0.5 * spec.tol, spec.max_depth, nrm, evals,
                                                    ok);
    val += adaptive_gl<decltype(integrand), Mat>(integrand, 4.0 * s_max, t_cut, 0.5 * spec.tol,
                                                 spec.max_depth, nrm, evals, ok);
    if (!ok) throw Error(ErrorCode::QuadratureNotConverged, "defect integral");

    // tail, Delta ~ 1 closed form
    Mat tail(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            tail(i, j) = (2.0 / M_PI) * tail_integral(s[i], s[j], t_cut) / s[j] * w[j];
    val += tail;
    // neglected Delta correction in the tail: |1/Delta - 1| <= mass/(t^2 Delta)
    const double delta_cut = perturbation_determinant(rho, t_cut);
    const double tail_err = tail.cwiseAbs().maxCoeff() * (1.0 - delta_cut) / delta_cut;

    // direct construction for the error report
    WeightedSpace space = build_weighted_space(rho);
    const Vec& sw = space.sqrt_w();
    Mat a1 = Mat(s.cwiseAbs2().asDiagonal()) - sw * sw.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(a1);
    Vec lam = es.eigenvalues().cwiseMax(0.0);
    const Mat mtilde_ortho =
        es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    const Mat direct_ortho =
        Mat::Identity(n, n) - mtilde_ortho * s.cwiseInverse().asDiagonal();
    const Mat direct =
        space.from_ortho(direct_ortho.cast<Complex>()).real();

    DefectIntegralResult out;
    out.op = val;
    out.direct_error = (val - direct).cwiseAbs().maxCoeff();
    out.tail_estimate = tail_err;
    out.evaluations = evals;
    return out;
}

std::pair<Complex, Complex> cauchy_transforms(const SpectralMeasure& rho, Complex z) {
    Complex t0 = 0.0;
    for (const Atom& a : rho.atoms()) {
        const Complex d = Complex(a.s * a.s, 0.0) - z;
        if (std::abs(d) <= 1e-12)
            throw Error(ErrorCode::TooCloseToSpectrum, "z within 1e-12 of an atom of rho o s^2");
        t0 += a.w / d;
    }
    const Complex denom = 1.0 - t0;
    if (std::abs(denom) <= 1e-12)
        throw Error(ErrorCode::TooCloseToSpectrum, "1 - T0 vanishes (spectrum of Mtilde^2)");
    return {t0, t0 / denom};
}

std::pair<Complex, Complex> cauchy_transforms(const DensityMeasure& dm, Complex z) {
    const double lo = dm.a * dm.a, hi = dm.b * dm.b;
    // pushforward density on the x = s^2 scale
    auto g = [&dm](double x) {
        const double sx = std::sqrt(x);
        return dm.scale * dm.w(sx) / (2.0 * sx);
    };
    const double x0 = z.real();
    long evals = 0;
    bool ok = true;
    auto nrm = [](Complex c) { return std::abs(c); };
    Complex t0;
    if (x0 > lo && x0 < hi && std::abs(z.imag()) < hi - lo) {
        // singularity subtraction at x0; the remaining kernel is bounded
        const double g0 = g(x0);
        auto f = [&](double x) -> Complex { return (g(x) - g0) / (Complex(x, 0.0) - z); };
        t0 = adaptive_gl<decltype(f), Complex>(f, lo, x0, 1e-12, 36, nrm, evals, ok);
        t0 += adaptive_gl<decltype(f), Complex>(f, x0, hi, 1e-12, 36, nrm, evals, ok);
        t0 += g0 * (std::log(Complex(hi, 0.0) - z) - std::log(Complex(lo, 0.0) - z));
    } else {
        if (std::min(std::abs(Complex(lo, 0) - z), std::abs(Complex(hi, 0) - z)) <= 1e-12 ||
            (x0 >= lo && x0 <= hi && std::abs(z.imag()) <= 1e-12))
            throw Error(ErrorCode::TooCloseToSpectrum, "z within 1e-12 of [a^2, b^2]");
        auto f = [&](double x) -> Complex { return g(x) / (Complex(x, 0.0) - z); };
        t0 = adaptive_gl<decltype(f), Complex>(f, lo, hi, 1e-12, 36, nrm, evals, ok);
    }
    if (!ok) throw Error(ErrorCode::QuadratureNotConverged, "Cauchy transform quadrature");
    const Complex denom = 1.0 - t0;
    if (std::abs(denom) <= 1e-12)
        throw Error(ErrorCode::TooCloseToSpectrum, "1 - T0 vanishes");
    return {t0, t0 / denom};
}

KappaResult kappa(const DensityMeasure& dm, double s0) {
    if (!(s0 > dm.a && s0 < dm.b))
        throw Error(ErrorCode::InvalidArgument, "s0 must be interior to [a, b]");
    const double x0 = s0 * s0;
    const double span = dm.b * dm.b - dm.a * dm.a;
    std::vector<Complex> vals;
    for (double eta : {1e-2, 1e-3, 1e-4, 1e-5}) {
        vals.push_back(cauchy_transforms(dm, Complex(x0, eta * span)).first);
    }
    // one Richardson level for error ~ C eta, ladder ratio 10
    std::vector<Complex> rich;
    for (size_t i = 0; i + 1 < vals.size(); ++i)
        rich.push_back((10.0 * vals[i + 1] - vals[i]) / 9.0);
    const Complex t0 = rich.back();
    const double eta_err = std::abs(rich.back() - rich[rich.size() - 2]);
    if (eta_err > 1e-3 * (std::abs(t0) + 1.0))
        throw Error(ErrorCode::BoundaryLimitUnstable,
                    "eta ladder discrepancy " + std::to_string(eta_err));

    KappaResult out;
    out.t0_boundary = t0;
    out.eta_error = eta_err;
    out.f0prime = dm.scale * dm.w(s0) / (2.0 * s0);
    const Complex t1 = t0 / (1.0 - t0);
    out.f1prime = t1.imag() / M_PI;
    out.f1_positive = out.f1prime > 0.0;
    out.kappa = M_PI * M_PI * out.f0prime * out.f1prime;
    return out;
}

SpectralMeasure graded_interface_mesh(const DensityMeasure& dm, double s0, int n_atoms,
                                      double inv2_target) {
    if (!(s0 > dm.a && s0 < dm.b))
        throw Error(ErrorCode::InvalidArgument, "s0 must be interior to [a, b]");
    if (n_atoms < 16 || n_atoms % 2 != 0)
        throw Error(ErrorCode::InvalidArgument, "need an even atom count >= 16");
    const int side = n_atoms / 2;
    // dyadic depth capped so the innermost band stays resolvable in doubles
    const int bands = std::min(40, std::max(5, side / 3));
    const int base = side / bands;
    int extra = side - base * bands;  // spread over the outermost bands

    std::vector<Atom> atoms;
    atoms.reserve(n_atoms);
    for (int lr = 0; lr < 2; ++lr) {
        const double lo = lr == 0 ? dm.a : s0;
        const double hi = lr == 0 ? s0 : dm.b;
        const double len = hi - lo;
        int spread = extra;
        for (int k = 0; k < bands; ++k) {
            // band k: distance from s0 in (len 2^{-k-1}, len 2^{-k}], innermost closes at 0
            const double d_hi = len * std::pow(2.0, -k);
            const double d_lo = k + 1 == bands ? 0.0 : len * std::pow(2.0, -k - 1);
            int cells = base + (spread > 0 ? 1 : 0);
            if (spread > 0) --spread;
            const double h = (d_hi - d_lo) / cells;
            for (int c = 0; c < cells; ++c) {
                const double d = d_lo + (c + 0.5) * h;
                const double sp = lr == 0 ? s0 - d : s0 + d;
                atoms.push_back({sp, dm.scale * dm.w(sp) * h});
            }
        }
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.s < y.s; });
    double inv2 = 0.0;
    for (const Atom& a : atoms) inv2 += a.w / (a.s * a.s);
    for (Atom& a : atoms) a.w *= inv2_target / inv2;
    // neighbors near s0 sit ~1e-13 apart by construction; the duplicate
    // check needs the tighter tolerance
    return SpectralMeasure::validate(std::move(atoms), 1e-14);
}

TwoProjectionReport halmos_arc_experiment(const DensityMeasure& dm, double s0,
                                          const std::vector<int>& refinements, double inflation,
                                          double coverage_eps) {
    const KappaResult kr = kappa(dm, s0);
    TwoProjectionReport rep;
    rep.s0 = s0;
    rep.kappa = kr.kappa;
    rep.sigma_max = std::sqrt(kr.kappa);
    rep.theta_max = 2.0 * std::asin(std::min(1.0, rep.sigma_max));
    rep.endpoint = Complex(1.0 - 2.0 * kr.kappa,
                           2.0 * std::sqrt(std::max(0.0, kr.kappa * (1.0 - kr.kappa))));
    rep.coverage_eps = coverage_eps;
    rep.inflation = inflation;
    const double inv2_target = dm.inverse_moment(2);
    const double x0 = s0 * s0;

    for (int m : refinements) {
        const SpectralMeasure rho = graded_interface_mesh(dm, s0, m, inv2_target);
        const int n = rho.size();
        const Vec s = rho.support();
        const Vec sw = rho.weights().cwiseSqrt();
        Mat a1 = Mat(s.cwiseAbs2().asDiagonal()) - sw * sw.transpose();
        Eigen::SelfAdjointEigenSolver<Mat> es(a1);
        const Vec lam = es.eigenvalues();
        const Mat& v = es.eigenvectors();

        Vec below(n);
        for (int j = 0; j < n; ++j) below[j] = lam[j] < x0 ? 1.0 : 0.0;
        const Mat q_proj = v * below.asDiagonal() * v.transpose();
        Mat refl_q = Mat::Identity(n, n) - 2.0 * q_proj;
        Vec p_diag(n);
        for (int j = 0; j < n; ++j) p_diag[j] = s[j] * s[j] < x0 ? -1.0 : 1.0;
        const Mat prod = refl_q * p_diag.asDiagonal();

        Eigen::EigenSolver<Mat> ev(prod, /*computeEigenvectors=*/false);
        ArcLevel level;
        level.atoms = m;
        level.n_nontrivial = 0;
        level.n_negative_fixed = 0;
        level.max_abs_phase = 0.0;
        level.inside_inflated = true;
        for (int j = 0; j < n; ++j) {
            const double th = std::arg(ev.eigenvalues()[j]);
            if (std::abs(th) <= 1e-7) continue;  // +1 fixed points
            if (std::abs(std::abs(th) - M_PI) <= 1e-7) {
                ++level.n_negative_fixed;
                continue;
            }
            ++level.n_nontrivial;
            level.phases.push_back(th);
            level.max_abs_phase = std::max(level.max_abs_phase, std::abs(th));
            if (std::abs(th) > (1.0 + inflation) * rep.theta_max) level.inside_inflated = false;
        }
        std::sort(level.phases.begin(), level.phases.end());
        // coverage of the predicted arc by the computed phases
        const int grid_n = 401;
        int covered = 0;
        for (int g = 0; g < grid_n; ++g) {
            const double th = -rep.theta_max + 2.0 * rep.theta_max * g / (grid_n - 1);
            double best = std::numeric_limits<double>::infinity();
            for (double p : level.phases) best = std::min(best, std::abs(p - th));
            if (best <= coverage_eps * rep.theta_max) ++covered;
        }
        level.coverage = static_cast<double>(covered) / grid_n;
        rep.levels.push_back(std::move(level));
    }
    return rep;
}

}  // namespace hankel
