#include "hankel/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hankel {

SpectralMeasure SpectralMeasure::validate(std::vector<Atom> raw, double tol) {
    if (raw.empty())
        throw Error(ErrorCode::InvalidArgument, "measure needs at least one atom");
    if (tol < 0.0)
        throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
    for (const Atom& a : raw) {
        if (!(a.s > 0.0) || !std::isfinite(a.s))
            throw Error(ErrorCode::NonPositiveSupport,
                        "support point " + std::to_string(a.s));
        if (!(a.w > 0.0) || !std::isfinite(a.w))
            throw Error(ErrorCode::NonPositiveWeight,
                        "weight " + std::to_string(a.w) + " at s=" + std::to_string(a.s));
    }
    std::sort(raw.begin(), raw.end(), [](const Atom& x, const Atom& y) { return x.s < y.s; });
    for (size_t j = 1; j < raw.size(); ++j) {
        if (raw[j].s - raw[j - 1].s <= tol * std::max(1.0, raw[j].s))
            throw Error(ErrorCode::DuplicateAtom, "atoms at s=" + std::to_string(raw[j - 1].s) +
                                                      " and s=" + std::to_string(raw[j].s));
    }
    double inv2 = 0.0;
    for (const Atom& a : raw) inv2 += a.w / (a.s * a.s);
    if (inv2 > 1.0 + tol) {
        std::ostringstream os;
        os << "sum w/s^2 = " << inv2 << " exceeds 1";
        throw Error(ErrorCode::NormalizationViolated, os.str());
    }
    return SpectralMeasure(std::move(raw), tol);
}

Vec SpectralMeasure::support() const {
    Vec s(size());
    for (int j = 0; j < size(); ++j) s[j] = atoms_[j].s;
    return s;
}

Vec SpectralMeasure::weights() const {
    Vec w(size());
    for (int j = 0; j < size(); ++j) w[j] = atoms_[j].w;
    return w;
}

double SpectralMeasure::total_mass() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.w;
    return m;
}

double SpectralMeasure::inverse_moment(int p) const {
    if (p <= 0) throw Error(ErrorCode::InvalidArgument, "moment order must be positive");
    double acc = 0.0;
    for (const Atom& a : atoms_) acc += a.w * std::pow(a.s, -p);
    return acc;
}

KernelVerdict classify_kernel(const SpectralMeasure& rho) {
    KernelVerdict v;
    v.inv2 = rho.inverse_moment(2);
    v.inv4 = rho.inverse_moment(4);
    // inv4 is finite for every atomic measure, so the trivial-kernel branch
    // is unreachable here by construction.
    v.verdict = KernelVerdict::Verdict::NontrivialKernel;
    return v;
}

std::vector<AngleAtom> pushforward_unimodular(const SpectralMeasure& rho, const CVec& phase) {
    const int n = rho.size();
    if (phase.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "phase samples do not match atom count");
    for (int j = 0; j < n; ++j) {
        if (std::abs(std::abs(phase[j]) - 1.0) > 1e-12)
            throw Error(ErrorCode::NotUnimodular,
                        "|phase| = " + std::to_string(std::abs(phase[j])));
    }
    std::vector<AngleAtom> out;
    out.reserve(n);
    for (int j = 0; j < n; ++j)
        out.push_back({std::arg(phase[j]), rho.atoms()[j].w});
    std::sort(out.begin(), out.end(),
              [](const AngleAtom& x, const AngleAtom& y) { return x.angle < y.angle; });
    const double merge_tol = std::max(rho.tol(), 1e-12);
    std::vector<AngleAtom> merged;
    for (const AngleAtom& a : out) {
        if (!merged.empty() && a.angle - merged.back().angle <= merge_tol)
            merged.back().weight += a.weight;
        else
            merged.push_back(a);
    }
    return merged;
}

SpectralMeasure discretize_density(const std::function<double(double)>& density, double a,
                                   double b, int n, double scale, double tol) {
    if (!(a < b) || n < 1)
        throw Error(ErrorCode::InvalidArgument, "need a < b and n >= 1");
    const double h = (b - a) / n;
    std::vector<Atom> atoms(n);
    for (int j = 0; j < n; ++j) {
        const double s = a + (j + 0.5) * h;
        atoms[j] = {s, scale * density(s) * h};
    }
    return SpectralMeasure::validate(std::move(atoms), tol);
}

SpectralMeasure discretize_density_inv2(const std::function<double(double)>& density, double a,
                                        double b, int n, double inv2_target, double tol) {
    if (!(a < b) || n < 1)
        throw Error(ErrorCode::InvalidArgument, "need a < b and n >= 1");
    const double h = (b - a) / n;
    std::vector<Atom> atoms(n);
    double inv2 = 0.0;
    for (int j = 0; j < n; ++j) {
        const double s = a + (j + 0.5) * h;
        atoms[j] = {s, density(s) * h};
        inv2 += atoms[j].w / (s * s);
    }
    const double c = inv2_target / inv2;
    for (Atom& at : atoms) at.w *= c;
    return SpectralMeasure::validate(std::move(atoms), tol);
}

}  // namespace hankel
