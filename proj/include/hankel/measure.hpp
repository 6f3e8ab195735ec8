#pragma once

#include <functional>
#include <vector>

#include "hankel/types.hpp"

namespace hankel {

struct Atom {
    double s;  // support point, > 0
    double w;  // weight, > 0
};

// Finite atomic measure on (0,inf) with the normalization
// sum_j w_j / s_j^2 <= 1 + tol. Immutable after validation.
class SpectralMeasure {
public:
    // Sorts, checks positivity, distinctness and normalization.
    static SpectralMeasure validate(std::vector<Atom> raw, double tol = 1e-12);

    int size() const { return static_cast<int>(atoms_.size()); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    double tol() const { return tol_; }

    Vec support() const;
    Vec weights() const;
    double total_mass() const;

    // sum_j w_j s_j^{-p}
    double inverse_moment(int p) const;

private:
    SpectralMeasure(std::vector<Atom> atoms, double tol) : atoms_(std::move(atoms)), tol_(tol) {}
    std::vector<Atom> atoms_;
    double tol_;
};

struct KernelVerdict {
    enum class Verdict { TrivialKernel, NontrivialKernel };
    double inv2;  // sum w/s^2
    double inv4;  // sum w/s^4
    Verdict verdict;
};

// The trivial-kernel dichotomy needs inv2 = 1 together with a divergent
// inv4; a finite atomic measure always has inv4 finite, so the verdict is
// NontrivialKernel with both moments reported. Divergence of inv4 can be
// observed only across a refinement ladder (see diagnostics).
KernelVerdict classify_kernel(const SpectralMeasure& rho);

struct AngleAtom {
    double angle;  // in (-pi, pi]
    double weight;
};

// Pushforward of rho by a unimodular function sampled on its atoms.
// Atoms whose angles coincide within the measure tolerance are merged;
// total mass is preserved exactly.
std::vector<AngleAtom> pushforward_unimodular(const SpectralMeasure& rho, const CVec& phase);

// Midpoint discretization of density(s) ds on [a,b] with n atoms, scaled by
// `scale`. This is the only entrance for continuous measures.
SpectralMeasure discretize_density(const std::function<double(double)>& density, double a,
                                   double b, int n, double scale = 1.0, double tol = 1e-12);

// Same, but the weights are rescaled afterwards so that sum w/s^2 equals
// inv2_target exactly (in floating point) for the discretized atoms.
SpectralMeasure discretize_density_inv2(const std::function<double(double)>& density, double a,
                                        double b, int n, double inv2_target, double tol = 1e-12);

}  // namespace hankel
