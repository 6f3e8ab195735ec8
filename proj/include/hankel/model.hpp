#pragma once

#include <vector>

#include "hankel/measure.hpp"
#include "hankel/types.hpp"

namespace hankel {

// L^2(rho) realized as C^n with the weighted inner product
// <f,g> = sum_j w_j f_j conj(g_j). Vectors hold function samples f(s_j);
// the weights stay in the inner product, so multiplication operators are
// plain diagonal matrices. Hermitian/unitary numerics go through the
// orthonormal coordinates g = D^{1/2} f.
class WeightedSpace {
public:
    explicit WeightedSpace(Vec weights);

    int dim() const { return static_cast<int>(w_.size()); }
    const Vec& w() const { return w_; }
    const Vec& sqrt_w() const { return sw_; }

    Complex inner(const CVec& f, const CVec& g) const;
    double norm(const CVec& f) const;
    CVec ones() const { return CVec::Ones(dim()); }

    // operator acting on samples <-> same operator in orthonormal coordinates
    CMat to_ortho(const CMat& a) const;    // D^{1/2} A D^{-1/2}
    CMat from_ortho(const CMat& a) const;  // D^{-1/2} A D^{1/2}
    CVec vec_to_ortho(const CVec& f) const { return sw_.asDiagonal() * f; }
    CVec vec_from_ortho(const CVec& g) const;

    // adjoint with respect to the weighted inner product: D^{-1} A^H D
    CMat adjoint(const CMat& a) const;
    // operator norm with respect to the weighted inner product
    double op_norm(const CMat& a) const;

private:
    Vec w_, sw_, isw_;
};

// Spectral datum (rho, Psi, Psi~). psi is sampled on the atoms of rho,
// psi_tilde on the strictly positive atoms of the derived measure rho~,
// in ascending order of support. The value of Psi~ at a zero atom of rho~
// does not enter any operator; the convention Psi~(0) = 1 is used.
struct SpectralDatum {
    SpectralMeasure rho;
    CVec psi;
    CVec psi_tilde;

    void check_unimodular(double tol = 1e-12) const;
};

struct ModelOperators {
    WeightedSpace space;
    Vec s;       // diagonal of M (ascending atoms of rho)
    CVec psi;    // Psi on the atoms
    Mat Mtilde;  // (M^2 - <.,1>1)^{1/2}, sample coordinates

    // eigendecomposition of Mtilde: values ascending, clamped at zero
    Vec stilde;            // eigenvalues s~_j >= 0
    Mat Vtilde_ortho;      // orthonormal eigenvectors, orthonormal coordinates
    std::vector<bool> tilde_zero;
    std::vector<Atom> rho_tilde;  // (s~_j, |<1, v~_j>|^2), may contain a zero atom
    CVec psi_tilde_full;          // Psi~ on all s~_j, 1 at the zero atoms

    CVec q;          // q(s) = conj(Psi(s))/s
    Mat Sigma0_star;    // Mtilde M^{-1}
    CMat Sigma_star;    // Psi~(M~) Mtilde M^{-1} Psi(M)
    CMat H_kernel;       // B with Hf = B conj(f)   (diagonal)
    CMat Htilde_kernel;  // B~ with H~f = B~ conj(f)

    int dim() const { return space.dim(); }
    CMat psi_tilde_of_Mtilde() const;  // Psi~(M~) in sample coordinates
    CVec sigma_star_apply(const CVec& f) const { return Sigma_star * f; }
};

WeightedSpace build_weighted_space(const SpectralMeasure& rho);

// Model triple from an abstract spectral datum. Throws NotPSD when the
// eigenvalues of M^2 - <.,1>1 dip below -psd_clamp_rel * ||M^2||, and
// MissingPsiTildeSample when psi_tilde does not match the number of
// strictly positive atoms of rho~.
ModelOperators build_model(const SpectralDatum& datum);

// Anti-linear application f -> B conj(f). Compositions obey
// (A1 A2) f = B1 conj(B2) f.
CVec apply_antilinear(const CMat& kernel, const CVec& f);

// Largest eigenvalue of the symmetrization M^{-1/2} Mtilde M^{-1/2};
// strictly below 1 for every valid measure. Returns {op norm, max eig}.
std::pair<double, double> strict_contraction_check(const ModelOperators& model);

struct CyclicityReport {
    double min_singval_M;       // smallest singular value of the normalized Gram of {M^{2k} 1}
    double min_singval_Mtilde;  // same for Mtilde
    double cond_M;
    double cond_Mtilde;
};

// Gram matrices G_kl = <A^k 1, A^l 1>, k,l < n, for A = M^2 and A = Mtilde^2,
// with columns normalized. Nonsingularity witnesses that 1 is cyclic.
CyclicityReport cyclicity_grams(const ModelOperators& model);

// Number of strictly positive atoms of rho~ for a measure (atom count minus
// the zero atom present exactly when sum w/s^2 = 1).
int count_positive_tilde_atoms(const SpectralMeasure& rho);

// Eigenvalues of M~^2 below zero_rel * max(lambda, ||M^2||) count as exact zeros.
// The squared scale is the right one: roundoff in the eigensolver lives at
// eps * ||M^2||, which maps to sqrt(eps) * ||M|| after the square root.
inline constexpr double kTildeZeroRel = 1e-12;
inline constexpr double kPsdClampRel = 1e-8;

}  // namespace hankel
