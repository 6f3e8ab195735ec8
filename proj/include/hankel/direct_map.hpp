#pragma once

#include "hankel/model.hpp"
#include "hankel/types.hpp"

namespace hankel {

// Finite analytic symbol u = sum_k coeffs[k] z^k.
struct HankelSymbol {
    CVec coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    double norm() const { return coeffs.norm(); }
    // drops trailing coefficients below 1e-14 * ||u||
    HankelSymbol trimmed() const;
    bool is_real(double tol = 1e-12) const;
};

// Finite sections Gamma[j][k] = u^(j+k), Gamma~[j][k] = u^(j+k+1). For
// N >= order+1 the matrices represent H_u and H~_u exactly on the range.
struct HankelMatrices {
    int N;
    CMat Gamma;
    CMat Gamma_tilde;
    CMat range_basis;  // N x r, orthonormal columns spanning Ran Gamma
    Vec singvals;      // s_1 >= ... >= s_r (descending), positive part only
    int rank;
};

HankelMatrices hankel_matrices(const HankelSymbol& u, int N, double tau_rank = 1e-10);

struct SimplicityReport {
    double gram_det_H;       // det of the normalized Gram of {H^{2k} u}, k < r
    double gram_det_Htilde;  // same for H~ restricted to Ran H
    double min_singval_gap;  // min relative gap, both operators
    bool is_simple;
};

SimplicityReport simplicity_check(const HankelSymbol& u, int N,
                                  double gram_floor = 1e-12, double gap_floor = 1e-8);

// The forward spectral problem: (rho, Psi_u, Psi~_u) from the eigenbases of
// H_u^2 and H~_u^2 on the closure of Ran H_u. Phases come out of the ratios
// Psi(s_j) = c_j conj(mu_j) / (s_j conj(c_j)) with c_j = <u, v_j> and
// mu_j = <Gamma conj(v_j), v_j>, which are independent of the eigenvector
// phase choice.
SpectralDatum forward_spectral_map(const HankelSymbol& u, int N, double tau_rank = 1e-10);

struct SelfAdjointReport {
    double residual_gamma;        // ||Gamma - Psi(|Gamma|)|Gamma||| / ||Gamma||
    double residual_gamma_tilde;  // same for the truncated operator
    double max_imag_psi;          // largest |Im| over both phase families
};

// For real symbols: checks that the datum phases give the polar
// decompositions of Gamma and Gamma~ with the +-1 sign functions.
SelfAdjointReport selfadjoint_checks(const HankelSymbol& u, int N);

}  // namespace hankel
