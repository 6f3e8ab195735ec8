#pragma once

#include <utility>
#include <vector>

#include "hankel/direct_map.hpp"
#include "hankel/model.hpp"

namespace hankel {

// Evolution on spectral data: rho is frozen, the phases rotate as
// Psi_t(s) = e^{-i t s^2} Psi_0(s), Psi~_t(s) = e^{+i t s^2} Psi~_0(s).
// The state stores (datum at t=0, t); materialization composes the phases
// from scratch, so advancing is an exact group action on t.
class FlowState {
public:
    FlowState(SpectralDatum datum0, double t = 0.0);

    double t() const { return t_; }
    void advance(double dt) { t_ += dt; }
    const SpectralDatum& initial() const { return datum0_; }
    SpectralDatum datum() const;  // phases rotated to time t_

private:
    SpectralDatum datum0_;
    Vec stilde_pos_;  // positive atoms of rho~, for the Psi~ rotation
    double t_;
};

SpectralDatum flow_spectral(const SpectralDatum& datum0, double t);

// -i P(|u|^2 u) for modes u^_0..u^_{N-1}; O(N^2) by two convolutions.
CVec szego_rhs(const CVec& modes);

struct GalerkinState {
    CVec modes;
    double t;
    double dt;
    double l2_norm0;  // conserved reference
};

// Fixed-step classical RK4 with an L^2 drift monitor.
GalerkinState integrate_direct(const HankelSymbol& u0, double t_end, int n_modes, double dt);

struct FlowComparison {
    double max_coeff_error;  // max_k |u^spec_k(t) - u^gal_k(t)| over the mode window
    CVec spectral_coeffs;
    CVec galerkin_coeffs;
};

// Spectral flow + explicit recovery against the Galerkin integrator. The
// spectral side needs the datum of u0 (simplicity) and a Stable-or-decaying
// Sigma*; refuses otherwise.
FlowComparison compare_flows(const HankelSymbol& u0, double t, int n_modes, double dt);

struct ConservationReport {
    double max_singval_drift;  // truncated Hankel singular values along the flow
    double max_l2_drift;
    double max_opnorm_drift;  // largest singular value (BMO proxy)
    int samples;
};

ConservationReport conservation_checks(const HankelSymbol& u0, double t_end, int n_modes,
                                       double dt, int samples = 8);

// u^_0(t) = sum_j e^{-i t s_j^2} Psi_0(s_j) w_j / s_j.
Complex hat_u0_of_t(const SpectralDatum& datum0, double t);

// Atom (lambda_j, a_j) list of a complex pure point measure, e.g. the
// pushforward of Psi_0/s drho under s -> s^2.
using ComplexAtoms = std::vector<std::pair<double, Complex>>;

ComplexAtoms pushforward_symbol_measure(const SpectralDatum& datum);

// (1/2T) int_{-T}^{T} |mu^(t)|^2 dt via the exact sinc double sum
// sum_{jk} sinc(T(l_j - l_k)) a_j conj(a_k); for atomic mu the T -> inf
// limit is sum |a_j|^2.
double ap_time_average(const ComplexAtoms& atoms, double T);

// Same average by direct time quadrature; agreement with the sinc sum is a
// discretization-free identity check.
double ap_time_average_quadrature(const ComplexAtoms& atoms, double T);

}  // namespace hankel
