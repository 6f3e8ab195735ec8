#pragma once

#include <cstdint>
#include <vector>

#include "hankel/direct_map.hpp"
#include "hankel/model.hpp"

namespace hankel {

// u^_k = <(Sigma*)^k 1, q>, computed by repeated application of Sigma*.
// With K < 0 the truncation order is chosen automatically from the decay:
// iteration stops once ||(Sigma*)^{K+1} 1|| * ||q|| <= tail_tol. Automatic
// choice requires spectral radius < 1 - 1e-6.
HankelSymbol recover_symbol(const ModelOperators& model, int K = -1, double tail_tol = 1e-12);
HankelSymbol recover_symbol(const SpectralDatum& datum, int K = -1, double tail_tol = 1e-12);

// u(z) = <(I - z Sigma*)^{-1} 1, q> for |z| <= 1 - 1e-9.
Complex recover_symbol_resolvent(const ModelOperators& model, Complex z);
Complex recover_symbol_resolvent(const SpectralDatum& datum, Complex z);

double spectral_radius(const CMat& a);

struct StabilityReport {
    std::vector<double> decay_curve;  // ||(Sigma*)^k 1|| for k = 0..k_max
    double spectral_radius;
    // per probe (probe 0 is 1, the rest are seeded random vectors):
    std::vector<double> probe_terminal_ratio;  // ||(Sigma*)^{k_max} f|| / ||f||
    std::vector<double> isometry_defect;       // | ||f||^2 - sum_{k<k_max} |<f,Sigma^k q>|^2 |
    double max_telescoping_residual;  // worst violation of the exact identity over all n, probes
    int k_half_decay;                 // first k with curve <= curve[0]/2, -1 if none
    double terminal_ratio;            // curve[k_max]/curve[0]
    double plateau;                   // max terminal ratio over 1 and all probes
    enum class Verdict { Stable, NotStable, Inconclusive } verdict;
    double tail_bound;  // ||(Sigma*)^{k_max} 1|| * ||q||
};

// Decay diagnostics for Sigma*. The telescoping identity
//   ||f||^2 - ||(Sigma*)^n f||^2 = sum_{k<n} |<(Sigma*)^k f, q>|^2
// is exact and asserted at every n; its violation indicates wiring bugs,
// not instability. Verdict: Stable iff spectral radius < 1 - eps_sr;
// NotStable iff >= 1 within 1e-12; otherwise Inconclusive (the common case
// for discretized continuum data, where the report's plateau statistics
// carry the information).
StabilityReport stability_report(const ModelOperators& model, int k_max = 200, int probes = 3,
                                 std::uint64_t seed = 1234, double eps_sr = 1e-8);
StabilityReport stability_report(const SpectralDatum& datum, int k_max = 200, int probes = 3,
                                 std::uint64_t seed = 1234, double eps_sr = 1e-8);

struct RoundtripResult {
    HankelSymbol u;
    SpectralDatum datum_out;
    double max_error;  // componentwise over atoms, weights, psi, psi_tilde
};

// inverse -> forward; error against the input datum.
RoundtripResult roundtrip(const SpectralDatum& datum, int N = -1, double tail_tol = 1e-12);

double datum_distance(const SpectralDatum& a, const SpectralDatum& b);

}  // namespace hankel
