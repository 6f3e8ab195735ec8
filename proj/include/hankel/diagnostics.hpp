#pragma once

#include <functional>
#include <vector>

#include "hankel/inverse_map.hpp"
#include "hankel/model.hpp"

namespace hankel {

struct DefectClassification {
    enum class Case {
        Case_1_0,    // sum w/s^2 = 1 and divergent sum w/s^4 (ladder trend only)
        Case_1_1_a,  // sum w/s^2 = 1, sum w/s^4 finite
        Case_1_1_b,  // sum w/s^2 < 1
    };
    double inv2;
    double inv4;
    Case kase;
};

// Single-measure classification. Case_1_0 cannot fire on one atomic
// measure; use classify_defect_ladder to observe the divergence trend.
DefectClassification classify_defect(const SpectralMeasure& rho, double tol = 1e-10);

struct DefectLadderReport {
    std::vector<DefectClassification> levels;
    bool inv4_divergence_trend;  // monotone growth by the trend factor across levels
    DefectClassification::Case kase;
};

// Refinement-ladder classification: flags Case_1_0 when every level has
// inv2 = 1 (within tol) and inv4 grows monotonically by at least
// trend_factor from first to last level.
DefectLadderReport classify_defect_ladder(const std::vector<SpectralMeasure>& ladder,
                                          double tol = 1e-10, double trend_factor = 4.0);

// W = Psi~(M~) Psi(M), unitary in the weighted inner product. Sample
// coordinates; use model.space.to_ortho for a unitary matrix.
CMat build_W(const ModelOperators& model);

struct SpectralTypeProbe {
    Vec eigenphases;       // ascending angles of W's eigenvalues
    Vec eigenweights;      // |<probe, eigvec>|^2 in the weighted inner product
    std::vector<int> ladder;
    std::vector<double> cesaro;  // (1/N) sum_{n<N} |<W^n v, v>|^2 along the ladder
    double slope;                // log-log slope of cesaro over the ladder
    enum class Hint { PurePointLike, AbsolutelyContinuousLike, Mixed } hint;
};

// Eigenphase histogram and Wiener-style Cesaro autocorrelation decay.
// Finite unitary matrices always have pure point spectrum; the hint is a
// refinement-trend heuristic with the ladder recorded alongside.
SpectralTypeProbe spectral_type_probe(const WeightedSpace& space, const CMat& w_op,
                                      const CVec& probe, const std::vector<int>& ladder);

// Default probe is q, which is cyclic for M^2.
SpectralTypeProbe spectral_type_probe(const ModelOperators& model,
                                      const std::vector<int>& ladder);

// (rho, Psi, Psi~) -> (rho, conj(Psi#) Psi, Psi# Psi~); Psi# is evaluated on
// supp rho and on the positive atoms of rho~.
SpectralDatum gauge_transform(const SpectralDatum& datum,
                              const std::function<Complex(double)>& psi_sharp);

}  // namespace hankel
