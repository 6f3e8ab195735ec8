#pragma once

#include <functional>
#include <vector>

#include "hankel/measure.hpp"
#include "hankel/model.hpp"

namespace hankel {

// Absolutely continuous measure scale * w(s) ds on [a, b]; w must be
// strictly positive and Hoelder continuous (positivity is checked at the
// discretization points, Hoelder continuity is the caller's promise).
struct DensityMeasure {
    double a;
    double b;
    std::function<double(double)> w;
    int atom_count;
    double scale = 1.0;

    SpectralMeasure discretize(double tol = 1e-12) const;
    SpectralMeasure discretize(int n, double tol = 1e-12) const;
    // continuum integral int scale*w/s^p ds by quadrature
    double inverse_moment(int p) const;
    // copy with scale chosen so that the continuum sum w/s^2 equals target
    DensityMeasure with_inv2(double target) const;
};

// Delta(-t^2) = 1 - sum_j w_j/(s_j^2 + t^2); increases in t, -> 1 at infinity.
double perturbation_determinant(const SpectralMeasure& rho, double t);

struct QuadratureSpec {
    double tol = 1e-9;        // target max-abs entry error of the integral part
    double t_cut_factor = 1e3;  // integrate on [0, t_cut_factor * max s]; analytic tail beyond
    int max_depth = 30;
};

struct DefectIntegralResult {
    Mat op;                 // quadrature value of I - Sigma0*, sample coordinates
    double direct_error;    // max-abs entry deviation from the direct I - Mtilde M^{-1}
    double tail_estimate;   // bound on the neglected part beyond the cut
    long evaluations;
};

// I - Sigma0* as the rank-one integral (2/pi) int t^2/Delta(-t^2) <.,a_t> b_t dt
// with a_t(s) = 1/(s(s^2+t^2)), b_t(s) = 1/(s^2+t^2), evaluated by adaptive
// Gauss-Legendre plus a closed-form tail with Delta ~ 1.
DefectIntegralResult sigma0_defect_integral(const SpectralMeasure& rho,
                                            const QuadratureSpec& spec = {});

// T0(z) = <(M^2 - z)^{-1} 1, 1>, T1 = T0/(1 - T0); z must stay away from
// the support of rho o s^{-2} (atomic) resp. [a^2, b^2] boundary values are
// taken via cauchy_transform_density.
std::pair<Complex, Complex> cauchy_transforms(const SpectralMeasure& rho, Complex z);
std::pair<Complex, Complex> cauchy_transforms(const DensityMeasure& dm, Complex z);

struct KappaResult {
    double kappa;       // pi^2 F0' F1' at x0 = s0^2
    double f0prime;     // density of rho o s^{-2} at x0: scale*w(s0)/(2 s0)
    double f1prime;     // Im T1(x0 + i0) / pi
    Complex t0_boundary;
    double eta_error;   // Richardson ladder discrepancy
    bool f1_positive;
};

// Boundary values via the eta ladder {1e-2..1e-5}*(b^2-a^2) with one
// Richardson level.
KappaResult kappa(const DensityMeasure& dm, double s0);

struct ArcLevel {
    int atoms;
    int n_nontrivial;       // eigenphases away from the +-1 fixed points
    int n_negative_fixed;   // eigenvalues pinned at -1 (projection rank defect)
    double max_abs_phase;
    double coverage;        // fraction of the predicted arc within eps of a phase
    bool inside_inflated;   // all nontrivial phases within (1+inflation) * theta_max
    std::vector<double> phases;
};

struct TwoProjectionReport {
    double s0;
    double kappa;
    double sigma_max;   // sqrt(kappa)
    double theta_max;   // 2 asin(sigma_max): phase of the arc endpoint
    Complex endpoint;   // 1 - 2 kappa + 2i sqrt(kappa (1 - kappa))
    double coverage_eps;
    double inflation;
    std::vector<ArcLevel> levels;
};

// Discretize the density, set Psi = Psi~ = sign(s - s0), and compare the
// eigenphases of (I - 2Q)(I - 2P) with the kappa-predicted arc, where P, Q
// are the spectral projections of M^2 and M~^2 below s0^2. The mesh is
// graded dyadically toward s0: the states generating the arc live at
// distances ~2^{-k} from the split point, so uniform meshes converge only
// logarithmically in the atom count.
TwoProjectionReport halmos_arc_experiment(const DensityMeasure& dm, double s0,
                                          const std::vector<int>& refinements,
                                          double inflation = 0.05, double coverage_eps = 0.05);

// The graded mesh used by the arc experiment, exposed for reuse: per side of
// s0, dyadic bands down to width*2^{-J} subdivided into uniform midpoint
// cells, J capped at 39 to stay clear of eigenvalue roundoff.
SpectralMeasure graded_interface_mesh(const DensityMeasure& dm, double s0, int n_atoms,
                                      double inv2_target);

}  // namespace hankel
