#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hankel/inverse_map.hpp"
#include "hankel/szego.hpp"

using namespace hankel;

namespace {

HankelSymbol sym(std::initializer_list<Complex> cs) {
    HankelSymbol u;
    u.coeffs = CVec(cs.size());
    int j = 0;
    for (Complex c : cs) u.coeffs[j++] = c;
    return u;
}

}  // namespace

TEST_CASE("spectral flow basics") {
    auto d = forward_spectral_map(sym({1.0, 1.0}), 2);
    auto same = flow_spectral(d, 0.0);
    CHECK((same.psi - d.psi).norm() == 0.0);
    CHECK((same.psi_tilde - d.psi_tilde).norm() == 0.0);

    // u = z^0: datum rho = {(1,1)}, Psi = {1}; u^_0(t) = e^{-it}
    auto d0 = forward_spectral_map(sym({1.0}), 2);
    auto dt = flow_spectral(d0, 0.7);
    auto u = recover_symbol(dt);
    CHECK(std::abs(u.coeffs[0] - std::polar(1.0, -0.7)) <= 1e-14);

    // group law, exact through FlowState
    FlowState st(d, 0.0);
    st.advance(0.3);
    st.advance(0.4);
    FlowState st2(d, 0.7);
    CHECK(st.t() == st2.t());
    CHECK((st.datum().psi - st2.datum().psi).norm() == 0.0);
    // materialized composition within phase roundoff
    auto two_step = flow_spectral(flow_spectral(d, 0.3), 0.4);
    auto one_step = flow_spectral(d, 0.7);
    CHECK((two_step.psi - one_step.psi).norm() <= 1e-12);
    CHECK((two_step.psi_tilde - one_step.psi_tilde).norm() <= 1e-12);
}

TEST_CASE("szego right-hand side by hand") {
    CVec m1(1);
    m1 << Complex(1.0, 0.0);
    const CVec r1 = szego_rhs(m1);
    CHECK(std::abs(r1[0] - Complex(0.0, -1.0)) <= 1e-15);

    CVec m2(2);
    m2 << Complex(0.0, 0.0), Complex(1.0, 0.0);
    const CVec r2 = szego_rhs(m2);
    CHECK(std::abs(r2[0]) <= 1e-15);
    CHECK(std::abs(r2[1] - Complex(0.0, -1.0)) <= 1e-15);

    CVec m3(2);
    m3 << Complex(1.0, 0.0), Complex(1.0, 0.0);
    const CVec r3 = szego_rhs(m3);
    // mode 0 of P(|u|^2 u): u^0(|u^0|^2 + 2|u^1|^2) = 3
    CHECK(std::abs(r3[0] - Complex(0.0, -3.0)) <= 1e-15);
}

TEST_CASE("integrator against closed-form single-mode solutions") {
    auto g1 = integrate_direct(sym({1.0}), 1.0, 4, 1e-3);
    CHECK(std::abs(g1.modes[0] - std::polar(1.0, -1.0)) <= 1e-9);
    for (int k = 1; k < 4; ++k) CHECK(std::abs(g1.modes[k]) <= 1e-12);

    auto g2 = integrate_direct(sym({0.0, 1.0}), 1.0, 4, 1e-3);
    CHECK(std::abs(g2.modes[1] - std::polar(1.0, -1.0)) <= 1e-9);
    CHECK(std::abs(g2.modes[0]) <= 1e-12);
}

TEST_CASE("flow comparison for 1 + z") {
    // the flowed symbol's coefficients decay like 0.8^k, so 64 modes put
    // the truncation floor well under the tolerance
    auto cmp = compare_flows(sym({1.0, 1.0}), 1.0, 80, 1e-3);
    CHECK(cmp.max_coeff_error <= 1e-6);
}

TEST_CASE("conservation along the flow") {
    auto rep = conservation_checks(sym({1.0, 1.0}), 1.0, 80, 1e-3, 4);
    CHECK(rep.max_singval_drift <= 1e-6);
    CHECK(rep.max_l2_drift <= 1e-8);
    CHECK(rep.max_opnorm_drift <= 1e-6);

    auto rep1 = conservation_checks(sym({1.0}), 1.0, 8, 1e-3, 4);
    CHECK(rep1.max_singval_drift <= 1e-10);

    // RK4 order on a single-mode symbol (no truncation floor)
    HankelSymbol u = sym({1.1});
    const double t_end = 1.0;
    auto drift = [&](double dt) {
        auto st = integrate_direct(u, t_end, 4, dt);
        return std::abs(st.modes.norm() - u.norm());
    };
    const double d1 = drift(4e-2), d2 = drift(2e-2);
    const double order = std::log2(d1 / d2);
    CHECK(order >= 3.4);
    CHECK(order <= 5.6);
}

TEST_CASE("hat u0 closed form") {
    auto d0 = forward_spectral_map(sym({1.0}), 2);
    CHECK(std::abs(hat_u0_of_t(d0, 0.9) - std::polar(1.0, -0.9)) <= 1e-14);

    auto d = forward_spectral_map(sym({1.0, 1.0}), 2);
    // t = 0 reduces to sum psi w / s = u^_0
    CHECK(std::abs(hat_u0_of_t(d, 0.0) - Complex(1.0, 0.0)) <= 1e-12);
    // against recover after the flow
    const double t = 1.3;
    auto ut = recover_symbol(flow_spectral(d, t), 24);
    CHECK(std::abs(hat_u0_of_t(d, t) - ut.coeffs[0]) <= 1e-12);
}

TEST_CASE("time average of the pushforward transform") {
    // single atom: identically |a|^2
    ComplexAtoms one = {{1.7, Complex(0.3, 0.4)}};
    for (double T : {0.5, 10.0, 500.0})
        CHECK(ap_time_average(one, T) == doctest::Approx(0.25).epsilon(1e-12));

    // two atoms: sinc sum against direct quadrature at T = 10
    ComplexAtoms two = {{1.0, Complex(0.5, 0.1)}, {2.3, Complex(-0.2, 0.6)}};
    const double sinc_val = ap_time_average(two, 10.0);
    const double quad_val = ap_time_average_quadrature(two, 10.0);
    CHECK(sinc_val == doctest::Approx(quad_val).epsilon(1e-8));

    // diffuse 200-atom ladder: decreasing in T and small against the
    // pure-point benchmark (sum |a_j|)^2
    const int n = 200;
    auto rho = discretize_density_inv2([](double) { return 1.0; }, 1.0, 2.0, n, 1.0);
    CVec psi = CVec::Ones(n);
    SpectralDatum d{rho, psi, CVec::Ones(count_positive_tilde_atoms(rho))};
    auto atoms = pushforward_symbol_measure(d);
    double bench = 0.0;
    for (auto& [l, a] : atoms) bench += std::abs(a);
    bench *= bench;
    const double v10 = ap_time_average(atoms, 10.0);
    const double v100 = ap_time_average(atoms, 100.0);
    const double v1000 = ap_time_average(atoms, 1000.0);
    CHECK(v100 < v10);
    CHECK(v1000 < v100);
    CHECK(v1000 <= 0.05 * bench);
}

TEST_CASE("flow comparison refuses non-simple symbols") {
    CHECK_THROWS_AS(compare_flows(sym({0.0, 1.0}), 1.0, 16, 1e-3), Error);
}
