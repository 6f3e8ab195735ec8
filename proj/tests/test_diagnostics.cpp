#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hankel/diagnostics.hpp"
#include "hankel/direct_map.hpp"

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

TEST_CASE("defect classification of single measures") {
    auto c1 = classify_defect(SpectralMeasure::validate({{1.0, 1.0}}, 1e-12));
    CHECK(c1.kase == DefectClassification::Case::Case_1_1_a);
    CHECK(c1.inv2 == doctest::Approx(1.0));
    CHECK(c1.inv4 == doctest::Approx(1.0));

    auto c2 = classify_defect(SpectralMeasure::validate({{1.0, 0.5}, {2.0, 1.0}}, 1e-12));
    CHECK(c2.kase == DefectClassification::Case::Case_1_1_b);
    CHECK(c2.inv2 == doctest::Approx(0.75));
}

TEST_CASE("defect ladder flags the divergence trend") {
    // c s^2 ds on (0, 1]: inv2 = 1 exactly after scaling, inv4 ~ 4n grows
    std::vector<SpectralMeasure> ladder;
    for (int n : {50, 100, 200, 400})
        ladder.push_back(discretize_density_inv2([](double s) { return s * s; }, 0.0, 1.0, n, 1.0));
    auto rep = classify_defect_ladder(ladder);
    CHECK(rep.inv4_divergence_trend);
    CHECK(rep.kase == DefectClassification::Case::Case_1_0);
    CHECK(rep.levels.back().inv4 > 4.0 * rep.levels.front().inv4);

    // fixed [0.1, 1]: inv4 converges, no trend
    std::vector<SpectralMeasure> flat;
    for (int n : {50, 100, 200, 400})
        flat.push_back(
            discretize_density_inv2([](double s) { return s * s; }, 0.1, 1.0, n, 1.0));
    auto rep2 = classify_defect_ladder(flat);
    CHECK_FALSE(rep2.inv4_divergence_trend);
    CHECK(rep2.kase == DefectClassification::Case::Case_1_1_a);
}

TEST_CASE("ladder trend agrees with the kernel criterion") {
    std::vector<SpectralMeasure> ladder;
    for (int n : {50, 100, 200, 400})
        ladder.push_back(discretize_density_inv2([](double s) { return s * s; }, 0.0, 1.0, n, 1.0));
    auto rep = classify_defect_ladder(ladder);
    // the same trend read through classify_kernel: inv2 pinned at 1, inv4 growing
    for (size_t i = 0; i < ladder.size(); ++i) {
        auto kv = classify_kernel(ladder[i]);
        CHECK(kv.inv2 == doctest::Approx(1.0).epsilon(1e-10));
        if (i > 0) CHECK(kv.inv4 > classify_kernel(ladder[i - 1]).inv4);
    }
    CHECK(rep.inv4_divergence_trend);
}

TEST_CASE("W construction") {
    // Psi = Psi~ = 1 gives the identity
    auto rho = SpectralMeasure::validate({{1.0, 0.4}, {1.9, 0.8}}, 1e-12);
    SpectralDatum d{rho, CVec::Ones(2), CVec::Ones(count_positive_tilde_atoms(rho))};
    ModelOperators m = build_model(d);
    const CMat w = build_W(m);
    CHECK(m.space.op_norm(w - CMat::Identity(2, 2)) <= 1e-12);

    // one atom: W = Psi(1) by the Psi~(0) = 1 convention
    const Complex phase = std::polar(1.0, -1.2);
    SpectralMeasure one = SpectralMeasure::validate({{1.0, 1.0}}, 1e-12);
    CVec psi1(1);
    psi1 << phase;
    ModelOperators m1 = build_model({one, psi1, CVec(0)});
    CHECK(std::abs(build_W(m1)(0, 0) - phase) <= 1e-14);

    // unitarity on a generic datum
    auto du = forward_spectral_map(sym({1.0, 1.0}), 2);
    ModelOperators mu = build_model(du);
    const CMat wu = build_W(mu);
    const CMat wo = mu.space.to_ortho(wu);
    CHECK((wo.adjoint() * wo - CMat::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("spectral type probe: point mass vs spread phases") {
    // W = I: Cesaro constant, pure-point-like
    auto rho = SpectralMeasure::validate({{1.0, 0.4}, {1.9, 0.8}}, 1e-12);
    SpectralDatum d{rho, CVec::Ones(2), CVec::Ones(count_positive_tilde_atoms(rho))};
    ModelOperators m = build_model(d);
    auto probe = spectral_type_probe(m, {16, 32, 64, 128});
    CHECK(probe.hint == SpectralTypeProbe::Hint::PurePointLike);
    for (double c : probe.cesaro) CHECK(c == doctest::Approx(probe.cesaro[0]).epsilon(1e-12));

    // diagonal W with 400 equispaced phases on an arc, uniform probe:
    // geometric-sum oracle gives |a_n|^2 = |sin(n L/2)/(400 sin(n L/800))|^2,
    // so the Cesaro average decays like 1/N over the ladder
    const int n = 400;
    std::vector<Atom> atoms(n);
    for (int j = 0; j < n; ++j) atoms[j] = {1.0 + j * 1e-3, 1.0 / n};
    auto rho_n = SpectralMeasure::validate(atoms, 1e-12);
    WeightedSpace sp = build_weighted_space(rho_n);
    CVec wdiag(n);
    const double arc_len = 1.0;
    for (int j = 0; j < n; ++j) wdiag[j] = std::polar(1.0, arc_len * (j + 0.5) / n);
    const CMat w_op = CMat(wdiag.asDiagonal());
    auto probe2 = spectral_type_probe(sp, w_op, sp.ones(), {16, 32, 64, 128, 256, 512});
    CHECK(probe2.hint == SpectralTypeProbe::Hint::AbsolutelyContinuousLike);
    // oracle at N = 64 within a factor: C_N ~ (1/N) sum_{n<N} |D_n|^2
    double oracle = 0.0;
    for (int k = 0; k < 64; ++k) {
        const double num = std::sin(0.5 * k * arc_len);
        const double den = n * std::sin(0.5 * k * arc_len / n);
        oracle += k == 0 ? 1.0 : (num * num) / (den * den);
    }
    oracle /= 64.0;
    CHECK(probe2.cesaro[2] == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("oscillatory continuum datum looks absolutely continuous") {
    const int n = 400;
    auto rho = discretize_density_inv2([](double) { return 1.0; }, 1.0, 2.0, n, 1.0);
    const Vec s = rho.support();
    CVec psi(n);
    for (int j = 0; j < n; ++j) psi[j] = std::polar(1.0, s[j]);
    SpectralDatum d{rho, psi, CVec::Ones(count_positive_tilde_atoms(rho))};
    ModelOperators m = build_model(d);
    auto probe = spectral_type_probe(m, {16, 32, 64, 128, 256, 512});
    CHECK(probe.hint == SpectralTypeProbe::Hint::AbsolutelyContinuousLike);
    CHECK(probe.slope < -0.7);
}

TEST_CASE("constant tilde phase: eigenphases push rho forward") {
    const int n = 6;
    std::vector<Atom> atoms(n);
    for (int j = 0; j < n; ++j) atoms[j] = {0.8 + 0.35 * j, 0.15 + 0.05 * j};
    auto rho = SpectralMeasure::validate(atoms, 1e-12);
    const Vec s = rho.support();
    CVec psi(n);
    for (int j = 0; j < n; ++j) psi[j] = std::polar(1.0, 0.3 + 0.4 * j);
    SpectralDatum d{rho, psi, CVec::Ones(count_positive_tilde_atoms(rho))};
    ModelOperators m = build_model(d);
    const CMat w = build_W(m);
    auto probe = spectral_type_probe(m.space, w, m.space.ones(), {8});
    auto pf = pushforward_unimodular(rho, psi);
    REQUIRE(probe.eigenphases.size() == static_cast<int>(pf.size()));
    for (size_t j = 0; j < pf.size(); ++j) {
        CHECK(probe.eigenphases[j] == doctest::Approx(pf[j].angle).epsilon(1e-10));
        CHECK(probe.eigenweights[j] ==
              doctest::Approx(pf[j].weight / rho.total_mass()).epsilon(1e-9));
    }
}

TEST_CASE("gauge transform") {
    auto d = forward_spectral_map(sym({1.0, 1.0}), 2);

    // identity gauge
    auto same = gauge_transform(d, [](double) { return Complex(1.0, 0.0); });
    CHECK((same.psi - d.psi).norm() <= 1e-15);
    CHECK((same.psi_tilde - d.psi_tilde).norm() <= 1e-15);

    // group property: t then -t
    const double t = 0.37;
    auto fwd = gauge_transform(d, [t](double s) { return std::polar(1.0, t * s * s); });
    auto back = gauge_transform(fwd, [t](double s) { return std::polar(1.0, -t * s * s); });
    CHECK((back.psi - d.psi).norm() <= 1e-14);
    CHECK((back.psi_tilde - d.psi_tilde).norm() <= 1e-14);

    // stability verdict preserved under e^{i t s^2}
    auto rep0 = stability_report(d, 48, 0);
    auto rep1 = stability_report(fwd, 48, 0);
    CHECK(rep0.verdict == rep1.verdict);

    CHECK_THROWS_AS(gauge_transform(d, [](double) { return Complex(0.5, 0.0); }), Error);
}
