#include <doctest.h>

#include <cmath>

#include "levyig/levy_core.hpp"
#include "levyig/models.hpp"

using namespace levyig;

namespace {

const QuadratureConfig kQuad{};

LevyModel one_sided_gts(double c, double a, double lambda, double gamma = 0.0) {
    return LevyModel(0.0, gamma, LevyMeasure::gts({c, a, lambda, 0.0, 0.5, 1.0}));
}

LevyModel vg_model(double c, double lp, double lm, double gamma = 0.0) {
    return LevyModel(0.0, gamma, LevyMeasure::vg(c, lp, lm));
}

LevyModel pure_diffusion(double sigma, double gamma) {
    return LevyModel(sigma, gamma, LevyMeasure::zero());
}

}  // namespace

TEST_CASE("levy density: named families") {
    LevyModel gts = one_sided_gts(1.0, 0.5, 2.0);
    CHECK(levy_density(gts, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(levy_density(gts, -1.0) == 0.0);
    CHECK_THROWS_AS(levy_density(gts, 0.0), domain_error);

    LevyModel vg = vg_model(1.0, 1.0, 1.0);
    CHECK(levy_density(vg, 2.0) == doctest::Approx(std::exp(-2.0) / 2.0).epsilon(1e-14));

    // symmetric parameters give a symmetric measure
    LevyModel sym(0.0, 0.0, LevyMeasure::gts({1.0, 0.5, 2.0, 1.0, 0.5, 2.0}));
    for (double x : {0.1, 0.7, 3.0})
        CHECK(levy_density(sym, x) == doctest::Approx(levy_density(sym, -x)).epsilon(1e-14));
}

TEST_CASE("measure admissibility") {
    CHECK_THROWS_AS(LevyMeasure::gts({1.0, 2.5, 1.0, 0.0, 0.5, 1.0}), domain_error);
    CHECK_THROWS_AS(LevyMeasure::gts({1.0, 1.0, 1.0, 0.0, 0.5, 1.0}), domain_error);
    CHECK_THROWS_AS(LevyMeasure::gts({1.0, 0.5, -1.0, 0.0, 0.5, 1.0}), domain_error);
    CHECK_THROWS_AS(LevyMeasure::vg_regularized(1.0, 0.5, 1.0, 1.0), domain_error);

    // generic admissibility: x^{-3.5} density fails int x^2 nu near zero
    GenericSpec bad;
    bad.density = [](double x) { return std::pow(std::fabs(x), -3.5) * std::exp(-std::fabs(x)); };
    CHECK_THROWS_AS(LevyMeasure::generic(bad), domain_error);

    GenericSpec ok;
    ok.density = [](double x) { return std::exp(-2.0 * std::fabs(x)) / std::fabs(x); };
    ok.tail_rate_plus = 2.0;
    ok.tail_rate_minus = 2.0;
    CHECK_NOTHROW(LevyMeasure::generic(ok));

    // named families carry sigma = 0
    CHECK_THROWS_AS(LevyModel(1.0, 0.0, LevyMeasure::vg(1.0, 2.0, 2.0)), domain_error);
    CHECK_NOTHROW(LevyModel(1.0, 0.0, LevyMeasure::zero()));
}

TEST_CASE("characteristic exponent: examples") {
    // pure Gaussian: Phi_1(1) = -1/2
    std::complex<double> phi = characteristic_exponent(pure_diffusion(1.0, 0.0), 1.0, 1.0, kQuad);
    CHECK(phi.real() == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(std::fabs(phi.imag()) < 1e-14);

    // z = 0 vanishes identically
    LevyModel vg = vg_model(1.0, 3.0, 3.0);
    CHECK(std::abs(characteristic_exponent(vg, 0.0, 1.0, kQuad)) == 0.0);

    // symmetric VG at z=1: frozen dual-scheme oracle value log(9/10)
    phi = characteristic_exponent(vg, 1.0, 1.0, kQuad);
    CHECK(phi.real() == doctest::Approx(-0.1053605156578263).epsilon(1e-8));
    CHECK(std::fabs(phi.imag()) < 1e-10);
}

TEST_CASE("characteristic exponent: closed form matches quadrature") {
    QuadratureConfig q;
    for (double a : {0.5, 1.5}) {
        LevyModel m(0.0, 0.3, LevyMeasure::gts({1.0, a, 2.0, 0.7, 0.5, 3.0}));
        for (double z : {0.4, 1.0, 2.5}) {
            std::complex<double> quad = characteristic_exponent(m, z, 1.0, q);
            std::complex<double> closed = characteristic_exponent_closed(m, {z, 0.0}, 1.0, q);
            CHECK(std::abs(quad - closed) <= 1e-8 * (1.0 + std::abs(quad)));
        }
    }
}

TEST_CASE("characteristic exponent: conjugate symmetry and t-linearity") {
    LevyModel m(0.0, 0.1, LevyMeasure::cts(1.0, 0.5, 2.0, 3.0));
    for (double z : {0.3, 1.0, 4.0}) {
        std::complex<double> a = characteristic_exponent(m, z, 1.0, kQuad);
        std::complex<double> b = characteristic_exponent(m, -z, 1.0, kQuad);
        CHECK(std::abs(a - std::conj(b)) < 1e-12 * (1.0 + std::abs(a)));

        std::complex<double> c2 = characteristic_exponent(m, z, 2.0, kQuad);
        CHECK(std::abs(c2 - 2.0 * a) <= 1e-12 * std::abs(c2));
    }
}

TEST_CASE("martingale drift") {
    CHECK(martingale_drift(1.0, LevyMeasure::zero(), kQuad) == doctest::Approx(-0.5));
    CHECK(martingale_drift(0.0, LevyMeasure::zero(), kQuad) == 0.0);

    // CTS example: frozen quadrature oracle, then the self-consistency check
    LevyMeasure cts = LevyMeasure::cts(1.0, 0.5, 3.0, 3.0);
    const double g = martingale_drift(0.0, cts, kQuad);
    CHECK(g == doctest::Approx(-0.17684854247379675).epsilon(1e-10));
    LevyModel m(0.0, g, cts);
    for (double t : {0.5, 1.0, 2.0}) {
        std::complex<double> phi = characteristic_exponent(m, {0.0, -1.0}, t, kQuad);
        CHECK(std::abs(phi) <= 1e-8);
    }

    // divergent when the positive tempering rate is at most 1
    CHECK_THROWS_AS(martingale_drift(0.0, LevyMeasure::cts(1.0, 0.5, 1.0, 2.0), kQuad),
                    domain_error);
}

TEST_CASE("log RN derivative") {
    // GTS pair, lambda+ 1 vs 2: psi(0.5) = -(1-2)*0.5 = 0.5
    LevyModel P = one_sided_gts(1.0, 0.5, 1.0);
    LevyModel Q = one_sided_gts(1.0, 0.5, 2.0);
    CHECK(log_rn_derivative(P, Q, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(log_rn_derivative(P, P, 0.77) == 0.0);

    // VG pair on the negative side: psi(-2) = -(4-1)*2 = -6
    LevyModel Pv = vg_model(1.0, 1.0, 4.0);
    LevyModel Qv = vg_model(1.0, 1.0, 1.0);
    CHECK(log_rn_derivative(Pv, Qv, -2.0) == doctest::Approx(-6.0).epsilon(1e-14));

    CHECK_THROWS_AS(log_rn_derivative(P, Pv, 1.0), precondition_error);  // a/C differ
    CHECK_THROWS_AS(log_rn_derivative(P, Q, 0.0), domain_error);
}

TEST_CASE("check_equivalence: verdicts") {
    QuadratureConfig q;
    // two GTS models differing only in lambda (symmetric difference keeps the
    // drift condition with equal gammas)
    LevyModel P(0.0, 0.0, LevyMeasure::gts({1.0, 0.5, 1.0, 1.0, 0.5, 1.0}));
    LevyModel Q(0.0, 0.0, LevyMeasure::gts({1.0, 0.5, 2.0, 1.0, 0.5, 2.0}));
    EquivalenceReport rep = check_equivalence(P, Q, q);
    CHECK(rep.sigma_match);
    CHECK(!rep.hellinger_infinite);
    CHECK(rep.drift_condition_checked);
    CHECK(std::fabs(rep.drift_condition_residual) < 1e-9);
    CHECK(rep.equivalent);
    // frozen one-sided Hellinger value doubles for the symmetric pair
    CHECK(rep.hellinger_integral == doctest::Approx(2 * 0.12505080362617885).epsilon(1e-8));

    // asymmetric pair: equivalent only with the compensator-matched drift
    auto pair = FamilyPair::gts({1.0, 0.5, 1.0, 0.7, 1.2, 3.0}, 2.0, 1.5);
    auto [Pa, Qa] = make_equivalent_models(pair, q);
    CHECK(Pa.gamma == doctest::Approx(0.89782889913620782).epsilon(1e-9));
    CHECK(check_equivalence(Pa, Qa, q).equivalent);
    LevyModel Pa_flat(0.0, 0.0, Pa.measure);
    EquivalenceReport bad_drift = check_equivalence(Pa_flat, Qa, q);
    CHECK(!bad_drift.equivalent);
    CHECK(bad_drift.drift_condition_checked);

    // sigma mismatch
    EquivalenceReport sig = check_equivalence(pure_diffusion(1.0, 0.0),
                                              pure_diffusion(2.0, 0.0), q);
    CHECK(!sig.equivalent);
    CHECK(!sig.sigma_match);

    // tail index mismatch: Hellinger integral diverges near the origin
    LevyModel A = one_sided_gts(1.0, 0.5, 2.0);
    LevyModel B = one_sided_gts(1.0, 1.5, 2.0);
    EquivalenceReport h = check_equivalence(A, B, q);
    CHECK(!h.equivalent);
    CHECK(h.hellinger_infinite);
}

TEST_CASE("check_equivalence is symmetric in its verdict") {
    QuadratureConfig q;
    LevyModel P(0.0, 0.0, LevyMeasure::gts({1.0, 0.5, 1.0, 1.0, 0.5, 1.0}));
    LevyModel Q(0.0, 0.0, LevyMeasure::gts({1.0, 0.5, 2.0, 1.0, 0.5, 2.0}));
    CHECK(check_equivalence(P, Q, q).equivalent == check_equivalence(Q, P, q).equivalent);

    LevyModel A = one_sided_gts(1.0, 0.5, 2.0);
    LevyModel B = one_sided_gts(1.0, 1.5, 2.0);
    CHECK(check_equivalence(A, B, q).equivalent == check_equivalence(B, A, q).equivalent);
}

TEST_CASE("eta") {
    QuadratureConfig q;
    LevyModel P = pure_diffusion(1.0, 2.0);
    LevyModel Q = pure_diffusion(1.0, 1.0);
    CHECK(eta(P, Q, q) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eta(P, P, q) == doctest::Approx(0.0));

    LevyModel P2 = pure_diffusion(2.0, 4.0);
    LevyModel Q2 = pure_diffusion(2.0, 0.0);
    CHECK(eta(P2, Q2, q) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(eta(pure_diffusion(0.0, 1.0), pure_diffusion(0.0, 0.0), q),
                    precondition_error);
}

TEST_CASE("u-triplet pushforward change of variables") {
    QuadratureConfig q;
    // psi(x) = -(1-2)x = x on the positive side; int psi^2 nu_Q equals the
    // frozen (lambda gap)^2 * C Gamma(2-a) / lambda_Q^{2-a} value per side.
    LevyModel P = one_sided_gts(1.0, 0.5, 1.0);
    LevyModel Q = one_sided_gts(1.0, 0.5, 2.0);
    UTriplet u(P, Q, q);
    CHECK(u.sigma_u() == 0.0);
    const double got = u.integrate([](double y) { return y * y; });
    CHECK(got == doctest::Approx(0.31332853432887506).epsilon(1e-9));

    // sigma_U = sigma * eta for diffusive pairs
    LevyModel Pd = pure_diffusion(2.0, 4.0);
    LevyModel Qd = pure_diffusion(2.0, 0.0);
    UTriplet ud(Pd, Qd, q);
    CHECK(ud.sigma_u() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ud.gamma_u() == doctest::Approx(-2.0).epsilon(1e-12));  // -(sigma eta)^2/2
}
