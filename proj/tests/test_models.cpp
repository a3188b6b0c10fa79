#include <doctest.h>

#include <cmath>

#include "levyig/divergence.hpp"
#include "levyig/models.hpp"

using namespace levyig;

TEST_CASE("gamma_neg") {
    CHECK(gamma_neg(0.5) == doctest::Approx(-3.5449077018110322).epsilon(1e-14));
    CHECK(gamma_neg(1.5) == doctest::Approx(2.3632718012073547).epsilon(1e-14));
    CHECK(gamma_neg(0.3) == doctest::Approx(-4.3268511088251926).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_neg(1.0 + 5e-9), domain_error);
    CHECK_THROWS_AS(gamma_neg(1.0 - 5e-9), domain_error);
    CHECK_THROWS_AS(gamma_neg(0.0), domain_error);
    CHECK_THROWS_AS(gamma_neg(2.0), domain_error);
    CHECK_THROWS_AS(gamma_neg(-0.5), domain_error);
}

TEST_CASE("closed-form divergences: frozen examples") {
    // one-sided GTS, lambda 1 -> 2
    auto gts = FamilyPair::gts({1.0, 0.5, 1.0, 0.0, 0.5, 1.0}, 2.0, 1.0);
    CHECK(closed_form_delta(gts, 0.0, 1.0) ==
          doctest::Approx(0.062525401813089426).epsilon(1e-13));
    CHECK(closed_form_alpha_divergence(gts, -1.0, 1.0) ==
          doctest::Approx(0.30410500345454708).epsilon(1e-13));

    // VG pair with one changed rate: KL = 2/1 - 1 + log 1 - log 2
    auto vg = FamilyPair::vg(1.0, 1.0, 3.0, 2.0, 3.0);
    CHECK(closed_form_alpha_divergence(vg, -1.0, 1.0) ==
          doctest::Approx(0.30685281944005469).epsilon(1e-13));
    CHECK(closed_form_delta(vg, 0.0, 1.0) ==
          doctest::Approx(0.058891517828191727).epsilon(1e-13));

    // identical rates vanish for every alpha
    auto same = FamilyPair::cts(1.0, 0.5, 2.0, 3.0, 2.0, 3.0);
    for (double alpha : {-1.0, -0.3, 0.0, 0.6, 1.0})
        CHECK(closed_form_alpha_divergence(same, alpha, 1.0) == doctest::Approx(0.0));

    // alpha-duality: D^(+1)(P||Q) = D^(-1)(Q||P), exactly by construction
    auto p = FamilyPair::gts({1.0, 0.5, 1.0, 0.8, 1.5, 4.0}, 2.0, 0.5);
    CHECK(closed_form_alpha_divergence(p, 1.0, 2.0) ==
          closed_form_alpha_divergence(p.swapped(), -1.0, 2.0));

    // lambda mixture turning non-positive outside |alpha| <= 1
    auto wide = FamilyPair::cts(1.0, 0.5, 4.0, 4.0, 1.0, 1.0);
    CHECK_THROWS_AS(closed_form_alpha_divergence(wide, 3.0, 1.0), domain_error);
}

TEST_CASE("closed-form metric and connection: frozen examples") {
    MetricMatrix g = closed_form_fisher_metric(LevyMeasure::cts(1.0, 0.5, 2.0, 3.0), 1.0);
    CHECK(g.at(0, 0) == doctest::Approx(0.31332853432887506).epsilon(1e-13));
    CHECK(g.at(0, 1) == 0.0);
    CHECK(g.at(1, 0) == 0.0);

    MetricMatrix gv = closed_form_fisher_metric(LevyMeasure::vg(2.0, 2.0, 1.0), 3.0);
    CHECK(gv.at(1, 1) == doctest::Approx(6.0).epsilon(1e-13));  // T C / lambda^2
    CHECK(gv.at(0, 0) == doctest::Approx(1.5).epsilon(1e-13));

    ConnectionTensor c =
        closed_form_alpha_connection(LevyMeasure::cts(1.0, 0.5, 2.0, 3.0), 0.0, 1.0);
    CHECK(c.at(0, 0, 0) == doctest::Approx(-0.11749820037332815).epsilon(1e-13));
    CHECK(c.at(0, 0, 1) == 0.0);
    CHECK(c.at(0, 1, 0) == 0.0);

    ConnectionTensor cv = closed_form_alpha_connection(LevyMeasure::vg(1.0, 1.0, 2.0), 0.0, 1.0);
    CHECK(cv.at(0, 0, 0) == doctest::Approx(-1.0).epsilon(1e-13));  // -(1-alpha) T C / l^3

    // e-connection (alpha = 1) vanishes for exponential tempering
    ConnectionTensor e = closed_form_alpha_connection(LevyMeasure::gts({1, 0.5, 2, 1, 1.5, 3}),
                                                      1.0, 1.0);
    for (double v : e.data) CHECK(v == 0.0);
}

TEST_CASE("cts equals gts under the shared-parameter constraint") {
    auto cts = FamilyPair::cts(1.3, 0.7, 2.0, 3.0, 1.0, 4.0);
    auto gts = FamilyPair::gts({1.3, 0.7, 2.0, 1.3, 0.7, 3.0}, 1.0, 4.0);
    for (double alpha : {-1.0, -0.5, 0.0, 0.5, 1.0})
        CHECK(closed_form_alpha_divergence(cts, alpha, 1.0) ==
              doctest::Approx(closed_form_alpha_divergence(gts, alpha, 1.0)).epsilon(1e-12));
}

TEST_CASE("vg_regularized converges to the vg closed form") {
    auto vg = FamilyPair::vg(1.0, 1.0, 3.0, 2.0, 4.0);
    for (double alpha : {-1.0, 0.0, 1.0}) {
        const double target = closed_form_alpha_divergence(vg, alpha, 1.0);
        auto reg = FamilyPair::vg_regularized(1.0, 1e-6, 1.0, 3.0, 2.0, 4.0);
        CHECK(vg_regularized_divergence(reg, alpha, 1.0) ==
              doctest::Approx(target).epsilon(1e-4));
    }
    // monotone approach along a = 0.1, 0.05, 0.01
    const double target = closed_form_alpha_divergence(vg, 0.0, 1.0);
    double prev_gap = -1.0;
    for (double a : {0.1, 0.05, 0.01}) {
        auto reg = FamilyPair::vg_regularized(1.0, a, 1.0, 3.0, 2.0, 4.0);
        const double gap = std::fabs(vg_regularized_divergence(reg, 0.0, 1.0) - target);
        if (prev_gap >= 0.0) CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK_THROWS_AS(
        vg_regularized_divergence(FamilyPair::vg_regularized(1.0, 0.1, 1.0, 1.0, 2.0, 2.0), 0.0,
                                  0.0),
        domain_error);
}

TEST_CASE("euler-mascheroni expansions at small index") {
    // Gamma(-a) ~ -1/a - euler_mascheroni + O(a); lambda^a ~ 1 + a log lambda
    const double a = 1e-6;
    CHECK(gamma_neg(a) ==
          doctest::Approx(-1.0 / a - euler_mascheroni).epsilon(1e-5));
    for (double lam : {0.5, 2.0, 4.0})
        CHECK(std::pow(lam, a) ==
              doctest::Approx(1.0 + a * std::log(lam)).epsilon(1e-5));
}

TEST_CASE("closed form vs quadrature across the parameter grid") {
    // The full acceptance grid lives in the acceptance suite; this covers one
    // representative slice per family and tail index.
    QuadratureConfig q;
    for (double a : {0.3, 1.5}) {
        auto pair = FamilyPair::cts(1.0, a, 2.0, 3.0, 0.5, 4.0);
        auto [P, Q] = make_equivalent_models(pair, q);
        for (double alpha : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            const double closed = closed_form_alpha_divergence(pair, alpha, 1.0);
            DivergenceRequest req{alpha, 1.0, false, q};
            LevyModel Pg(0.0, P.gamma, generic_from_shape(*P.measure.shape_params()));
            LevyModel Qg(0.0, Q.gamma, generic_from_shape(*Q.measure.shape_params()));
            DivergenceResult r = alpha_divergence(Pg, Qg, req);
            CHECK(r.method == DivergenceMethod::quadrature);
            CHECK(r.value == doctest::Approx(closed).epsilon(1e-6));
        }
    }
}
