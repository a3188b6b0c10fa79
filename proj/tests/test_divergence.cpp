#include <doctest.h>

#include <cmath>

#include "levyig/divergence.hpp"
#include "levyig/models.hpp"

using namespace levyig;

namespace {

const QuadratureConfig kQuad{};

LevyModel pure_diffusion(double sigma, double gamma) {
    return LevyModel(sigma, gamma, LevyMeasure::zero());
}

LevyModel vg_generic(double sigma, double gamma, double c, double lp, double lm) {
    return LevyModel(sigma, gamma, generic_from_shape({c, 0.0, lp, c, 0.0, lm}));
}

}  // namespace

TEST_CASE("delta vanishes for identical processes and at alpha = +-1") {
    auto pair = FamilyPair::cts(1.0, 0.5, 2.0, 3.0, 2.0, 3.0);
    auto [P, Q] = make_equivalent_models(pair, kQuad);
    for (double alpha : {-1.0, -0.4, 0.0, 0.7, 1.0}) {
        DivergenceResult r = delta_alpha(P, Q, {alpha, 1.0, false, kQuad});
        CHECK(std::fabs(r.delta) <= 1e-12);
        CHECK(std::fabs(r.value) <= 1e-12);
    }
    auto moved = FamilyPair::cts(1.0, 0.5, 2.0, 3.0, 1.0, 4.0);
    auto [P2, Q2] = make_equivalent_models(moved, kQuad);
    for (double alpha : {-1.0, 1.0})
        CHECK(delta_alpha(P2, Q2, {alpha, 1.0, false, kQuad}).delta == 0.0);
}

TEST_CASE("one-sided GTS example: closed form, quadrature, and linear form") {
    auto pair = FamilyPair::gts({1.0, 0.5, 1.0, 0.0, 0.5, 1.0}, 2.0, 1.0);
    auto [P, Q] = make_equivalent_models(pair, kQuad);

    DivergenceResult closed = delta_alpha(P, Q, {0.0, 1.0, false, kQuad});
    CHECK(closed.method == DivergenceMethod::closed_form);
    CHECK(closed.delta == doctest::Approx(0.062525401813089426).epsilon(1e-12));
    CHECK(closed.drift_term == 0.0);

    LevyModel Pg(0.0, P.gamma, generic_from_shape(*P.measure.shape_params()));
    LevyModel Qg(0.0, Q.gamma, generic_from_shape(*Q.measure.shape_params()));
    DivergenceResult quad = delta_alpha(Pg, Qg, {0.0, 1.0, false, kQuad});
    CHECK(quad.method == DivergenceMethod::quadrature);
    CHECK(quad.delta == doctest::Approx(0.062525401813089426).epsilon(1e-9));

    CHECK(linear_alpha_divergence(P, Q, {0.0, 1.0, false, kQuad}) ==
          doctest::Approx(0.25010160725235771).epsilon(1e-12));
    CHECK(alpha_divergence(P, Q, {-1.0, 1.0, false, kQuad}).value ==
          doctest::Approx(0.30410500345454708).epsilon(1e-12));
}

TEST_CASE("pure diffusion KL: Gaussian oracle") {
    LevyModel P = pure_diffusion(1.0, 1.0);
    LevyModel Q = pure_diffusion(1.0, 0.0);
    DivergenceResult r = alpha_divergence(P, Q, {-1.0, 1.0, false, kQuad});
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.jump_term == 0.0);
}

TEST_CASE("alpha-duality") {
    auto pair = FamilyPair::gts({1.0, 0.5, 1.0, 0.8, 1.5, 4.0}, 2.0, 0.5);
    auto [P, Q] = make_equivalent_models(pair, kQuad);
    for (double alpha : {-0.9, -0.5, -0.3, 0.0, 0.3, 0.5, 0.9}) {
        const double d1 = alpha_divergence(P, Q, {alpha, 1.0, false, kQuad}).value;
        const double d2 = alpha_divergence(Q, P, {-alpha, 1.0, false, kQuad}).value;
        CHECK(std::fabs(d1 - d2) <= 1e-10);
    }
}

TEST_CASE("nonnegativity across a parameter grid") {
    for (double lam : {0.5, 2.0}) {
        for (double lt : {0.5, 1.0, 4.0}) {
            auto pair = FamilyPair::cts(1.0, 0.5, lam, 2.0 * lam, lt, 2.0 * lt);
            auto [P, Q] = make_equivalent_models(pair, kQuad);
            for (double alpha : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
                const double v = alpha_divergence(P, Q, {alpha, 1.0, false, kQuad}).value;
                CHECK(v >= -1e-14);
                if (lam != lt) CHECK(v > 1e-6);
            }
        }
    }
}

TEST_CASE("continuity at alpha = +-1") {
    auto pair = FamilyPair::cts(1.0, 0.5, 2.0, 3.0, 1.0, 4.0);
    auto [P, Q] = make_equivalent_models(pair, kQuad);
    for (double sign : {-1.0, 1.0}) {
        const double at_limit = alpha_divergence(P, Q, {sign, 1.0, false, kQuad}).value;
        const double nearby =
            alpha_divergence(P, Q, {sign - sign * 1e-4, 1.0, false, kQuad}).value;
        CHECK(std::fabs(nearby - at_limit) <= 1e-3 * at_limit);
    }
}

TEST_CASE("monotonicity in T and concavity in delta") {
    auto pair = FamilyPair::cts(1.0, 0.5, 2.0, 3.0, 1.0, 4.0);
    auto [P, Q] = make_equivalent_models(pair, kQuad);
    double prev = 0.0;
    for (double T : {0.5, 1.0, 2.0, 4.0}) {
        const double kl = alpha_divergence(P, Q, {-1.0, T, false, kQuad}).value;
        CHECK(kl > prev);
        // KL is exactly linear in T
        CHECK(kl == doctest::Approx(T * alpha_divergence(P, Q, {-1.0, 1.0, false, kQuad}).value)
                        .epsilon(1e-12));
        prev = kl;
    }
    // for alpha != +-1 the map delta -> value is increasing and concave
    double prev_v = 0.0, prev_gain = 1e300, prev_d = 0.0;
    for (double T : {0.5, 1.0, 2.0, 4.0}) {
        DivergenceResult r = alpha_divergence(P, Q, {0.0, T, false, kQuad});
        CHECK(r.value > prev_v);
        const double gain = (r.value - prev_v) / (r.delta - prev_d);
        CHECK(gain < prev_gain);
        prev_v = r.value;
        prev_d = r.delta;
        prev_gain = gain;
    }
}

TEST_CASE("linear approximation dominates and matches for small delta") {
    auto pair = FamilyPair::cts(1.0, 0.5, 2.0, 3.0, 1.0, 4.0);
    auto [P, Q] = make_equivalent_models(pair, kQuad);
    for (double alpha : {-0.5, 0.0, 0.5}) {
        DivergenceRequest req{alpha, 1.0, false, kQuad};
        CHECK(linear_alpha_divergence(P, Q, req) >= alpha_divergence(P, Q, req).value);
    }
    // nearly identical processes: delta ~ 1e-7, forms agree to 1e-5 relative
    auto close_pair = FamilyPair::cts(1.0, 0.5, 2.0, 3.0, 2.0005, 3.0);
    auto [Pc, Qc] = make_equivalent_models(close_pair, kQuad);
    DivergenceRequest req{0.3, 1.0, false, kQuad};
    DivergenceResult r = alpha_divergence(Pc, Qc, req);
    CHECK(r.delta < 1e-6);
    CHECK(linear_alpha_divergence(Pc, Qc, req) ==
          doctest::Approx(r.value).epsilon(1e-5));
}

TEST_CASE("stable kernel: tiny rate differences keep full precision") {
    auto pair = FamilyPair::cts(1.0, 0.5, 2.0, 3.0, 2.0 * (1.0 + 1e-7), 3.0);
    auto [P, Q] = make_equivalent_models(pair, kQuad);
    LevyModel Pg(0.0, P.gamma, generic_from_shape(*P.measure.shape_params()));
    LevyModel Qg(0.0, Q.gamma, generic_from_shape(*Q.measure.shape_params()));
    const double closed = closed_form_delta(pair, 0.0, 1.0);
    DivergenceResult quad = delta_alpha(Pg, Qg, {0.0, 1.0, false, kQuad});
    CHECK(closed > 0.0);
    CHECK(quad.delta == doctest::Approx(closed).epsilon(1e-5));
}

TEST_CASE("martingale-form consistency for diffusive models") {
    // sigma = 1 generic VG-wrapped pair, both with martingale drifts: the
    // general and martingale Delta forms must coincide.
    QuadratureConfig q;
    LevyModel P = vg_generic(1.0, -0.55779735725215748, 0.5, 3.0, 2.0);
    LevyModel Q = vg_generic(1.0, -0.53565827679978112, 0.5, 4.0, 3.0);
    for (double alpha : {-0.5, 0.0, 0.5}) {
        DivergenceResult general = delta_alpha(P, Q, {alpha, 1.0, false, q});
        DivergenceResult mart = delta_alpha(P, Q, {alpha, 1.0, true, q});
        CHECK(mart.delta == doctest::Approx(general.delta).epsilon(1e-8));
        CHECK(general.drift_term > 0.0);
    }
    // the martingale flag rejects models violating Phi_T(-i) = 0
    LevyModel bad = vg_generic(1.0, 0.0, 0.5, 3.0, 2.0);
    CHECK_THROWS_AS(delta_alpha(bad, Q, {0.0, 1.0, true, q}), precondition_error);
}

TEST_CASE("non-equivalent pairs are rejected") {
    LevyModel A(0.0, 0.0, LevyMeasure::cts(1.0, 0.5, 2.0, 2.0));
    LevyModel B(0.0, 0.0, LevyMeasure::cts(1.0, 1.5, 2.0, 2.0));
    CHECK_THROWS_AS(delta_alpha(A, B, {0.0, 1.0, false, kQuad}), precondition_error);
    LevyModel C = pure_diffusion(1.0, 0.0);
    LevyModel D = pure_diffusion(2.0, 0.0);
    CHECK_THROWS_AS(delta_alpha(C, D, {0.0, 1.0, false, kQuad}), precondition_error);

    // generic pair with mismatched tail indices: detected via Hellinger
    LevyModel E(0.0, 0.0, generic_from_shape({1.0, 0.5, 2.0, 0.0, 0.5, 1.0}));
    LevyModel F(0.0, 0.0, generic_from_shape({1.0, 1.5, 2.0, 0.0, 0.5, 1.0}));
    CHECK_THROWS_AS(delta_alpha(E, F, {0.0, 1.0, false, kQuad}), precondition_error);
}

TEST_CASE("quadrature path reports divergence outside the admissible alpha range") {
    // (1-alpha)/2 lambda + (1+alpha)/2 lambda-tilde goes negative: closed form
    // refuses, quadrature detects the blow-up.
    auto pair = FamilyPair::cts(1.0, 0.5, 4.0, 4.0, 1.0, 1.0);
    auto [P, Q] = make_equivalent_models(pair, kQuad);
    CHECK_THROWS_AS(delta_alpha(P, Q, {3.0, 1.0, false, kQuad}), numeric_error);
}
