#include <doctest.h>

#include <cmath>

#include "levyig/quadrature.hpp"

using namespace levyig;

TEST_CASE("gauss-kronrod panel integrates polynomials exactly") {
    // A single GK15 panel is exact for polynomials up to degree 22; any typo
    // in the node/weight tables would show up here at machine precision.
    for (int k = 0; k <= 12; ++k) {
        auto f = [k](double x) { return std::pow(x, k); };
        QuadResult r = integrate_adaptive(f, 0.0, 1.0, 1e-14, 1e-15, 200);
        CHECK(r.value == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
        CHECK(r.converged);
    }
}

TEST_CASE("adaptive refinement reaches tight tolerances") {
    auto f = [](double x) { return std::sin(10.0 * x) * std::exp(-x); };
    // antiderivative of e^{-x} sin(10x): exact value over [0, 3]
    auto F = [](double x) {
        return -std::exp(-x) * (std::sin(10.0 * x) + 10.0 * std::cos(10.0 * x)) / 101.0;
    };
    QuadResult r = integrate_adaptive(f, 0.0, 3.0, 1e-12, 1e-14, 2000);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(F(3.0) - F(0.0)).epsilon(1e-11));
}

TEST_CASE("axis integration handles singular origin and exponential tail") {
    // int_0^inf x^{-1/2} e^{-x} dx = Gamma(1/2) = sqrt(pi)
    auto f = [](double x) { return std::exp(-x) / std::sqrt(x); };
    QuadratureConfig q;
    AxisSpec spec{-0.5, 1.0, q.inner_cut, 30.0};
    QuadResult r = integrate_axis(f, spec, q);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("axis integration: oscillatory integrand") {
    // int_0^inf cos(3x) e^{-x} dx = 1/(1+9)
    auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x); };
    QuadratureConfig q;
    AxisSpec spec{0.0, 1.0, q.inner_cut, 30.0};
    QuadResult r = integrate_axis(f, spec, q);
    CHECK(r.value == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("divergence detection fires on non-integrable singularities") {
    auto f = [](double x) { return std::pow(x, -1.5) * std::exp(-x); };
    QuadratureConfig q;
    AxisSpec spec{-1.5, 1.0, q.inner_cut, 30.0};
    QuadResult r = integrate_axis(f, spec, q);
    CHECK((r.diverged || !r.converged));
}

TEST_CASE("truncation fallback records a tail bound when no rate is known") {
    auto f = [](double x) { return std::exp(-2.0 * x); };
    QuadratureConfig q;
    AxisSpec spec{0.0, 0.0, q.inner_cut, 10.0};  // no tail hint
    QuadResult r = integrate_axis(f, spec, q);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.abs_error > 0.0);  // includes the estimated remainder beyond the cut
}

TEST_CASE("complex integration matches the real parts") {
    auto f = [](double x) {
        return std::complex<double>(std::cos(2.0 * x), std::sin(2.0 * x)) * std::exp(-x);
    };
    QuadratureConfig q;
    AxisSpec spec{0.0, 1.0, q.inner_cut, 40.0};
    ComplexQuadResult r = integrate_axis_complex(f, spec, q);
    // int e^{(2i-1)x} = 1/(1-2i) = (1+2i)/5
    CHECK(r.value.real() == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(r.value.imag() == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("config validation") {
    QuadratureConfig q;
    q.rel_tol = -1.0;
    CHECK_THROWS_AS(q.validate(), domain_error);
    q = QuadratureConfig{};
    q.outer_cut = 1e-8;  // below inner_cut
    CHECK_THROWS_AS(q.validate(), domain_error);
    q = QuadratureConfig{};
    CHECK(q.resolve_outer_cut(2.0) == doctest::Approx(15.0));
    CHECK(q.resolve_outer_cut(0.001) == doctest::Approx(1000.0));
}
