#pragma once

#include <complex>
#include <functional>
#include <limits>

#include "levyig/errors.hpp"

namespace levyig {

/// Tolerances and domain splits for the adaptive Gauss--Kronrod engine.
/// outer_cut == 0 means "resolve from the measure" (30 / min tempering rate,
/// clamped to [4, 1000]).
struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double inner_cut = 1e-6;
    double outer_cut = 0.0;
    int max_subdivisions = 2000;

    void validate() const;
    double resolve_outer_cut(double min_tail_rate) const;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int panels = 0;
    bool converged = true;
    bool diverged = false;  // running integral blew past the divergence threshold
};

struct ComplexQuadResult {
    std::complex<double> value{0.0, 0.0};
    double abs_error = 0.0;
    int panels = 0;
    bool converged = true;
    bool diverged = false;
};

/// Adaptive 15-point Gauss--Kronrod subdivision on a finite interval.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, int max_panels,
                              double divergence_threshold = std::numeric_limits<double>::infinity());

ComplexQuadResult integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b, double rel_tol,
    double abs_tol, int max_panels,
    double divergence_threshold = std::numeric_limits<double>::infinity());

/// How one half-axis integrand behaves: `power0` is the algebraic exponent at
/// the origin (integrand ~ x^power0 as x->0+, must exceed -1 for convergence)
/// and `tail_rate` the exponential decay rate. tail_rate <= 0 requests the
/// truncation fallback, whose estimated remainder is added to abs_error.
struct AxisSpec {
    double power0 = 0.0;
    double tail_rate = 0.0;
    double inner_cut = 1e-6;
    double outer_cut = 30.0;
};

/// Integral of f over (0, inf) split at {inner_cut, 1, outer_cut}; the core
/// (0, inner_cut] goes through u = log x, the tail through u = exp(-rate x).
QuadResult integrate_axis(const std::function<double(double)>& f, const AxisSpec& spec,
                          const QuadratureConfig& q);

ComplexQuadResult integrate_axis_complex(const std::function<std::complex<double>(double)>& f,
                                         const AxisSpec& spec, const QuadratureConfig& q);

/// Sum of two half-axis integrals (negative side supplied as s -> f(-s)).
QuadResult integrate_two_sided(const std::function<double(double)>& f_pos, const AxisSpec& spec_pos,
                               const std::function<double(double)>& f_neg, const AxisSpec& spec_neg,
                               const QuadratureConfig& q);

}  // namespace levyig
