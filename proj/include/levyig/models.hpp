#pragma once

#include <utility>

#include "levyig/geometry_types.hpp"
#include "levyig/measure.hpp"

namespace levyig {

inline constexpr double euler_mascheroni = 0.57721566490153286061;

/// Gamma(-a) for a in (0,2)\{1} via the two-step recurrence
/// Gamma(-a) = Gamma(2-a) / ((-a)(1-a)); pole detection at a in {0,1,2}.
double gamma_neg(double a);

/// Two processes of one named family sharing every parameter except the
/// tempering rates: P carries (lambda_plus, lambda_minus) from `base`, Q the
/// tilde rates.
struct FamilyPair {
    MeasureFamily family = MeasureFamily::cts;
    GtsParams base;
    double lambda_tilde_plus = 1.0;
    double lambda_tilde_minus = 1.0;

    static FamilyPair gts(const GtsParams& base, double lt_plus, double lt_minus);
    static FamilyPair cts(double c, double a, double lp, double lm, double lt_plus,
                          double lt_minus);
    static FamilyPair vg(double c, double lp, double lm, double lt_plus, double lt_minus);
    static FamilyPair vg_regularized(double c, double a, double lp, double lm, double lt_plus,
                                     double lt_minus);

    LevyMeasure measure_p() const;
    LevyMeasure measure_q() const;
    FamilyPair swapped() const;  // P <-> Q
};

/// Delta exponent of the pair's alpha-divergence, per the printed
/// tempered-stable / variance-gamma blocks. Defined 0 at alpha = +-1.
double closed_form_delta(const FamilyPair& pair, double alpha, double T);

/// alpha-divergence from the family's displayed formula; alpha = +-1 dispatch
/// to the KL / dual-KL branches.
double closed_form_alpha_divergence(const FamilyPair& pair, double alpha, double T);

/// Diagonal Fisher matrix over (lambda_plus, lambda_minus):
/// T C Gamma(2-a) / lambda^{2-a} per side (a = 0 gives the T C / lambda^2
/// variance-gamma entries).
MetricMatrix closed_form_fisher_metric(const LevyMeasure& measure, double T);

/// Only Gamma_{++,+} and Gamma_{--,-} survive:
/// -((1-alpha)/2) T C Gamma(3-a) / lambda^{3-a}.
ConnectionTensor closed_form_alpha_connection(const LevyMeasure& measure, double alpha, double T);

/// CTS closed form evaluated at a small regularization index a in (0, 0.1];
/// converges to the variance-gamma closed form as a -> 0.
double vg_regularized_divergence(const FamilyPair& pair, double alpha, double T);

/// Realize the pair as LevyModels with sigma = 0 and compensator-matched
/// drifts (gamma_P = gamma_Q + int x (nu_P - nu_Q)), so the strict sigma = 0
/// equivalence conditions hold.
std::pair<LevyModel, LevyModel> make_equivalent_models(const FamilyPair& pair,
                                                       const QuadratureConfig& q,
                                                       double gamma_q = 0.0);

}  // namespace levyig
