#include "levyig/models.hpp"

#include <cmath>

#include "levyig/levy_core.hpp"

namespace levyig {

namespace {

// One side of the Delta exponent, alpha != +-1. a == 0 is the logarithmic
// (variance gamma) block.
double delta_block(double c, double a, double lam, double lt, double alpha) {
    if (c == 0.0) return 0.0;
    const double b = 0.5 * (1.0 - alpha);
    const double mix = b * lam + (1.0 - b) * lt;
    if (!(mix > 0.0))
        throw domain_error("closed-form divergence: lambda mixture is non-positive "
                           "(alpha outside [-1,1])");
    if (a == 0.0)
        return c * (std::log(mix) - b * std::log(lam) - (1.0 - b) * std::log(lt));
    return c * gamma_neg(a) *
           (b * std::pow(lam, a) + (1.0 - b) * std::pow(lt, a) - std::pow(mix, a));
}

// KL block (alpha = -1); the dual branch swaps lam and lt.
double kl_block(double c, double a, double lam, double lt) {
    if (c == 0.0) return 0.0;
    if (a == 0.0) return c * (lt / lam - 1.0 + std::log(lam) - std::log(lt));
    return c * gamma_neg(a) *
           ((a - 1.0) * std::pow(lam, a) - a * lt * std::pow(lam, a - 1.0) + std::pow(lt, a));
}

void check_pair(const FamilyPair& pair) {
    if (pair.base.c_plus > 0.0 && !(pair.lambda_tilde_plus > 0.0))
        throw domain_error("FamilyPair: lambda_tilde_plus must be > 0");
    if (pair.base.c_minus > 0.0 && !(pair.lambda_tilde_minus > 0.0))
        throw domain_error("FamilyPair: lambda_tilde_minus must be > 0");
}

double side_a(const FamilyPair& pair, bool plus) {
    if (pair.family == MeasureFamily::vg) return 0.0;
    return plus ? pair.base.a_plus : pair.base.a_minus;
}

}  // namespace

double gamma_neg(double a) {
    if (std::fabs(a) < 1e-8 || std::fabs(a - 1.0) < 1e-8 || std::fabs(a - 2.0) < 1e-8)
        throw domain_error("gamma_neg: pole of Gamma at a in {0, 1, 2}");
    if (!(a > 0.0) || !(a < 2.0)) throw domain_error("gamma_neg: a must lie in (0, 2)");
    return std::tgamma(2.0 - a) / ((-a) * (1.0 - a));
}

FamilyPair FamilyPair::gts(const GtsParams& base, double lt_plus, double lt_minus) {
    FamilyPair p{MeasureFamily::gts, base, lt_plus, lt_minus};
    (void)LevyMeasure::gts(base);  // parameter validation
    check_pair(p);
    return p;
}

FamilyPair FamilyPair::cts(double c, double a, double lp, double lm, double lt_plus,
                           double lt_minus) {
    FamilyPair p{MeasureFamily::cts, GtsParams{c, a, lp, c, a, lm}, lt_plus, lt_minus};
    (void)LevyMeasure::cts(c, a, lp, lm);
    check_pair(p);
    return p;
}

FamilyPair FamilyPair::vg(double c, double lp, double lm, double lt_plus, double lt_minus) {
    FamilyPair p{MeasureFamily::vg, GtsParams{c, 0.0, lp, c, 0.0, lm}, lt_plus, lt_minus};
    (void)LevyMeasure::vg(c, lp, lm);
    check_pair(p);
    return p;
}

FamilyPair FamilyPair::vg_regularized(double c, double a, double lp, double lm, double lt_plus,
                                      double lt_minus) {
    FamilyPair p{MeasureFamily::vg_regularized, GtsParams{c, a, lp, c, a, lm}, lt_plus,
                 lt_minus};
    (void)LevyMeasure::vg_regularized(c, a, lp, lm);
    check_pair(p);
    return p;
}

LevyMeasure FamilyPair::measure_p() const {
    switch (family) {
        case MeasureFamily::gts: return LevyMeasure::gts(base);
        case MeasureFamily::cts:
            return LevyMeasure::cts(base.c_plus, base.a_plus, base.lambda_plus,
                                    base.lambda_minus);
        case MeasureFamily::vg:
            return LevyMeasure::vg(base.c_plus, base.lambda_plus, base.lambda_minus);
        case MeasureFamily::vg_regularized:
            return LevyMeasure::vg_regularized(base.c_plus, base.a_plus, base.lambda_plus,
                                               base.lambda_minus);
        default: throw domain_error("FamilyPair: generic family has no closed forms");
    }
}

LevyMeasure FamilyPair::measure_q() const {
    FamilyPair q = *this;
    q.base.lambda_plus = lambda_tilde_plus;
    q.base.lambda_minus = lambda_tilde_minus;
    return q.measure_p();
}

FamilyPair FamilyPair::swapped() const {
    FamilyPair s = *this;
    s.base.lambda_plus = lambda_tilde_plus;
    s.base.lambda_minus = lambda_tilde_minus;
    s.lambda_tilde_plus = base.lambda_plus;
    s.lambda_tilde_minus = base.lambda_minus;
    return s;
}

double closed_form_delta(const FamilyPair& pair, double alpha, double T) {
    if (!(T > 0.0)) throw domain_error("closed_form_delta: T must be > 0");
    if (alpha == 1.0 || alpha == -1.0) return 0.0;
    const GtsParams& p = pair.base;
    return T * (delta_block(p.c_plus, side_a(pair, true), p.lambda_plus,
                            pair.lambda_tilde_plus, alpha) +
                delta_block(p.c_minus, side_a(pair, false), p.lambda_minus,
                            pair.lambda_tilde_minus, alpha));
}

double closed_form_alpha_divergence(const FamilyPair& pair, double alpha, double T) {
    if (!(T > 0.0)) throw domain_error("closed_form_alpha_divergence: T must be > 0");
    const GtsParams& p = pair.base;
    if (alpha == -1.0) {
        return T * (kl_block(p.c_plus, side_a(pair, true), p.lambda_plus,
                             pair.lambda_tilde_plus) +
                    kl_block(p.c_minus, side_a(pair, false), p.lambda_minus,
                             pair.lambda_tilde_minus));
    }
    if (alpha == 1.0) {
        return T * (kl_block(p.c_plus, side_a(pair, true), pair.lambda_tilde_plus,
                             p.lambda_plus) +
                    kl_block(p.c_minus, side_a(pair, false), pair.lambda_tilde_minus,
                             p.lambda_minus));
    }
    const double delta = closed_form_delta(pair, alpha, T);
    return 4.0 / (1.0 - alpha * alpha) * (-std::expm1(-delta));
}

MetricMatrix closed_form_fisher_metric(const LevyMeasure& measure, double T) {
    const GtsParams* p = measure.shape_params();
    if (!p) throw domain_error("closed-form metric requires a named measure shape");
    if (!(T > 0.0)) throw domain_error("closed_form_fisher_metric: T must be > 0");
    MetricMatrix g(2, T);
    if (p->c_plus > 0.0)
        g.at(0, 0) = T * p->c_plus * std::tgamma(2.0 - p->a_plus) /
                     std::pow(p->lambda_plus, 2.0 - p->a_plus);
    if (p->c_minus > 0.0)
        g.at(1, 1) = T * p->c_minus * std::tgamma(2.0 - p->a_minus) /
                     std::pow(p->lambda_minus, 2.0 - p->a_minus);
    return g;
}

ConnectionTensor closed_form_alpha_connection(const LevyMeasure& measure, double alpha,
                                              double T) {
    const GtsParams* p = measure.shape_params();
    if (!p) throw domain_error("closed-form connection requires a named measure shape");
    if (!(T > 0.0)) throw domain_error("closed_form_alpha_connection: T must be > 0");
    ConnectionTensor c(2, alpha);
    const double b = 0.5 * (1.0 - alpha);
    if (p->c_plus > 0.0)
        c.at(0, 0, 0) = -b * T * p->c_plus * std::tgamma(3.0 - p->a_plus) /
                        std::pow(p->lambda_plus, 3.0 - p->a_plus);
    if (p->c_minus > 0.0)
        c.at(1, 1, 1) = -b * T * p->c_minus * std::tgamma(3.0 - p->a_minus) /
                        std::pow(p->lambda_minus, 3.0 - p->a_minus);
    return c;
}

double vg_regularized_divergence(const FamilyPair& pair, double alpha, double T) {
    const double a = pair.base.a_plus;
    if (!(a > 0.0) || a > 0.1)
        throw domain_error("vg_regularized_divergence: a must lie in (0, 0.1]");
    FamilyPair cts_pair = pair;
    cts_pair.family = MeasureFamily::cts;
    return closed_form_alpha_divergence(cts_pair, alpha, T);
}

std::pair<LevyModel, LevyModel> make_equivalent_models(const FamilyPair& pair,
                                                       const QuadratureConfig& q,
                                                       double gamma_q) {
    LevyModel Q(0.0, gamma_q, pair.measure_q());
    LevyModel P0(0.0, gamma_q, pair.measure_p());
    const double dc = drift_compensator_difference(P0, Q, q);
    LevyModel P(0.0, gamma_q + dc, pair.measure_p());
    return {P, Q};
}

}  // namespace levyig
