#include "levyig/measure.hpp"

#include <cmath>

namespace levyig {

namespace {

void check_side(double c, double a, double lambda, bool allow_a_zero, const char* side) {
    if (c < 0.0) throw domain_error(std::string("measure: C") + side + " must be >= 0");
    if (c == 0.0) return;
    if (!(lambda > 0.0)) throw domain_error(std::string("measure: lambda") + side + " must be > 0");
    if (allow_a_zero && a == 0.0) return;
    if (!(a > 0.0) || !(a < 2.0) || a == 1.0)
        throw domain_error(std::string("measure: a") + side + " must lie in (0,2) excluding 1");
}

double gts_side_density(double c, double a, double lambda, double s) {
    return c * std::exp(-lambda * s) / std::pow(s, a + 1.0);
}

double estimate_power0(const std::function<double(double)>& density, double sign) {
    const double x1 = sign * 1e-4, x2 = sign * 1e-5;
    const double f1 = density(x1), f2 = density(x2);
    if (!(f1 > 0.0) || !(f2 > 0.0)) return 0.0;
    return std::log(f1 / f2) / std::log(std::fabs(x1) / std::fabs(x2));
}

}  // namespace

std::string family_name(MeasureFamily f) {
    switch (f) {
        case MeasureFamily::gts: return "gts";
        case MeasureFamily::cts: return "cts";
        case MeasureFamily::vg: return "vg";
        case MeasureFamily::vg_regularized: return "vg_reg";
        case MeasureFamily::generic: return "generic";
    }
    return "?";
}

LevyMeasure LevyMeasure::gts(const GtsParams& p) {
    check_side(p.c_plus, p.a_plus, p.lambda_plus, false, "+");
    check_side(p.c_minus, p.a_minus, p.lambda_minus, false, "-");
    LevyMeasure m;
    m.family_ = MeasureFamily::gts;
    m.shape_ = p;
    m.power0_plus_ = p.c_plus > 0.0 ? -(p.a_plus + 1.0) : 0.0;
    m.power0_minus_ = p.c_minus > 0.0 ? -(p.a_minus + 1.0) : 0.0;
    m.tail_rate_plus_ = p.c_plus > 0.0 ? p.lambda_plus : 0.0;
    m.tail_rate_minus_ = p.c_minus > 0.0 ? p.lambda_minus : 0.0;
    return m;
}

LevyMeasure LevyMeasure::cts(double c, double a, double lambda_plus, double lambda_minus) {
    if (!(c > 0.0)) throw domain_error("cts: C must be > 0");
    LevyMeasure m = gts({c, a, lambda_plus, c, a, lambda_minus});
    m.family_ = MeasureFamily::cts;
    return m;
}

LevyMeasure LevyMeasure::vg(double c, double lambda_plus, double lambda_minus) {
    if (!(c > 0.0)) throw domain_error("vg: C must be > 0");
    check_side(c, 0.0, lambda_plus, true, "+");
    check_side(c, 0.0, lambda_minus, true, "-");
    LevyMeasure m;
    m.family_ = MeasureFamily::vg;
    m.shape_ = GtsParams{c, 0.0, lambda_plus, c, 0.0, lambda_minus};
    m.power0_plus_ = -1.0;
    m.power0_minus_ = -1.0;
    m.tail_rate_plus_ = lambda_plus;
    m.tail_rate_minus_ = lambda_minus;
    return m;
}

LevyMeasure LevyMeasure::vg_regularized(double c, double a, double lambda_plus,
                                        double lambda_minus) {
    if (!(a > 0.0) || a > 0.1)
        throw domain_error("vg_reg: regularization parameter a must lie in (0, 0.1]");
    LevyMeasure m = cts(c, a, lambda_plus, lambda_minus);
    m.family_ = MeasureFamily::vg_regularized;
    return m;
}

LevyMeasure LevyMeasure::zero() {
    LevyMeasure m;
    m.family_ = MeasureFamily::gts;
    m.shape_ = GtsParams{};
    return m;
}

LevyMeasure LevyMeasure::generic(GenericSpec spec, const QuadratureConfig& q) {
    if (!spec.density) throw domain_error("generic measure: density handle required");
    LevyMeasure m;
    m.family_ = MeasureFamily::generic;
    m.generic_density_ = spec.density;
    if (spec.shape) {
        check_side(spec.shape->c_plus, spec.shape->a_plus, spec.shape->lambda_plus, true, "+");
        check_side(spec.shape->c_minus, spec.shape->a_minus, spec.shape->lambda_minus, true, "-");
        m.shape_ = spec.shape;
        m.power0_plus_ = spec.shape->c_plus > 0.0 ? -(spec.shape->a_plus + 1.0) : 0.0;
        m.power0_minus_ = spec.shape->c_minus > 0.0 ? -(spec.shape->a_minus + 1.0) : 0.0;
        m.tail_rate_plus_ = spec.shape->c_plus > 0.0 ? spec.shape->lambda_plus : 0.0;
        m.tail_rate_minus_ = spec.shape->c_minus > 0.0 ? spec.shape->lambda_minus : 0.0;
        return m;
    }
    m.power0_plus_ = std::isnan(spec.power0_plus) ? estimate_power0(spec.density, +1.0)
                                                  : spec.power0_plus;
    m.power0_minus_ = std::isnan(spec.power0_minus) ? estimate_power0(spec.density, -1.0)
                                                    : spec.power0_minus;
    m.tail_rate_plus_ = spec.tail_rate_plus;
    m.tail_rate_minus_ = spec.tail_rate_minus;

    // Numeric admissibility: int_{|x|<=1} x^2 nu and int_{|x|>1} nu must both
    // be finite for an honest Levy measure.
    QuadratureConfig qc = q;
    qc.rel_tol = std::max(qc.rel_tol, 1e-6);
    for (int side = 0; side < 2; ++side) {
        const double sgn = side == 0 ? 1.0 : -1.0;
        const double p0 = side == 0 ? m.power0_plus_ : m.power0_minus_;
        const double rate = side == 0 ? m.tail_rate_plus_ : m.tail_rate_minus_;
        // int_0^1 s^2 nu via u = log s, truncated by the origin exponent.
        auto small = [&](double u) {
            const double s = std::exp(u);
            return s * s * spec.density(sgn * s) * s;
        };
        const double p1 = std::max(p0 + 3.0, 0.05);
        QuadResult r = integrate_adaptive(small, std::max(-46.0 / p1, -640.0), 0.0, qc.rel_tol,
                                          qc.abs_tol, qc.max_subdivisions, 1.0 / qc.abs_tol);
        if (r.diverged || !(r.value < 1.0 / qc.abs_tol) || !std::isfinite(r.value))
            throw domain_error("generic measure: int x^2 nu(dx) near 0 diverges");
        auto tail = [&](double s) { return spec.density(sgn * (1.0 + s)); };
        AxisSpec ts{0.0, rate > 0.0 ? rate : 0.0, qc.inner_cut, qc.resolve_outer_cut(rate)};
        QuadResult t = integrate_axis(tail, ts, qc);
        if (t.diverged || !std::isfinite(t.value))
            throw domain_error("generic measure: tail mass int_{|x|>1} nu(dx) diverges");
    }
    return m;
}

const GtsParams* LevyMeasure::shape_params() const { return shape_ ? &*shape_ : nullptr; }

bool LevyMeasure::is_zero() const {
    return shape_ && shape_->c_plus == 0.0 && shape_->c_minus == 0.0 &&
           family_ != MeasureFamily::generic;
}

double LevyMeasure::density(double x) const {
    if (x == 0.0) throw domain_error("levy density undefined at x = 0 (nu({0}) = 0)");
    if (family_ == MeasureFamily::generic) return generic_density_(x);
    const GtsParams& p = *shape_;
    if (x > 0.0) return p.c_plus > 0.0 ? gts_side_density(p.c_plus, p.a_plus, p.lambda_plus, x) : 0.0;
    return p.c_minus > 0.0 ? gts_side_density(p.c_minus, p.a_minus, p.lambda_minus, -x) : 0.0;
}

double LevyMeasure::min_tail_rate() const {
    double r = 0.0;
    if (tail_rate_plus_ > 0.0) r = tail_rate_plus_;
    if (tail_rate_minus_ > 0.0) r = r > 0.0 ? std::min(r, tail_rate_minus_) : tail_rate_minus_;
    return r;
}

LevyModel::LevyModel(double sigma_, double gamma_, LevyMeasure measure_)
    : sigma(sigma_), gamma(gamma_), measure(std::move(measure_)) {
    if (!(sigma >= 0.0)) throw domain_error("LevyModel: sigma must be >= 0");
    if (sigma > 0.0 && measure.family() != MeasureFamily::generic && !measure.is_zero())
        throw domain_error("LevyModel: named jump families carry sigma = 0");
}

double levy_density(const LevyModel& model, double x) { return model.measure.density(x); }

LevyMeasure generic_from_shape(const GtsParams& p) {
    GenericSpec spec;  // parameter validation happens in LevyMeasure::generic
    spec.density = [p](double x) {
        if (x > 0.0)
            return p.c_plus > 0.0 ? gts_side_density(p.c_plus, p.a_plus, p.lambda_plus, x) : 0.0;
        return p.c_minus > 0.0 ? gts_side_density(p.c_minus, p.a_minus, p.lambda_minus, -x) : 0.0;
    };
    spec.shape = p;
    return LevyMeasure::generic(std::move(spec));
}

LevyMeasure measure_with_lambda(const LevyMeasure& m, double lambda_plus, double lambda_minus) {
    const GtsParams* sp = m.shape_params();
    if (!sp) throw domain_error("measure_with_lambda: measure has no named shape");
    GtsParams p = *sp;
    if (!std::isnan(lambda_plus)) p.lambda_plus = lambda_plus;
    if (!std::isnan(lambda_minus)) p.lambda_minus = lambda_minus;
    switch (m.family()) {
        case MeasureFamily::gts: return LevyMeasure::gts(p);
        case MeasureFamily::cts:
            return LevyMeasure::cts(p.c_plus, p.a_plus, p.lambda_plus, p.lambda_minus);
        case MeasureFamily::vg:
            return LevyMeasure::vg(p.c_plus, p.lambda_plus, p.lambda_minus);
        case MeasureFamily::vg_regularized:
            return LevyMeasure::vg_regularized(p.c_plus, p.a_plus, p.lambda_plus,
                                               p.lambda_minus);
        case MeasureFamily::generic: return generic_from_shape(p);
    }
    throw domain_error("measure_with_lambda: unknown family");
}

}  // namespace levyig
