#include "levyig/levy_core.hpp"

#include <cmath>

#include "levyig/models.hpp"
#include "pair_kernel.hpp"

namespace levyig {

namespace {

using detail::PairKernel;

// Integral of f over (0, upper] with an algebraic singularity at the origin:
// log-substituted core plus a plain adaptive piece.
QuadResult integrate_singular_interval(const std::function<double(double)>& f, double power0,
                                       double upper, const QuadratureConfig& q) {
    const double p1 = std::max(power0 + 1.0, 0.05);
    auto g = [&f](double u) {
        const double x = std::exp(u);
        return f(x) * x;
    };
    const double u_hi = std::log(std::min(q.inner_cut, upper));
    const double u_lo = std::max(u_hi - 46.0 / p1, -640.0);
    QuadResult core = integrate_adaptive(g, u_lo, u_hi, q.rel_tol, q.abs_tol * 0.5,
                                         q.max_subdivisions, 1.0 / q.abs_tol);
    if (upper > q.inner_cut) {
        QuadResult mid = integrate_adaptive(f, q.inner_cut, upper, q.rel_tol, q.abs_tol * 0.5,
                                            q.max_subdivisions - core.panels, 1.0 / q.abs_tol);
        core.value += mid.value;
        core.abs_error += mid.abs_error;
        core.panels += mid.panels;
        core.converged = core.converged && mid.converged;
        core.diverged = core.diverged || mid.diverged;
    }
    return core;
}

AxisSpec axis_for(const LevyMeasure& m, bool positive_side, double extra_power, double rate,
                  const QuadratureConfig& q) {
    AxisSpec spec;
    spec.power0 = (positive_side ? m.power0_plus() : m.power0_minus()) + extra_power;
    spec.tail_rate = rate;
    spec.inner_cut = q.inner_cut;
    spec.outer_cut = q.resolve_outer_cut(rate > 0.0 ? rate : m.min_tail_rate());
    return spec;
}

std::complex<double> jump_exponent_quadrature(const LevyModel& model, std::complex<double> z,
                                              const QuadratureConfig& q) {
    const LevyMeasure& m = model.measure;
    if (m.is_zero()) return {0.0, 0.0};
    const double v = z.imag();

    // |e^{izx}| = e^{-vx} on x > 0 and e^{v|x|} on x < 0.
    const double rate_pos = m.tail_rate_plus() > 0.0 ? m.tail_rate_plus() + v : 0.0;
    const double rate_neg = m.tail_rate_minus() > 0.0 ? m.tail_rate_minus() - v : 0.0;
    if (m.shape_params() && !m.is_zero()) {
        const GtsParams& p = *m.shape_params();
        if (p.c_plus > 0.0 && v < 0.0 && p.lambda_plus + v <= 0.0)
            throw domain_error("characteristic exponent: divergent integral, "
                               "requires lambda_plus > -Im(z)");
        if (p.c_minus > 0.0 && v > 0.0 && p.lambda_minus - v <= 0.0)
            throw domain_error("characteristic exponent: divergent integral, "
                               "requires lambda_minus > Im(z)");
    }

    ComplexQuadResult total;
    auto add_side = [&](bool positive) {
        const double sgn = positive ? 1.0 : -1.0;
        auto f = [&m, z, sgn](double s) -> std::complex<double> {
            const std::complex<double> w = std::complex<double>(0.0, 1.0) * z * (sgn * s);
            const std::complex<double> core =
                s <= 1.0 ? detail::cexpm1m(w) : detail::cexpm1(w);
            return core * m.density(sgn * s);
        };
        AxisSpec spec = axis_for(m, positive, 2.0, positive ? rate_pos : rate_neg, q);
        ComplexQuadResult r =
            integrate_axis_complex(std::function<std::complex<double>(double)>(f), spec, q);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.converged = total.converged && r.converged;
        total.diverged = total.diverged || r.diverged;
    };
    add_side(true);
    add_side(false);
    if (total.diverged || !total.converged)
        throw numeric_error("characteristic exponent: jump integral did not converge",
                            total.value.real());
    return total.value;
}

double tail_first_moment(const LevyMeasure& m, const QuadratureConfig& q) {
    // int_{|x|>1} x nu(dx)
    if (m.is_zero()) return 0.0;
    double out = 0.0;
    for (int side = 0; side < 2; ++side) {
        const double sgn = side == 0 ? 1.0 : -1.0;
        const double rate = side == 0 ? m.tail_rate_plus() : m.tail_rate_minus();
        auto f = [&m, sgn](double u) { return (1.0 + u) * m.density(sgn * (1.0 + u)); };
        AxisSpec spec;
        spec.power0 = 0.0;
        spec.tail_rate = rate;
        spec.inner_cut = q.inner_cut;
        spec.outer_cut = q.resolve_outer_cut(rate > 0.0 ? rate : m.min_tail_rate());
        QuadResult r = integrate_axis(f, spec, q);
        if (r.diverged) throw numeric_error("tail moment diverges", out);
        out += sgn * r.value;
    }
    return out;
}

}  // namespace

std::complex<double> characteristic_exponent(const LevyModel& model, std::complex<double> z,
                                             double t, const QuadratureConfig& q) {
    q.validate();
    if (!(t > 0.0)) throw domain_error("characteristic exponent: t must be > 0");
    if (z == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> base =
        -0.5 * model.sigma * model.sigma * z * z + i * model.gamma * z +
        jump_exponent_quadrature(model, z, q);
    return t * base;
}

std::complex<double> characteristic_exponent(const LevyModel& model, double z, double t,
                                             const QuadratureConfig& q) {
    return characteristic_exponent(model, std::complex<double>(z, 0.0), t, q);
}

namespace {

std::complex<double> closed_exponent_impl(const LevyModel& model, std::complex<double> z,
                                          double t, double tail_moment) {
    const GtsParams* p = model.measure.shape_params();
    if (!p) throw domain_error("closed-form exponent requires a named measure shape");
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> jump(0.0, 0.0);
    if (!model.measure.is_zero()) {
        // Fully-compensated blocks; the |x|<=1 truncation convention is
        // restored through iz * int_{|x|>1} x nu(dx).
        if (p->c_plus > 0.0) {
            const double a = p->a_plus, l = p->lambda_plus, c = p->c_plus;
            const std::complex<double> u = l - i * z;
            if (u.real() <= 0.0)
                throw domain_error("closed-form exponent: lambda_plus too small for Im(z)");
            if (a == 0.0)
                jump += c * (-std::log(u / l) - i * z / l);
            else
                jump += c * gamma_neg(a) *
                        (std::pow(u, a) - std::pow(l, a) + i * a * z * std::pow(l, a - 1.0));
        }
        if (p->c_minus > 0.0) {
            const double a = p->a_minus, l = p->lambda_minus, c = p->c_minus;
            const std::complex<double> u = l + i * z;
            if (u.real() <= 0.0)
                throw domain_error("closed-form exponent: lambda_minus too small for Im(z)");
            if (a == 0.0)
                jump += c * (-std::log(u / l) + i * z / l);
            else
                jump += c * gamma_neg(a) *
                        (std::pow(u, a) - std::pow(l, a) - i * a * z * std::pow(l, a - 1.0));
        }
        jump += i * z * tail_moment;
    }
    return t * (-0.5 * model.sigma * model.sigma * z * z + i * model.gamma * z + jump);
}

}  // namespace

std::complex<double> characteristic_exponent_closed(const LevyModel& model,
                                                    std::complex<double> z, double t,
                                                    const QuadratureConfig& q) {
    return closed_exponent_impl(model, z, t, tail_first_moment(model.measure, q));
}

ExponentEvaluator::ExponentEvaluator(const LevyModel& model, const QuadratureConfig& q)
    : model_(model), q_(q) {
    closed_ = model.measure.shape_params() != nullptr;
    if (closed_) tail_moment_ = tail_first_moment(model.measure, q);
}

std::complex<double> ExponentEvaluator::operator()(std::complex<double> z, double t) const {
    if (z == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
    if (closed_) return closed_exponent_impl(model_, z, t, tail_moment_);
    return characteristic_exponent(model_, z, t, q_);
}

double jump_second_moment(const LevyMeasure& measure, const QuadratureConfig& q) {
    if (measure.is_zero()) return 0.0;
    double out = 0.0;
    for (int side = 0; side < 2; ++side) {
        const double sgn = side == 0 ? 1.0 : -1.0;
        const LevyMeasure* m = &measure;
        auto f = [m, sgn](double s) { return s * s * m->density(sgn * s); };
        const double rate = side == 0 ? measure.tail_rate_plus() : measure.tail_rate_minus();
        const double p0 = (side == 0 ? measure.power0_plus() : measure.power0_minus()) + 2.0;
        AxisSpec spec{p0, rate, q.inner_cut, q.resolve_outer_cut(rate > 0.0 ? rate : measure.min_tail_rate())};
        QuadResult r = integrate_axis(std::function<double(double)>(f), spec, q);
        if (r.diverged) throw numeric_error("second moment of the Levy measure diverges", out);
        out += r.value;
    }
    return out;
}

double jump_tail_mean(const LevyMeasure& measure, const QuadratureConfig& q) {
    return tail_first_moment(measure, q);
}

double martingale_drift(double sigma, const LevyMeasure& measure, const QuadratureConfig& q) {
    q.validate();
    double jump = 0.0;
    if (!measure.is_zero()) {
        if (const GtsParams* p = measure.shape_params(); p && p->c_plus > 0.0 &&
                                                         p->lambda_plus <= 1.0)
            throw domain_error("martingale drift: divergent integral, requires lambda_plus > 1");
        QuadResult total;
        for (int side = 0; side < 2; ++side) {
            const bool positive = side == 0;
            const double sgn = positive ? 1.0 : -1.0;
            const LevyMeasure* m = &measure;
            auto f = [m, sgn](double s) {
                const double x = sgn * s;
                const double core = s <= 1.0 ? detail::expm1m(x) : std::expm1(x);
                return core * m->density(x);
            };
            const double rate = positive
                                    ? (measure.tail_rate_plus() > 0.0 ? measure.tail_rate_plus() - 1.0 : 0.0)
                                    : measure.tail_rate_minus();
            AxisSpec spec = axis_for(measure, positive, 2.0, rate, q);
            QuadResult r = integrate_axis(f, spec, q);
            if (r.diverged || !r.converged)
                throw numeric_error("martingale drift: integral did not converge", total.value);
            total.value += r.value;
        }
        jump = total.value;
    }
    return -0.5 * sigma * sigma - jump;
}

double drift_compensator_difference(const LevyModel& P, const LevyModel& Q,
                                    const QuadratureConfig& q) {
    PairKernel k = detail::make_pair_kernel(P, Q);
    double out = 0.0;
    for (int side = 0; side < 2; ++side) {
        const bool positive = side == 0;
        const detail::PairSide& ps = positive ? k.pos : k.neg;
        if (!ps.p_present && !ps.q_present) continue;
        const double sgn = positive ? 1.0 : -1.0;
        std::function<double(double)> f;
        if (k.named) {
            // x (nuP - nuQ) = (sgn s) nuQ (e^psi - 1), stable via expm1.
            f = [&ps, sgn](double s) {
                return sgn * s * ps.q_density(s) * std::expm1(ps.psi(s));
            };
        } else {
            const LevyMeasure* mp = &P.measure;
            const LevyMeasure* mq = &Q.measure;
            f = [mp, mq, sgn](double s) {
                return sgn * s * (mp->density(sgn * s) - mq->density(sgn * s));
            };
        }
        QuadResult r = integrate_singular_interval(f, ps.power0_q + 2.0, 1.0, q);
        if (r.diverged) throw numeric_error("drift compensator difference diverges", out);
        out += r.value;
    }
    return out;
}

double martingale_factor_difference(const LevyModel& P, const LevyModel& Q,
                                    const QuadratureConfig& q) {
    PairKernel k = detail::make_pair_kernel(P, Q);
    double out = 0.0;
    for (int side = 0; side < 2; ++side) {
        const bool positive = side == 0;
        const detail::PairSide& ps = positive ? k.pos : k.neg;
        if (!ps.p_present && !ps.q_present) continue;
        const double sgn = positive ? 1.0 : -1.0;
        const LevyMeasure* mp = &P.measure;
        const LevyMeasure* mq = &Q.measure;
        std::function<double(double)> f;
        if (k.named) {
            f = [&ps, sgn](double s) {
                return std::expm1(sgn * s) * ps.q_density(s) * std::expm1(ps.psi(s));
            };
        } else {
            f = [mp, mq, sgn](double s) {
                const double x = sgn * s;
                return std::expm1(x) * (mp->density(x) - mq->density(x));
            };
        }
        double rate;
        if (positive) {
            const double r0 = detail::min_positive(ps.rate_p, ps.rate_q);
            rate = r0 > 1.0 ? r0 - 1.0 : 0.0;
            if (r0 > 0.0 && r0 <= 1.0)
                throw domain_error("martingale factor: requires tempering rates above 1");
        } else {
            rate = detail::min_positive(ps.rate_p, ps.rate_q);
        }
        AxisSpec spec{ps.power0_q + 2.0, rate, q.inner_cut, q.resolve_outer_cut(rate)};
        QuadResult r = integrate_axis(f, spec, q);
        if (r.diverged || !r.converged)
            throw numeric_error("martingale factor integral did not converge", out);
        out += r.value;
    }
    return out;
}

HellingerResult hellinger_integral(const LevyModel& P, const LevyModel& Q,
                                   const QuadratureConfig& q) {
    PairKernel k = detail::make_pair_kernel(P, Q);
    HellingerResult out;
    for (int side = 0; side < 2; ++side) {
        const bool positive = side == 0;
        const detail::PairSide& ps = positive ? k.pos : k.neg;
        if (!ps.p_present && !ps.q_present) continue;
        if (ps.p_present != ps.q_present) {
            out.infinite = true;  // supports differ: not mutually absolutely continuous
            continue;
        }
        auto f = [&ps](double s) {
            return detail::hellinger_kernel(ps.psi(s)) * ps.q_density(s);
        };
        const double rate = detail::min_positive(ps.rate_p, ps.rate_q);
        AxisSpec spec{ps.power0_q + 2.0, rate, q.inner_cut, q.resolve_outer_cut(rate)};
        QuadResult r = integrate_axis(std::function<double(double)>(f), spec, q);
        if (r.diverged || r.value > 1.0 / q.abs_tol || !std::isfinite(r.value) || !r.converged) {
            out.infinite = true;
            out.value = std::numeric_limits<double>::infinity();
            continue;
        }
        out.value += r.value;
    }
    if (out.infinite) out.value = std::numeric_limits<double>::infinity();
    return out;
}

EquivalenceReport check_equivalence(const LevyModel& P, const LevyModel& Q,
                                    const QuadratureConfig& q) {
    q.validate();
    EquivalenceReport rep;
    rep.sigma_match = P.sigma == Q.sigma;
    if (!rep.sigma_match) rep.reasons.push_back("diffusion coefficients differ");

    HellingerResult h = hellinger_integral(P, Q, q);
    rep.hellinger_integral = h.value;
    rep.hellinger_infinite = h.infinite;
    if (h.infinite)
        rep.reasons.push_back("Hellinger-type integral of the Levy measures diverges");

    bool drift_ok = true;
    if (rep.sigma_match && P.sigma == 0.0 && !rep.hellinger_infinite) {
        try {
            rep.drift_condition_residual =
                P.gamma - Q.gamma - drift_compensator_difference(P, Q, q);
            rep.drift_condition_checked = true;
            const double scale = std::max({1.0, std::fabs(P.gamma), std::fabs(Q.gamma)});
            drift_ok = std::fabs(rep.drift_condition_residual) <= 1e-8 * scale;
            if (!drift_ok)
                rep.reasons.push_back("sigma = 0 drift condition violated: gamma_P - gamma_Q "
                                      "!= int x (nu_P - nu_Q)(dx)");
        } catch (const numeric_error&) {
            drift_ok = false;
            rep.reasons.push_back("sigma = 0 drift condition: compensator integral diverges");
        }
    }
    rep.equivalent = rep.sigma_match && !rep.hellinger_infinite && drift_ok;
    return rep;
}

double log_rn_derivative(const LevyModel& P, const LevyModel& Q, double x,
                         const QuadratureConfig& q) {
    if (x == 0.0) throw domain_error("log RN derivative undefined at x = 0");
    if (P.sigma != Q.sigma)
        throw precondition_error("log RN derivative: processes not equivalent (sigma differs)");
    PairKernel k = detail::make_pair_kernel(P, Q);
    if (k.support_mismatch)
        throw precondition_error("log RN derivative: Levy measure supports differ");
    if (k.named) {
        return x > 0.0 ? -k.dl_plus * x : -k.dl_minus * (-x);
    }
    const GtsParams* sp = P.measure.shape_params();
    const GtsParams* sq = Q.measure.shape_params();
    if (sp && sq && !k.named)
        throw precondition_error("log RN derivative: measures are not equivalent "
                                 "(shared shape parameters differ)");
    HellingerResult h = hellinger_integral(P, Q, q);
    if (h.infinite)
        throw precondition_error("log RN derivative: measures are not equivalent "
                                 "(Hellinger integral diverges)");
    return x > 0.0 ? k.pos.psi(x) : k.neg.psi(-x);
}

double eta(const LevyModel& P, const LevyModel& Q, const QuadratureConfig& q) {
    if (!(P.sigma > 0.0) || P.sigma != Q.sigma)
        throw precondition_error("eta requires sigma_P = sigma_Q > 0");
    return (P.gamma - Q.gamma - drift_compensator_difference(P, Q, q)) /
           (P.sigma * P.sigma);
}

UTriplet::UTriplet(const LevyModel& P, const LevyModel& Q, const QuadratureConfig& q)
    : p_(std::make_shared<LevyModel>(P)), q_model_(std::make_shared<LevyModel>(Q)), q_(q) {
    if (P.sigma != Q.sigma)
        throw precondition_error("UTriplet requires sigma_P = sigma_Q");
    sigma_u_ = P.sigma > 0.0 ? P.sigma * eta(P, Q, q) : 0.0;
    // gamma_U = -sigma_U^2/2 - int (e^y - 1 - y 1_{|y|<=1}) nu_U(dy)
    //         = -sigma_U^2/2 - int (e^psi - 1 - psi 1_{|psi|<=1}) nu_Q(dx).
    auto f = [](double y) {
        return std::fabs(y) <= 1.0 ? detail::expm1m(y) : std::expm1(y);
    };
    gamma_u_ = -0.5 * sigma_u_ * sigma_u_ - integrate(f);
}

double UTriplet::integrate(const std::function<double(double)>& f) const {
    PairKernel k = detail::make_pair_kernel(*p_, *q_model_);
    double out = 0.0;
    for (int side = 0; side < 2; ++side) {
        const bool positive = side == 0;
        const detail::PairSide& ps = positive ? k.pos : k.neg;
        if (!ps.q_present) continue;
        auto g = [&ps, &f](double s) { return f(ps.psi(s)) * ps.q_density(s); };
        const double rate = detail::min_positive(ps.rate_p, ps.rate_q);
        AxisSpec spec{ps.power0_q + 2.0, rate, q_.inner_cut, q_.resolve_outer_cut(rate)};
        QuadResult r = integrate_axis(std::function<double(double)>(g), spec, q_);
        if (r.diverged || !r.converged)
            throw numeric_error("pushforward integral did not converge", out);
        out += r.value;
    }
    return out;
}

}  // namespace levyig
