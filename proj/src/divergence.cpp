#include "levyig/divergence.hpp"

#include <cmath>

#include "levyig/models.hpp"
#include "pair_kernel.hpp"

namespace levyig {

namespace {

using detail::PairKernel;

bool closed_form_eligible(const LevyModel& P, const LevyModel& Q, const PairKernel& k,
                          double alpha) {
    auto named_family = [](MeasureFamily f) { return f != MeasureFamily::generic; };
    return k.named && !k.support_mismatch && P.sigma == 0.0 && Q.sigma == 0.0 &&
           named_family(P.measure.family()) && named_family(Q.measure.family()) &&
           alpha >= -1.0 && alpha <= 1.0 && !P.measure.is_zero();
}

void ensure_measure_equivalence(const LevyModel& P, const LevyModel& Q, const PairKernel& k,
                                const QuadratureConfig& q) {
    if (P.sigma != Q.sigma)
        throw precondition_error("divergence: processes not equivalent (sigma differs)");
    if (k.support_mismatch)
        throw precondition_error("divergence: Levy measure supports differ");
    if (k.named) return;  // exponential tilts of a shared shape are always equivalent
    if (P.measure.is_zero() && Q.measure.is_zero()) return;
    HellingerResult h = hellinger_integral(P, Q, q);
    if (h.infinite)
        throw precondition_error(
            "divergence: processes not equivalent (Hellinger integral diverges)");
}

void ensure_martingale_models(const LevyModel& P, const LevyModel& Q,
                              const DivergenceRequest& req) {
    for (const LevyModel* m : {&P, &Q}) {
        std::complex<double> phi =
            m->measure.shape_params()
                ? characteristic_exponent_closed(*m, std::complex<double>(0.0, -1.0),
                                                 req.horizon, req.quadrature)
                : characteristic_exponent(*m, std::complex<double>(0.0, -1.0), req.horizon,
                                          req.quadrature);
        if (std::abs(phi) > 1e-8)
            throw precondition_error(
                "divergence: martingale form requested but |Phi_T(-i)| > 1e-8");
    }
}

FamilyPair pair_from_models(const LevyModel& P, const LevyModel& Q) {
    FamilyPair fp;
    fp.family = P.measure.family();
    fp.base = *P.measure.shape_params();
    const GtsParams* sq = Q.measure.shape_params();
    fp.lambda_tilde_plus = sq->lambda_plus;
    fp.lambda_tilde_minus = sq->lambda_minus;
    return fp;
}

// Jump integral of kernel(psi) against nu_Q over both sides.
double jump_integral(const PairKernel& k, const std::function<double(double)>& kernel,
                     double rate_mix_coeff,  // "b" for the Delta kernel, 1 for KL
                     const QuadratureConfig& q, double& abs_error) {
    double out = 0.0;
    abs_error = 0.0;
    for (int side = 0; side < 2; ++side) {
        const detail::PairSide& ps = side == 0 ? k.pos : k.neg;
        if (!ps.p_present && !ps.q_present) continue;
        auto f = [&ps, &kernel](double s) { return kernel(ps.psi(s)) * ps.q_density(s); };
        double rate = detail::min_positive(ps.rate_p, ps.rate_q);
        if (rate > 0.0 && ps.rate_p > 0.0 && ps.rate_q > 0.0) {
            const double mix = rate_mix_coeff * ps.rate_p + (1.0 - rate_mix_coeff) * ps.rate_q;
            rate = mix > 0.0 ? std::min(rate, mix) : 0.0;  // let divergence detection decide
        }
        AxisSpec spec{ps.power0_q + 2.0, rate, q.inner_cut, q.resolve_outer_cut(rate)};
        QuadResult r = integrate_axis(std::function<double(double)>(f), spec, q);
        if (r.diverged)
            throw numeric_error("divergence: jump integral diverges", out + r.value);
        if (!r.converged)
            throw numeric_error("divergence: jump integral did not converge", out + r.value);
        out += r.value;
        abs_error += r.abs_error;
    }
    return out;
}

DivergenceResult evaluate(const LevyModel& P, const LevyModel& Q, const DivergenceRequest& req) {
    if (!(req.horizon > 0.0)) throw domain_error("divergence: horizon T must be > 0");
    req.quadrature.validate();
    const QuadratureConfig& q = req.quadrature;
    PairKernel k = detail::make_pair_kernel(P, Q);
    ensure_measure_equivalence(P, Q, k, q);
    if (req.use_martingale_form) ensure_martingale_models(P, Q, req);

    const double alpha = req.alpha;
    const double T = req.horizon;
    DivergenceResult res;

    if (closed_form_eligible(P, Q, k, alpha)) {
        FamilyPair fp = pair_from_models(P, Q);
        res.method = DivergenceMethod::closed_form;
        res.delta = closed_form_delta(fp, alpha, T);
        res.drift_term = 0.0;
        res.jump_term = res.delta;
        res.value = closed_form_alpha_divergence(fp, alpha, T);
        if (alpha == 1.0 || alpha == -1.0) res.jump_term = res.value;
        return res;
    }

    res.method = DivergenceMethod::quadrature;
    if (alpha == 1.0) {
        DivergenceRequest dual = req;
        dual.alpha = -1.0;
        DivergenceResult r = evaluate(Q, P, dual);
        r.method = DivergenceMethod::quadrature;
        return r;
    }

    double drift_factor = 0.0;
    if (P.sigma > 0.0) {
        drift_factor = req.use_martingale_form
                           ? martingale_factor_difference(P, Q, q)
                           : P.gamma - Q.gamma - drift_compensator_difference(P, Q, q);
    }
    if (alpha == -1.0) {
        double err = 0.0;
        const double jump =
            P.measure.is_zero() && Q.measure.is_zero()
                ? 0.0
                : T * jump_integral(k, [](double psi) { return detail::kl_kernel(psi); }, 1.0,
                                    q, err);
        const double drift =
            P.sigma > 0.0 ? T / (2.0 * P.sigma * P.sigma) * drift_factor * drift_factor : 0.0;
        res.delta = 0.0;
        res.drift_term = drift;
        res.jump_term = jump;
        res.value = drift + jump;
        return res;
    }

    const double b = 0.5 * (1.0 - alpha);
    double err = 0.0;
    const double jump =
        P.measure.is_zero() && Q.measure.is_zero()
            ? 0.0
            : T * jump_integral(k, [b](double psi) { return detail::delta_kernel(psi, b); }, b,
                                q, err);
    const double coeff = (1.0 - alpha * alpha) / 4.0;
    const double drift =
        P.sigma > 0.0 ? coeff * T / (2.0 * P.sigma * P.sigma) * drift_factor * drift_factor
                      : 0.0;
    res.drift_term = drift;
    res.jump_term = jump;
    res.delta = drift + jump;
    res.value = 4.0 / (1.0 - alpha * alpha) * (-std::expm1(-res.delta));
    return res;
}

}  // namespace

DivergenceResult delta_alpha(const LevyModel& P, const LevyModel& Q,
                             const DivergenceRequest& req) {
    return evaluate(P, Q, req);
}

DivergenceResult alpha_divergence(const LevyModel& P, const LevyModel& Q,
                                  const DivergenceRequest& req) {
    return evaluate(P, Q, req);
}

double linear_alpha_divergence(const LevyModel& P, const LevyModel& Q,
                               const DivergenceRequest& req) {
    DivergenceResult r = evaluate(P, Q, req);
    if (req.alpha == 1.0 || req.alpha == -1.0) return r.value;
    return 4.0 / (1.0 - req.alpha * req.alpha) * r.delta;
}

}  // namespace levyig
