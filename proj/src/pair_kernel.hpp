#pragma once

// Internal helpers shared by levy_core and divergence: per-side views of a
// process pair (Q-side density, log Radon-Nikodym derivative psi, quadrature
// hints) plus cancellation-stable integrand kernels.

#include <cmath>
#include <functional>

#include "levyig/measure.hpp"

namespace levyig::detail {

// e^w - 1 - w, stable for small |w|.
inline double expm1m(double w) {
    if (std::fabs(w) < 1e-4) {
        const double w2 = w * w;
        return w2 * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0)));
    }
    return std::expm1(w) - w;
}

inline std::complex<double> cexpm1(std::complex<double> w) {
    if (std::abs(w) < 1e-4)
        return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0)));
    return std::exp(w) - 1.0;
}

inline std::complex<double> cexpm1m(std::complex<double> w) {
    if (std::abs(w) < 1e-4) {
        const std::complex<double> w2 = w * w;
        return w2 * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0)));
    }
    return std::exp(w) - 1.0 - w;
}

// Jump integrand of Delta: b e^psi + (1-b) - e^(b psi) with b = (1-alpha)/2.
// Naive evaluation loses every digit near psi = 0; the series keeps the
// O(psi^2) leading term exact.
inline double delta_kernel(double psi, double b) {
    if (std::fabs(psi) < 1e-5) {
        const double p2 = psi * psi;
        return b * (1.0 - b) * p2 / 2.0 + b * (1.0 - b * b) * p2 * psi / 6.0 +
               b * (1.0 - b * b * b) * p2 * p2 / 24.0;
    }
    return b * std::exp(psi) + (1.0 - b) - std::exp(b * psi);
}

// KL jump integrand: r log r - r + 1 = e^psi (psi - 1) + 1.
inline double kl_kernel(double psi) {
    if (std::fabs(psi) < 1e-5) {
        const double p2 = psi * psi;
        return p2 / 2.0 + p2 * psi / 3.0 + p2 * p2 / 8.0;
    }
    return std::exp(psi) * (psi - 1.0) + 1.0;
}

// Hellinger integrand: (e^(psi/2) - 1)^2.
inline double hellinger_kernel(double psi) {
    const double e = std::expm1(0.5 * psi);
    return e * e;
}

struct PairSide {
    bool p_present = false;
    bool q_present = false;
    std::function<double(double)> q_density;  // at +s resp. -s, s > 0
    std::function<double(double)> psi;        // log(dnuP/dnuQ) at that point
    double power0_q = 0.0;                    // Q density exponent at the origin
    double rate_p = 0.0;                      // exponential tail rates (0 = unknown)
    double rate_q = 0.0;
};

struct PairKernel {
    PairSide pos, neg;
    bool named = false;          // shapes match (same C, a per side)
    bool support_mismatch = false;
    double dl_plus = 0.0;        // lambdaP - lambdaQ per side, named pairs
    double dl_minus = 0.0;
};

inline bool side_shape_matches(double cp, double ap, double cq, double aq) {
    if ((cp > 0.0) != (cq > 0.0)) return false;
    if (cp == 0.0) return true;
    return cp == cq && ap == aq;
}

inline PairKernel make_pair_kernel(const LevyModel& P, const LevyModel& Q) {
    PairKernel k;
    const GtsParams* sp = P.measure.shape_params();
    const GtsParams* sq = Q.measure.shape_params();
    const LevyMeasure* mp = &P.measure;
    const LevyMeasure* mq = &Q.measure;

    k.pos.q_present = mq->density(1e-3) > 0.0 || (sq && sq->c_plus > 0.0);
    k.neg.q_present = mq->density(-1e-3) > 0.0 || (sq && sq->c_minus > 0.0);
    k.pos.p_present = mp->density(1e-3) > 0.0 || (sp && sp->c_plus > 0.0);
    k.neg.p_present = mp->density(-1e-3) > 0.0 || (sp && sp->c_minus > 0.0);

    if (sp && sq) {
        k.named = side_shape_matches(sp->c_plus, sp->a_plus, sq->c_plus, sq->a_plus) &&
                  side_shape_matches(sp->c_minus, sp->a_minus, sq->c_minus, sq->a_minus);
        k.support_mismatch = (sp->c_plus > 0.0) != (sq->c_plus > 0.0) ||
                             (sp->c_minus > 0.0) != (sq->c_minus > 0.0);
        if (k.named) {
            k.dl_plus = sp->lambda_plus - sq->lambda_plus;
            k.dl_minus = sp->lambda_minus - sq->lambda_minus;
        }
    }

    const double dlp = k.dl_plus, dlm = k.dl_minus;
    if (k.named) {
        k.pos.psi = [dlp](double s) { return -dlp * s; };
        k.neg.psi = [dlm](double s) { return -dlm * s; };
    } else {
        k.pos.psi = [mp, mq](double s) {
            const double np = mp->density(s), nq = mq->density(s);
            if (np <= 0.0 && nq <= 0.0) return 0.0;
            return std::log(np / nq);  // +-inf on one-sided support, caught downstream
        };
        k.neg.psi = [mp, mq](double s) {
            const double np = mp->density(-s), nq = mq->density(-s);
            if (np <= 0.0 && nq <= 0.0) return 0.0;
            return std::log(np / nq);
        };
    }
    k.pos.q_density = [mq](double s) { return mq->density(s); };
    k.neg.q_density = [mq](double s) { return mq->density(-s); };
    k.pos.power0_q = mq->power0_plus();
    k.neg.power0_q = mq->power0_minus();
    k.pos.rate_q = mq->tail_rate_plus();
    k.neg.rate_q = mq->tail_rate_minus();
    k.pos.rate_p = mp->tail_rate_plus();
    k.neg.rate_p = mp->tail_rate_minus();
    return k;
}

inline double min_positive(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    return a > 0.0 ? a : (b > 0.0 ? b : 0.0);
}

}  // namespace levyig::detail
