#pragma once

#include "levyig/levy_core.hpp"
#include "levyig/measure.hpp"

namespace levyig {

/// Evaluation bundle for Delta and the alpha-divergence. The martingale form
/// is only valid when both models satisfy |Phi_T(-i)| <= 1e-8.
struct DivergenceRequest {
    double alpha = 0.0;
    double horizon = 1.0;  // T
    bool use_martingale_form = false;
    QuadratureConfig quadrature{};
};

enum class DivergenceMethod { closed_form, quadrature };

struct DivergenceResult {
    double value = 0.0;       // D^(alpha)(P||Q)
    double delta = 0.0;       // Delta exponent; defined 0 at alpha = +-1
    double drift_term = 0.0;  // first summand of Delta (or of KL at alpha = +-1)
    double jump_term = 0.0;
    DivergenceMethod method = DivergenceMethod::quadrature;
};

/// Delta^(alpha)_T exponent with its drift/jump breakdown. The value field is
/// filled as well (both quantities come from the same evaluation).
DivergenceResult delta_alpha(const LevyModel& P, const LevyModel& Q,
                             const DivergenceRequest& req);

/// alpha-divergence: (4/(1-alpha^2))(1 - e^{-Delta}) away from alpha = +-1,
/// the Kullback-Leibler form at alpha = -1 and its dual at alpha = +1.
DivergenceResult alpha_divergence(const LevyModel& P, const LevyModel& Q,
                                  const DivergenceRequest& req);

/// Linear (small-Delta) approximation (4/(1-alpha^2)) Delta; coincides with
/// the exact divergence in the alpha -> +-1 limits.
double linear_alpha_divergence(const LevyModel& P, const LevyModel& Q,
                               const DivergenceRequest& req);

}  // namespace levyig
