#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "levyig/measure.hpp"
#include "levyig/quadrature.hpp"

namespace levyig {

/// Levy exponent Phi_t(z) = -t sigma^2 z^2 / 2 + i t gamma z
///   + t int (e^{izx} - 1 - izx 1_{|x|<=1}) nu(dx),
/// jump integral by adaptive quadrature on the standard split. Throws
/// numeric_error (carrying the partial estimate) on non-convergence and
/// domain_error when a named measure cannot support Im(z) (tail blow-up).
std::complex<double> characteristic_exponent(const LevyModel& model, std::complex<double> z,
                                             double t, const QuadratureConfig& q);
std::complex<double> characteristic_exponent(const LevyModel& model, double z, double t,
                                             const QuadratureConfig& q);

/// Closed-form Levy exponent for named measure shapes (tempered-stable power
/// blocks, logarithmic blocks for the a = 0 boundary). The truncation
/// correction int_{|x|>1} x nu(dx) is evaluated by quadrature.
std::complex<double> characteristic_exponent_closed(const LevyModel& model,
                                                    std::complex<double> z, double t,
                                                    const QuadratureConfig& q);

/// Repeated-evaluation form of the Levy exponent: precomputes the truncation
/// correction once and uses the closed-form blocks for shaped measures (the
/// quadrature route otherwise). Safe to call concurrently.
class ExponentEvaluator {
  public:
    ExponentEvaluator(const LevyModel& model, const QuadratureConfig& q);
    std::complex<double> operator()(std::complex<double> z, double t) const;
    bool closed_form() const { return closed_; }

  private:
    LevyModel model_;
    QuadratureConfig q_;
    bool closed_ = false;
    double tail_moment_ = 0.0;
};

/// int x^2 nu(dx), both sides.
double jump_second_moment(const LevyMeasure& measure, const QuadratureConfig& q);

/// int_{|x|>1} x nu(dx).
double jump_tail_mean(const LevyMeasure& measure, const QuadratureConfig& q);

/// Drift making the exponential model a martingale:
/// gamma = -sigma^2/2 - int (e^x - 1 - x 1_{|x|<=1}) nu(dx). Requires the
/// positive tempering rate to exceed 1.
double martingale_drift(double sigma, const LevyMeasure& measure, const QuadratureConfig& q);

/// psi(x) = log(dnu_P / dnu_Q)(x) at x != 0; requires an equivalent pair.
double log_rn_derivative(const LevyModel& P, const LevyModel& Q, double x,
                         const QuadratureConfig& q = {});

struct EquivalenceReport {
    bool equivalent = false;
    bool sigma_match = false;
    double hellinger_integral = 0.0;  // int (e^{psi/2} - 1)^2 nu_Q(dx)
    bool hellinger_infinite = false;
    double drift_condition_residual = 0.0;  // sigma = 0 case only
    bool drift_condition_checked = false;
    std::vector<std::string> reasons;
};

/// Mutual absolute continuity conditions: equal sigma, finite Hellinger-type
/// integral, and (sigma = 0) the drift/compensator matching condition.
/// Violations are reported, not thrown.
EquivalenceReport check_equivalence(const LevyModel& P, const LevyModel& Q,
                                    const QuadratureConfig& q);

/// int_{-1}^{1} x (nu_P - nu_Q)(dx).
double drift_compensator_difference(const LevyModel& P, const LevyModel& Q,
                                    const QuadratureConfig& q);

/// int (e^x - 1)(nu_P - nu_Q)(dx); the martingale replacement of the drift
/// factor. Requires positive-side tempering rates above 1.
double martingale_factor_difference(const LevyModel& P, const LevyModel& Q,
                                    const QuadratureConfig& q);

struct HellingerResult {
    double value = 0.0;
    bool infinite = false;
};
HellingerResult hellinger_integral(const LevyModel& P, const LevyModel& Q,
                                   const QuadratureConfig& q);

/// Girsanov drift shift: eta = (gamma_P - gamma_Q - int x (nu_P - nu_Q)) / sigma^2.
double eta(const LevyModel& P, const LevyModel& Q, const QuadratureConfig& q);

/// Triplet of the exponent process U_t with dP/dQ = e^{U_t}. The jump measure
/// nu_U = nu_Q psi^{-1} is realized as change of variables: integrate(f)
/// evaluates int f(psi(x)) nu_Q(dx). Test functions must vanish O(y^2) at the
/// origin and grow at most polynomially.
class UTriplet {
  public:
    UTriplet(const LevyModel& P, const LevyModel& Q, const QuadratureConfig& q);
    double sigma_u() const { return sigma_u_; }
    double gamma_u() const { return gamma_u_; }
    double integrate(const std::function<double(double)>& f) const;

  private:
    std::shared_ptr<const LevyModel> p_, q_model_;
    QuadratureConfig q_;
    double sigma_u_ = 0.0;
    double gamma_u_ = 0.0;
};

}  // namespace levyig
