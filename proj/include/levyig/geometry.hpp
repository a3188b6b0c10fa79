#pragma once

#include <functional>

#include "levyig/divergence.hpp"
#include "levyig/geometry_types.hpp"
#include "levyig/models.hpp"

namespace levyig {

/// Which drift factor enters the sigma != 0 terms: the general compensated
/// drift or its martingale (risk-neutral) replacement.
enum class DriftForm { general, martingale };

/// Fisher information matrix at the chart point, by quadrature of the score
/// integrals (plus the drift block when sigma != 0).
MetricMatrix fisher_metric(const LevyModel& model, const CoordinateChart& chart, double T,
                           const QuadratureConfig& q, DriftForm form = DriftForm::general);

/// alpha-connection components by quadrature.
ConnectionTensor alpha_connection(const LevyModel& model, const CoordinateChart& chart,
                                  double alpha, double T, const QuadratureConfig& q,
                                  DriftForm form = DriftForm::general);

/// g_ij = -(4/(1-alpha^2)) d_i dtilde_j Delta at coinciding parameters, by
/// central mixed finite differences with h_i = step * max(1, |xi_i|).
MetricMatrix metric_from_divergence(const LevyModel& model, const CoordinateChart& chart,
                                    double alpha, double T, double step = 1e-3,
                                    const QuadratureConfig& q = {});

/// Gamma_{ij,k} = -(4/(1-alpha^2)) d_i d_j dtilde_k Delta, third-order mixed
/// stencil with h_i = step * max(1, |xi_i|).
ConnectionTensor connection_from_divergence(const LevyModel& model, const CoordinateChart& chart,
                                            double alpha, double T, double step = 1e-2,
                                            const QuadratureConfig& q = {});

/// Unnormalized Jeffreys prior sqrt(det g) from the family's closed-form
/// metric restricted to the chart.
double jeffreys_prior(const LevyModel& model, const CoordinateChart& chart, double T);

using MetricField = std::function<MetricMatrix(const std::vector<double>&)>;
using ScalarField = std::function<double(const std::vector<double>&)>;

/// Metric field over the chart backed by the closed-form diagonal entries.
MetricField closed_form_metric_field(const LevyModel& model, const CoordinateChart& chart,
                                     double T);

/// Realize a RhoSpec as a function of the chart point.
ScalarField rho_function(const RhoSpec& rho, const CoordinateChart& chart);

/// Laplace-Beltrami operator
///   (1/sqrt(det g)) d_i ( sqrt(det g) g^{ij} d_j rho )
/// with central differences of half-width 1e-4 |xi_i|.
double laplace_beltrami(const MetricField& metric, const ScalarField& rho,
                        const std::vector<double>& point,
                        const std::vector<std::pair<double, double>>& bounds = {});

struct ScanReport {
    bool all_negative = false;
    std::vector<double> worst_point;
    double worst_value = 0.0;
    int points_evaluated = 0;
};

/// Evaluate the Laplace-Beltrami of the candidate rho over the
/// (lambda_plus, lambda_minus) grid; all_negative certifies Delta rho < 0 on
/// every grid point.
ScanReport superharmonic_scan(const LevyMeasure& family_template,
                              const std::vector<double>& lambda_grid, const RhoSpec& rho,
                              double T);

/// Largest per-entry relative deviation between two same-shaped results;
/// entries below 1e-9 of the overall scale are compared as zeros.
double metric_rel_deviation(const MetricMatrix& a, const MetricMatrix& b);
double connection_rel_deviation(const ConnectionTensor& a, const ConnectionTensor& b);

}  // namespace levyig
