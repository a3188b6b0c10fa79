#include "levyig/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "pair_kernel.hpp"

namespace levyig {

namespace {

enum class Side { plus, minus };

Side side_of(const std::string& name) {
    if (name == "lambda_plus") return Side::plus;
    if (name == "lambda_minus") return Side::minus;
    throw domain_error("chart coordinate '" + name + "' not supported by this family");
}

struct SideView {
    double c = 0.0, a = 0.0, lambda = 0.0;
    std::function<double(double)> density;  // at +s along the side
    double power0 = 0.0;
    double rate = 0.0;
};

SideView side_view(const LevyMeasure& m, Side s) {
    const GtsParams* p = m.shape_params();
    if (!p)
        throw domain_error("geometry: analytic score functions require a named measure shape");
    SideView v;
    const LevyMeasure* mm = &m;
    if (s == Side::plus) {
        v.c = p->c_plus;
        v.a = p->a_plus;
        v.lambda = p->lambda_plus;
        v.density = [mm](double t) { return mm->density(t); };
        v.power0 = m.power0_plus();
        v.rate = m.tail_rate_plus();
    } else {
        v.c = p->c_minus;
        v.a = p->a_minus;
        v.lambda = p->lambda_minus;
        v.density = [mm](double t) { return mm->density(-t); };
        v.power0 = m.power0_minus();
        v.rate = m.tail_rate_minus();
    }
    return v;
}

// int_0^inf s^pow * density(s) ds by quadrature.
double side_moment(const SideView& v, double pow_, const QuadratureConfig& q) {
    if (v.c == 0.0) return 0.0;
    auto f = [&v, pow_](double s) { return std::pow(s, pow_) * v.density(s); };
    AxisSpec spec{v.power0 + pow_, v.rate, q.inner_cut, q.resolve_outer_cut(v.rate)};
    QuadResult r = integrate_axis(std::function<double(double)>(f), spec, q);
    if (r.diverged || !r.converged)
        throw numeric_error("geometry: moment integral did not converge", r.value);
    return r.value;
}

// int_0^1 s^pow * density(s) ds.
double side_moment_unit(const SideView& v, double pow_, const QuadratureConfig& q) {
    if (v.c == 0.0) return 0.0;
    const double p1 = std::max(v.power0 + pow_ + 1.0, 0.05);
    auto g = [&v, pow_](double u) {
        const double s = std::exp(u);
        return std::pow(s, pow_) * v.density(s) * s;
    };
    QuadResult core = integrate_adaptive(g, std::log(q.inner_cut) - 46.0 / p1,
                                         std::log(q.inner_cut), q.rel_tol, q.abs_tol * 0.5,
                                         q.max_subdivisions, 1.0 / q.abs_tol);
    auto f = [&v, pow_](double s) { return std::pow(s, pow_) * v.density(s); };
    QuadResult mid = integrate_adaptive(f, q.inner_cut, 1.0, q.rel_tol, q.abs_tol * 0.5,
                                        q.max_subdivisions, 1.0 / q.abs_tol);
    if (core.diverged || mid.diverged)
        throw numeric_error("geometry: unit-interval moment diverges", core.value + mid.value);
    return core.value + mid.value;
}

// int_0^inf s^pow (e^{sgn s} - 1) density(s) ds, the martingale drift factors.
double side_mart_moment(const SideView& v, double pow_, bool positive,
                        const QuadratureConfig& q) {
    if (v.c == 0.0) return 0.0;
    if (positive && v.rate > 0.0 && v.rate <= 1.0)
        throw domain_error("geometry: martingale drift factor requires lambda_plus > 1");
    const double sgn = positive ? 1.0 : -1.0;
    auto f = [&v, pow_, sgn](double s) {
        return std::pow(s, pow_) * std::expm1(sgn * s) * v.density(s);
    };
    const double rate = positive ? (v.rate > 1.0 ? v.rate - 1.0 : 0.0) : v.rate;
    AxisSpec spec{v.power0 + pow_ + 1.0, rate, q.inner_cut, q.resolve_outer_cut(rate)};
    QuadResult r = integrate_axis(std::function<double(double)>(f), spec, q);
    if (r.diverged || !r.converged)
        throw numeric_error("geometry: martingale moment did not converge", r.value);
    return r.value;
}

// d/d lambda_i of the drift factor entering the sigma != 0 terms.
double drift_factor_d1(const LevyModel& model, Side s, DriftForm form,
                       const QuadratureConfig& q) {
    SideView v = side_view(model.measure, s);
    if (form == DriftForm::general) {
        // d/dl (gamma - int_{-1}^1 x nu) = +- int_0^1 s^2 density ds
        const double m2 = side_moment_unit(v, 2.0, q);
        return s == Side::plus ? m2 : -m2;
    }
    // d/dl int (e^x - 1) nu(dx)
    if (s == Side::plus) return -side_mart_moment(v, 1.0, true, q);
    return -side_mart_moment(v, 1.0, false, q);
}

// Second derivative of the drift factor (diagonal in the side).
double drift_factor_d2(const LevyModel& model, Side s, DriftForm form,
                       const QuadratureConfig& q) {
    SideView v = side_view(model.measure, s);
    if (form == DriftForm::general) {
        const double m3 = side_moment_unit(v, 3.0, q);
        return s == Side::plus ? -m3 : m3;
    }
    return side_mart_moment(v, 2.0, s == Side::plus, q);
}

LevyModel model_at(const LevyModel& model, const CoordinateChart& chart,
                   const std::vector<double>& point) {
    double lp = std::numeric_limits<double>::quiet_NaN();
    double lm = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < chart.names.size(); ++i) {
        if (side_of(chart.names[i]) == Side::plus)
            lp = point[i];
        else
            lm = point[i];
    }
    return LevyModel(model.sigma, model.gamma, measure_with_lambda(model.measure, lp, lm));
}

double rel_step(double step, double coord) { return step * std::max(1.0, std::fabs(coord)); }

// Delta of the pair whose P-side sits at `xi` and Q-side at `xi_tilde`.
double delta_at(const LevyModel& model, const CoordinateChart& chart,
                const std::vector<double>& xi, const std::vector<double>& xi_tilde,
                double alpha, double T, const QuadratureConfig& q) {
    LevyModel P = model_at(model, chart, xi);
    LevyModel Q = model_at(model, chart, xi_tilde);
    DivergenceRequest req{alpha, T, false, q};
    return delta_alpha(P, Q, req).delta;
}

void check_stencil_magnitude(double max_abs) {
    if (max_abs < 1e-13)
        throw numeric_error(
            "finite-difference stencil lost all significant digits; use a larger step",
            0.0);
}

}  // namespace

CoordinateChart CoordinateChart::lambda_chart(double lambda_plus, double lambda_minus) {
    CoordinateChart c;
    c.names = {"lambda_plus", "lambda_minus"};
    c.point = {lambda_plus, lambda_minus};
    c.bounds = {{0.0, std::numeric_limits<double>::infinity()},
                {0.0, std::numeric_limits<double>::infinity()}};
    return c;
}

void CoordinateChart::validate() const {
    if (names.empty() || names.size() != point.size())
        throw domain_error("chart: names and point must be non-empty and same-sized");
    if (!bounds.empty() && bounds.size() != names.size())
        throw domain_error("chart: bounds size mismatch");
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto [lo, hi] = bound(i);
        if (!(point[i] > lo) || !(point[i] < hi))
            throw domain_error("chart: point must lie strictly inside bounds");
    }
}

std::pair<double, double> CoordinateChart::bound(std::size_t i) const {
    if (bounds.empty()) return {0.0, std::numeric_limits<double>::infinity()};
    return bounds[i];
}

double MetricMatrix::determinant() const {
    if (dim == 1) return data[0];
    if (dim == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    // Gaussian elimination with partial pivoting for larger charts.
    std::vector<double> m = data;
    double det = 1.0;
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (std::fabs(m[r * dim + col]) > std::fabs(m[piv * dim + col])) piv = r;
        if (m[piv * dim + col] == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t c = 0; c < dim; ++c) std::swap(m[piv * dim + c], m[col * dim + c]);
            det = -det;
        }
        det *= m[col * dim + col];
        for (std::size_t r = col + 1; r < dim; ++r) {
            const double f = m[r * dim + col] / m[col * dim + col];
            for (std::size_t c = col; c < dim; ++c) m[r * dim + c] -= f * m[col * dim + c];
        }
    }
    return det;
}

MetricMatrix MetricMatrix::inverse() const {
    MetricMatrix inv(dim, horizon);
    std::vector<double> m = data;
    std::vector<double> id(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) id[i * dim + i] = 1.0;
    double max_entry = 0.0, min_pivot = std::numeric_limits<double>::infinity();
    for (double v : m) max_entry = std::max(max_entry, std::fabs(v));
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (std::fabs(m[r * dim + col]) > std::fabs(m[piv * dim + col])) piv = r;
        const double pivot = m[piv * dim + col];
        if (pivot == 0.0) throw domain_error("metric inversion: singular matrix");
        min_pivot = std::min(min_pivot, std::fabs(pivot));
        if (piv != col)
            for (std::size_t c = 0; c < dim; ++c) {
                std::swap(m[piv * dim + c], m[col * dim + c]);
                std::swap(id[piv * dim + c], id[col * dim + c]);
            }
        const double s = 1.0 / m[col * dim + col];
        for (std::size_t c = 0; c < dim; ++c) {
            m[col * dim + c] *= s;
            id[col * dim + c] *= s;
        }
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == col) continue;
            const double f = m[r * dim + col];
            for (std::size_t c = 0; c < dim; ++c) {
                m[r * dim + c] -= f * m[col * dim + c];
                id[r * dim + c] -= f * id[col * dim + c];
            }
        }
    }
    if (max_entry / min_pivot > 1e12)
        throw domain_error("metric inversion: condition number above 1e12");
    inv.data = std::move(id);
    return inv;
}

MetricMatrix fisher_metric(const LevyModel& model, const CoordinateChart& chart, double T,
                           const QuadratureConfig& q, DriftForm form) {
    chart.validate();
    q.validate();
    if (!(T > 0.0)) throw domain_error("fisher_metric: T must be > 0");
    LevyModel m = model_at(model, chart, chart.point);
    const std::size_t d = chart.dim();
    MetricMatrix g(d, T);

    std::vector<Side> sides(d);
    for (std::size_t i = 0; i < d; ++i) sides[i] = side_of(chart.names[i]);

    for (std::size_t i = 0; i < d; ++i) {
        SideView v = side_view(m.measure, sides[i]);
        g.at(i, i) = T * side_moment(v, 2.0, q);  // scores are -x / -|x| per side
    }
    if (m.sigma > 0.0) {
        std::vector<double> d1(d);
        for (std::size_t i = 0; i < d; ++i) d1[i] = drift_factor_d1(m, sides[i], form, q);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                g.at(i, j) += T / (m.sigma * m.sigma) * d1[i] * d1[j];
    }
    return g;
}

ConnectionTensor alpha_connection(const LevyModel& model, const CoordinateChart& chart,
                                  double alpha, double T, const QuadratureConfig& q,
                                  DriftForm form) {
    chart.validate();
    q.validate();
    if (!(T > 0.0)) throw domain_error("alpha_connection: T must be > 0");
    LevyModel m = model_at(model, chart, chart.point);
    const std::size_t d = chart.dim();
    ConnectionTensor c(d, alpha);
    const double b = 0.5 * (1.0 - alpha);

    std::vector<Side> sides(d);
    for (std::size_t i = 0; i < d; ++i) sides[i] = side_of(chart.names[i]);

    // Exponential tempering has vanishing second log-derivatives; the jump
    // block reduces to the score triple product, nonzero only on the diagonal.
    for (std::size_t i = 0; i < d; ++i) {
        SideView v = side_view(m.measure, sides[i]);
        c.at(i, i, i) = -b * T * side_moment(v, 3.0, q);
    }
    if (m.sigma > 0.0) {
        std::vector<double> d1(d);
        for (std::size_t i = 0; i < d; ++i) d1[i] = drift_factor_d1(m, sides[i], form, q);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                if (sides[i] != sides[j]) continue;  // mixed second drift derivatives vanish
                const double d2 = drift_factor_d2(m, sides[i], form, q);
                for (std::size_t k = 0; k < d; ++k)
                    c.at(i, j, k) += T / (m.sigma * m.sigma) * d2 * d1[k];
            }
    }
    return c;
}

MetricMatrix metric_from_divergence(const LevyModel& model, const CoordinateChart& chart,
                                    double alpha, double T, double step,
                                    const QuadratureConfig& q) {
    chart.validate();
    if (!(step > 0.0)) throw domain_error("metric_from_divergence: step must be > 0");
    // The -4/(1-alpha^2) scaling stays finite through alpha = +-1; evaluate
    // the exact endpoints as a one-sided limit.
    if (alpha == 1.0) alpha = 1.0 - 1e-6;
    if (alpha == -1.0) alpha = -1.0 + 1e-6;
    const std::size_t d = chart.dim();
    MetricMatrix g(d, T);
    const double c = 4.0 / (1.0 - alpha * alpha);
    const std::vector<double>& x0 = chart.point;
    for (std::size_t i = 0; i < d; ++i) {
        const double hi = rel_step(step, x0[i]);
        for (std::size_t j = 0; j < d; ++j) {
            const double hj = rel_step(step, x0[j]);
            double corners[4];
            int idx = 0;
            for (int si : {+1, -1})
                for (int sj : {+1, -1}) {
                    std::vector<double> xi = x0, xt = x0;
                    xi[i] += si * hi;
                    xt[j] += sj * hj;
                    corners[idx++] = delta_at(model, chart, xi, xt, alpha, T, q);
                }
            const double mixed = (corners[0] - corners[1] - corners[2] + corners[3]) /
                                 (4.0 * hi * hj);
            check_stencil_magnitude(std::max({std::fabs(corners[0]), std::fabs(corners[1]),
                                              std::fabs(corners[2]), std::fabs(corners[3])}));
            g.at(i, j) = -c * mixed;
        }
    }
    return g;
}

ConnectionTensor connection_from_divergence(const LevyModel& model, const CoordinateChart& chart,
                                            double alpha, double T, double step,
                                            const QuadratureConfig& q) {
    chart.validate();
    if (!(step > 0.0)) throw domain_error("connection_from_divergence: step must be > 0");
    const double alpha_eval = alpha == 1.0 ? 1.0 - 1e-6 : (alpha == -1.0 ? -1.0 + 1e-6 : alpha);
    const std::size_t d = chart.dim();
    ConnectionTensor conn(d, alpha);
    const double c = 4.0 / (1.0 - alpha_eval * alpha_eval);
    const std::vector<double>& x0 = chart.point;

    auto delta_shift = [&](const std::vector<double>& xi_shift, double k_shift, std::size_t k) {
        std::vector<double> xi = x0, xt = x0;
        for (std::size_t m = 0; m < d; ++m) xi[m] += xi_shift[m];
        xt[k] += k_shift;
        return delta_at(model, chart, xi, xt, alpha_eval, T, q);
    };

    for (std::size_t i = 0; i < d; ++i) {
        const double hi = rel_step(step, x0[i]);
        for (std::size_t j = i; j < d; ++j) {
            const double hj = rel_step(step, x0[j]);
            for (std::size_t k = 0; k < d; ++k) {
                const double hk = rel_step(step, x0[k]);
                double third = 0.0, max_abs = 0.0;
                if (i == j) {
                    // (f(+h) - 2 f(0) + f(-h)) / h^2, central in xi_tilde_k.
                    for (int sk : {+1, -1}) {
                        double vals[3];
                        int t = 0;
                        for (int si : {+1, 0, -1}) {
                            std::vector<double> sh(d, 0.0);
                            sh[i] = si * hi;
                            vals[t] = delta_shift(sh, sk * hk, k);
                            max_abs = std::max(max_abs, std::fabs(vals[t]));
                            ++t;
                        }
                        third += sk * (vals[0] - 2.0 * vals[1] + vals[2]) / (hi * hi);
                    }
                    third /= 2.0 * hk;
                } else {
                    for (int si : {+1, -1})
                        for (int sj : {+1, -1})
                            for (int sk : {+1, -1}) {
                                std::vector<double> sh(d, 0.0);
                                sh[i] = si * hi;
                                sh[j] = sj * hj;
                                const double v = delta_shift(sh, sk * hk, k);
                                max_abs = std::max(max_abs, std::fabs(v));
                                third += si * sj * sk * v;
                            }
                    third /= 8.0 * hi * hj * hk;
                }
                check_stencil_magnitude(max_abs);
                conn.at(i, j, k) = -c * third;
                conn.at(j, i, k) = conn.at(i, j, k);
            }
        }
    }
    return conn;
}

double jeffreys_prior(const LevyModel& model, const CoordinateChart& chart, double T) {
    chart.validate();
    if (!(T > 0.0)) throw domain_error("jeffreys_prior: T must be > 0");
    LevyModel m = model_at(model, chart, chart.point);
    MetricMatrix full = closed_form_fisher_metric(m.measure, T);
    const std::size_t d = chart.dim();
    MetricMatrix g(d, T);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t a = side_of(chart.names[i]) == Side::plus ? 0 : 1;
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t bidx = side_of(chart.names[j]) == Side::plus ? 0 : 1;
            g.at(i, j) = full.at(a, bidx);
        }
    }
    const double det = g.determinant();
    if (!(det > 0.0)) throw domain_error("jeffreys_prior: metric is not positive definite");
    for (std::size_t i = 0; i < d; ++i)
        if (!(g.at(i, i) > 0.0))
            throw domain_error("jeffreys_prior: metric is not positive definite");
    return std::sqrt(det);
}

MetricField closed_form_metric_field(const LevyModel& model, const CoordinateChart& chart,
                                     double T) {
    chart.validate();
    LevyModel base = model;
    CoordinateChart ch = chart;
    return [base, ch, T](const std::vector<double>& point) {
        CoordinateChart local = ch;
        local.point = point;
        LevyModel m = model_at(base, local, point);
        MetricMatrix full = closed_form_fisher_metric(m.measure, T);
        const std::size_t d = local.dim();
        MetricMatrix g(d, T);
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t a = side_of(local.names[i]) == Side::plus ? 0 : 1;
            for (std::size_t j = 0; j < d; ++j) {
                const std::size_t b = side_of(local.names[j]) == Side::plus ? 0 : 1;
                g.at(i, j) = full.at(a, b);
            }
        }
        return g;
    };
}

ScalarField rho_function(const RhoSpec& rho, const CoordinateChart& chart) {
    int ip = -1, im = -1;
    for (std::size_t i = 0; i < chart.names.size(); ++i) {
        if (chart.names[i] == "lambda_plus") ip = static_cast<int>(i);
        if (chart.names[i] == "lambda_minus") im = static_cast<int>(i);
    }
    const double k = rho.k, c1 = rho.c1, c2 = rho.c2;
    auto need = [](int idx, const char* what) {
        if (idx < 0) throw domain_error(std::string("rho requires chart coordinate ") + what);
    };
    switch (rho.kind) {
        case RhoSpec::Kind::power_plus:
            need(ip, "lambda_plus");
            return [ip, k](const std::vector<double>& x) { return std::pow(x[ip], k); };
        case RhoSpec::Kind::power_minus:
            need(im, "lambda_minus");
            return [im, k](const std::vector<double>& x) { return std::pow(x[im], k); };
        case RhoSpec::Kind::linear_combo:
            need(ip, "lambda_plus");
            need(im, "lambda_minus");
            if (!(c1 > 0.0) || !(c2 > 0.0))
                throw domain_error("rho linear combination requires c1, c2 > 0");
            return [ip, im, k, c1, c2](const std::vector<double>& x) {
                return c1 * std::pow(x[ip], k) + c2 * std::pow(x[im], k);
            };
        case RhoSpec::Kind::product:
            need(ip, "lambda_plus");
            need(im, "lambda_minus");
            return [ip, im, k](const std::vector<double>& x) {
                return std::pow(x[ip] * x[im], k);
            };
    }
    throw domain_error("rho_function: unknown kind");
}

double laplace_beltrami(const MetricField& metric, const ScalarField& rho,
                        const std::vector<double>& point,
                        const std::vector<std::pair<double, double>>& bounds) {
    const std::size_t d = point.size();
    if (d == 0) throw domain_error("laplace_beltrami: empty point");
    std::vector<double> h(d);
    for (std::size_t i = 0; i < d; ++i) {
        h[i] = 1e-4 * std::fabs(point[i]);
        if (h[i] == 0.0) throw domain_error("laplace_beltrami: zero coordinate");
    }
    auto inside = [&](const std::vector<double>& x) {
        for (std::size_t i = 0; i < d; ++i) {
            const double lo = bounds.empty() ? 0.0 : bounds[i].first;
            const double hi =
                bounds.empty() ? std::numeric_limits<double>::infinity() : bounds[i].second;
            if (!(x[i] > lo) || !(x[i] < hi)) return false;
        }
        return true;
    };
    // The full stencil reaches point +- h_i +- h_j.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<double> probe = point;
            probe[i] += h[i];
            probe[j] += h[j];
            std::vector<double> probe2 = point;
            probe2[i] -= h[i];
            probe2[j] -= h[j];
            if (!inside(probe) || !inside(probe2))
                throw domain_error("laplace_beltrami: stencil leaves chart bounds");
        }

    auto drho = [&](const std::vector<double>& x, std::size_t j) {
        std::vector<double> xp = x, xm = x;
        xp[j] += h[j];
        xm[j] -= h[j];
        return (rho(xp) - rho(xm)) / (2.0 * h[j]);
    };
    auto flux = [&](const std::vector<double>& x, std::size_t i) {
        MetricMatrix g = metric(x);
        const double det = g.determinant();
        if (!(det > 0.0)) throw domain_error("laplace_beltrami: metric not positive definite");
        MetricMatrix ginv = g.inverse();
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += ginv.at(i, j) * drho(x, j);
        return std::sqrt(det) * s;
    };

    MetricMatrix g0 = metric(point);
    const double det0 = g0.determinant();
    if (!(det0 > 0.0)) throw domain_error("laplace_beltrami: metric not positive definite");
    double div = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> xp = point, xm = point;
        xp[i] += h[i];
        xm[i] -= h[i];
        div += (flux(xp, i) - flux(xm, i)) / (2.0 * h[i]);
    }
    return div / std::sqrt(det0);
}

namespace {

double rel_deviation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw domain_error("deviation: shape mismatch");
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        scale = std::max({scale, std::fabs(a[i]), std::fabs(b[i])});
    if (scale == 0.0) return 0.0;
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double m = std::max(std::fabs(a[i]), std::fabs(b[i]));
        if (m <= 1e-9 * scale) continue;  // both numerically zero
        dev = std::max(dev, std::fabs(a[i] - b[i]) / m);
    }
    return dev;
}

}  // namespace

double metric_rel_deviation(const MetricMatrix& a, const MetricMatrix& b) {
    return rel_deviation(a.data, b.data);
}

double connection_rel_deviation(const ConnectionTensor& a, const ConnectionTensor& b) {
    return rel_deviation(a.data, b.data);
}

ScanReport superharmonic_scan(const LevyMeasure& family_template,
                              const std::vector<double>& lambda_grid, const RhoSpec& rho,
                              double T) {
    if (lambda_grid.empty()) throw precondition_error("superharmonic_scan: empty grid");
    if (rho.k == 0.0)
        throw precondition_error("superharmonic_scan: k = 0 gives a constant rho (Delta rho = 0)");
    if (family_template.family() == MeasureFamily::vg &&
        !(rho.k > -1.0 && rho.k < 1.0))
        throw precondition_error("superharmonic_scan: VG candidates require k in (-1, 1)");
    for (double l : lambda_grid)
        if (!(l > 0.0)) throw precondition_error("superharmonic_scan: grid rates must be > 0");

    CoordinateChart chart = CoordinateChart::lambda_chart(1.0, 1.0);
    LevyModel base(0.0, 0.0, family_template);
    MetricField field = closed_form_metric_field(base, chart, T);
    ScalarField rho_fn = rho_function(rho, chart);

    ScanReport rep;
    rep.all_negative = true;
    bool first = true;
    for (double lp : lambda_grid)
        for (double lm : lambda_grid) {
            const std::vector<double> pt{lp, lm};
            const double v = laplace_beltrami(field, rho_fn, pt);
            ++rep.points_evaluated;
            if (first || v > rep.worst_value) {
                rep.worst_value = v;
                rep.worst_point = pt;
                first = false;
            }
            if (!(v < 0.0)) rep.all_negative = false;
        }
    return rep;
}

}  // namespace levyig
