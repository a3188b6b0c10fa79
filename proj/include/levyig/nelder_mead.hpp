#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace levyig {

struct NelderMeadOptions {
    int max_iterations = 2000;
    double diameter_tol = 1e-6;  // relative to max(1, |x|)
    double spread_tol = 1e-8;    // absolute objective spread
    double initial_step = 0.05;  // relative initial simplex edge
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Bounded downhill-simplex minimizer; evaluation points are clamped into
/// [lower, upper].
inline NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
    const std::vector<double>& lower, const std::vector<double>& upper,
    const NelderMeadOptions& opt = {}) {
    const std::size_t n = x0.size();
    auto clamp = [&](std::vector<double>& x) {
        for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
    };
    clamp(x0);

    std::vector<std::vector<double>> v(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        double step = opt.initial_step * std::max(1.0, std::fabs(x0[i]));
        if (x0[i] + step > upper[i]) step = -step;
        v[i + 1][i] += step;
        clamp(v[i + 1]);
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(v[i]);

    NelderMeadResult out;
    auto order = [&] {
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j)
                if (fv[j] < fv[i]) {
                    std::swap(fv[i], fv[j]);
                    std::swap(v[i], v[j]);
                }
    };

    for (out.iterations = 0; out.iterations < opt.max_iterations; ++out.iterations) {
        order();
        double diameter = 0.0, scale = 1.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t d = 0; d < n; ++d) {
                diameter = std::max(diameter, std::fabs(v[i][d] - v[0][d]));
                scale = std::max(scale, std::fabs(v[i][d]));
            }
        if (diameter < opt.diameter_tol * scale && std::fabs(fv[n] - fv[0]) < opt.spread_tol) {
            out.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < n; ++d) centroid[d] += v[i][d] / double(n);

        auto point = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d)
                p[d] = centroid[d] + coef * (centroid[d] - v[n][d]);
            clamp(p);
            return p;
        };

        std::vector<double> xr = point(1.0);
        const double fr = f(xr);
        if (fr < fv[0]) {
            std::vector<double> xe = point(2.0);
            const double fe = f(xe);
            if (fe < fr) {
                v[n] = xe;
                fv[n] = fe;
            } else {
                v[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            v[n] = xr;
            fv[n] = fr;
        } else {
            std::vector<double> xc = point(fr < fv[n] ? 0.5 : -0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, fv[n])) {
                v[n] = xc;
                fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {  // shrink toward the best vertex
                    for (std::size_t d = 0; d < n; ++d)
                        v[i][d] = v[0][d] + 0.5 * (v[i][d] - v[0][d]);
                    fv[i] = f(v[i]);
                }
            }
        }
    }
    order();
    out.x = v[0];
    out.f = fv[0];
    return out;
}

}  // namespace levyig
