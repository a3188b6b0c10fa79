#pragma once

#include <string>
#include <utility>
#include <vector>

#include "levyig/errors.hpp"

namespace levyig {

/// Coordinate system xi on the parameter manifold. Names index into the
/// model's tempering rates: "lambda_plus" / "lambda_minus".
struct CoordinateChart {
    std::vector<std::string> names;
    std::vector<double> point;
    std::vector<std::pair<double, double>> bounds;  // open intervals; empty = (0, inf)

    static CoordinateChart lambda_chart(double lambda_plus, double lambda_minus);
    std::size_t dim() const { return names.size(); }
    void validate() const;
    std::pair<double, double> bound(std::size_t i) const;
};

/// Fisher information matrix g_ij at a chart point.
struct MetricMatrix {
    std::size_t dim = 0;
    double horizon = 1.0;
    std::vector<double> data;  // row-major dim x dim

    MetricMatrix() = default;
    MetricMatrix(std::size_t d, double t) : dim(d), horizon(t), data(d * d, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return data[i * dim + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * dim + j]; }
    double determinant() const;
    MetricMatrix inverse() const;  // rejects condition numbers above 1e12
};

/// alpha-connection components Gamma_{ij,k}.
struct ConnectionTensor {
    std::size_t dim = 0;
    double alpha = 0.0;
    std::vector<double> data;  // row-major dim^3

    ConnectionTensor() = default;
    ConnectionTensor(std::size_t d, double a) : dim(d), alpha(a), data(d * d * d, 0.0) {}
    double& at(std::size_t i, std::size_t j, std::size_t k) {
        return data[(i * dim + j) * dim + k];
    }
    double at(std::size_t i, std::size_t j, std::size_t k) const {
        return data[(i * dim + j) * dim + k];
    }
};

/// Candidate prior-ratio functions for the superharmonicity scan.
struct RhoSpec {
    enum class Kind { power_plus, power_minus, linear_combo, product };
    Kind kind = Kind::power_plus;
    double k = 0.0;
    double c1 = 1.0;
    double c2 = 1.0;
};

}  // namespace levyig
