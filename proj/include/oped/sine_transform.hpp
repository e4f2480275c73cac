#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oped/sinogram.hpp"

namespace oped {

/// Per-view discrete sine transforms lambda[k][nu], the working representation
/// of the reconstruction. Columns nu < missing hold no data until completion.
struct SineCoefficients {
    int n = 0;        // N
    int rays = 0;     // N_d (frequency dimension)
    int views = 0;    // V
    int missing = 0;  // r
    Parity parity = Parity::even_half_circle;
    Eigen::MatrixXd lambda;                         // rays x views
    std::vector<std::uint8_t> ill_conditioned;      // per-k flags, filled by completion
    bool complete() const { return missing == 0; }
    double view_angle(int nu) const { return std::numbers::pi * nu / views; }
};

/// The N_d x N_d sine kernel S(k, j) = sin((k+1) psi_j).
inline Eigen::MatrixXd sine_kernel(int rays) {
    Eigen::MatrixXd s(rays, rays);
    for (int k = 0; k < rays; ++k)
        for (int j = 0; j < rays; ++j)
            s(k, j) = std::sin((k + 1) * (2 * j + 1) * std::numbers::pi / (2.0 * rays));
    return s;
}

/// lambda[k][nu] = (1/N_d) sum_j sin((k+1) psi_j) g[nu][j] for an arbitrary
/// view-major data matrix (views x rays). Computed as one dense product;
/// agrees with direct per-entry summation to rounding.
inline Eigen::MatrixXd sine_coefficient_matrix(const Eigen::MatrixXd& g) {
    const int rays = static_cast<int>(g.cols());
    return (sine_kernel(rays) * g.transpose()) / static_cast<double>(rays);
}

inline SineCoefficients sine_coefficients(const Sinogram& s) {
    s.geometry.validate();
    SineCoefficients c;
    c.n = s.geometry.n;
    c.rays = s.geometry.rays;
    c.views = s.geometry.views();
    c.missing = s.geometry.missing;
    c.parity = s.geometry.parity;
    c.lambda = sine_coefficient_matrix(s.values);
    if (c.missing > 0) c.lambda.leftCols(c.missing).setZero();
    return c;
}

/// Largest violation of lambda[k][nu + N/2] = (-1)^k lambda[k][nu] for a
/// coefficient matrix computed from a full-circle even-N sinogram (k x N).
inline double half_circle_symmetry_residual(const Eigen::MatrixXd& lambda_full_circle) {
    const int n = static_cast<int>(lambda_full_circle.cols());
    if (n % 2 != 0) throw std::invalid_argument("half_circle_symmetry: N must be even");
    const int half = n / 2;
    double worst = 0.0;
    for (int k = 0; k < lambda_full_circle.rows(); ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (int nu = 0; nu < half; ++nu) {
            const double diff =
                std::abs(lambda_full_circle(k, nu + half) - sign * lambda_full_circle(k, nu));
            if (diff > worst) worst = diff;
        }
    }
    return worst;
}

inline bool half_circle_symmetry_check(const Eigen::MatrixXd& lambda_full_circle) {
    return half_circle_symmetry_residual(lambda_full_circle) <= 1e-10;
}

}  // namespace oped
