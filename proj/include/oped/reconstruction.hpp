#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oped/filter.hpp"
#include "oped/parallel.hpp"
#include "oped/sine_transform.hpp"

namespace oped {

/// Square reconstruction grid over [-1, 1]^2. Pixel (i, j) is centered at
/// x = (2j+1)/M - 1, y = 1 - (2i+1)/M (row 0 at the top); values outside the
/// unit-disk mask are zero.
struct ReconImage {
    int size = 0;
    Eigen::MatrixXd values;                       // size x size
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;

    static void pixel_center(int m, int i, int j, double& x, double& y) {
        x = (2.0 * j + 1.0) / m - 1.0;
        y = 1.0 - (2.0 * i + 1.0) / m;
    }
};

/// Evaluates the filtered expansion
///   factor * sum_k sum_nu eta(k/N_d) lambda[k][nu] (k+1) U_k(x cos phi_nu + y sin phi_nu)
/// at all masked pixel centers of an M x M grid. Pixel rows are evaluated in
/// parallel; every pixel accumulates in a fixed (nu outer, k inner) order, so
/// the result is independent of the thread count.
inline ReconImage evaluate_expansion(const Eigen::MatrixXd& lambda, const std::vector<double>& angles,
                                     double factor, const Filter& filter, int m) {
    filter.validate();
    if (m < 1) throw std::invalid_argument("evaluate_expansion: grid size must be >= 1");
    const int rays = static_cast<int>(lambda.rows());
    const int views = static_cast<int>(lambda.cols());
    if (rays < 1 || views < 1) throw std::invalid_argument("evaluate_expansion: empty coefficient set");
    if (static_cast<int>(angles.size()) != views)
        throw std::invalid_argument("evaluate_expansion: angle count does not match lambda");

    // Weights w[k][nu] = factor * eta(k/N_d) * (k+1) * lambda[k][nu], column-major
    // per view for the contiguous inner loop.
    Eigen::MatrixXd weights(rays, views);
    for (int k = 0; k < rays; ++k) {
        const double wk = factor * eta(filter, double(k) / double(rays)) * double(k + 1);
        for (int nu = 0; nu < views; ++nu) weights(k, nu) = wk * lambda(k, nu);
    }
    std::vector<double> cosines(static_cast<std::size_t>(views)), sines(static_cast<std::size_t>(views));
    for (int nu = 0; nu < views; ++nu) {
        cosines[static_cast<std::size_t>(nu)] = std::cos(angles[static_cast<std::size_t>(nu)]);
        sines[static_cast<std::size_t>(nu)] = std::sin(angles[static_cast<std::size_t>(nu)]);
    }

    ReconImage img;
    img.size = m;
    img.values = Eigen::MatrixXd::Zero(m, m);
    img.mask.setConstant(m, m, false);

    parallel_for(0, m, [&](std::ptrdiff_t i) {
        for (int j = 0; j < m; ++j) {
            double x, y;
            ReconImage::pixel_center(m, static_cast<int>(i), j, x, y);
            if (x * x + y * y > 1.0) continue;
            img.mask(i, j) = true;
            double acc = 0.0;
            for (int nu = 0; nu < views; ++nu) {
                double t = x * cosines[static_cast<std::size_t>(nu)] + y * sines[static_cast<std::size_t>(nu)];
                if (t > 1.0) {
                    if (t > 1.0 + kUnitIntervalSlack)
                        throw std::domain_error("evaluate_expansion: projection outside [-1, 1]");
                    t = 1.0;
                } else if (t < -1.0) {
                    if (t < -1.0 - kUnitIntervalSlack)
                        throw std::domain_error("evaluate_expansion: projection outside [-1, 1]");
                    t = -1.0;
                }
                const double* w = weights.col(nu).data();
                // U_k recurrence fused with the weighted accumulation.
                double u_prev = 1.0;          // U_0
                double u_cur = 2.0 * t;       // U_1
                acc += w[0];
                for (int k = 1; k < rays; ++k) {
                    acc += w[k] * u_cur;
                    const double u_next = 2.0 * t * u_cur - u_prev;
                    u_prev = u_cur;
                    u_cur = u_next;
                }
            }
            img.values(i, j) = acc;
        }
    });
    return img;
}

/// OPED reconstruction of a complete coefficient set on an M x M grid. Views
/// sit at pi nu / V and the leading factor is 1/V (equals 2/N in the even
/// pipeline and 1/N in the odd pipeline).
inline ReconImage oped_evaluate(const SineCoefficients& coeffs, const Filter& filter, int m) {
    if (!coeffs.complete())
        throw std::invalid_argument("oped_evaluate: coefficient set has missing views; complete it first");
    std::vector<double> angles(static_cast<std::size_t>(coeffs.views));
    for (int nu = 0; nu < coeffs.views; ++nu) angles[static_cast<std::size_t>(nu)] = coeffs.view_angle(nu);
    return evaluate_expansion(coeffs.lambda, angles, 1.0 / double(coeffs.views), filter, m);
}

/// Max |difference| between the full-circle evaluation (angles 2 pi nu / N)
/// and the half-circle evaluation (angles pi nu / N) of an odd-N data set.
/// The two coefficient matrices must be computed from sinograms sampled at
/// the respective angle sets.
inline double parity_equivalence(const Eigen::MatrixXd& lambda_phi, const Eigen::MatrixXd& lambda_gamma,
                                 const Filter& filter, int m) {
    const int n = static_cast<int>(lambda_phi.cols());
    if (n % 2 == 0) throw std::invalid_argument("parity_equivalence: N must be odd");
    if (lambda_gamma.cols() != n || lambda_gamma.rows() != lambda_phi.rows())
        throw std::invalid_argument("parity_equivalence: coefficient shapes differ");
    std::vector<double> phi(static_cast<std::size_t>(n)), gamma(static_cast<std::size_t>(n));
    for (int nu = 0; nu < n; ++nu) {
        phi[static_cast<std::size_t>(nu)] = 2.0 * std::numbers::pi * nu / n;
        gamma[static_cast<std::size_t>(nu)] = std::numbers::pi * nu / n;
    }
    const ReconImage a = evaluate_expansion(lambda_phi, phi, 1.0 / n, filter, m);
    const ReconImage b = evaluate_expansion(lambda_gamma, gamma, 1.0 / n, filter, m);
    return (a.values - b.values).cwiseAbs().maxCoeff();
}

}  // namespace oped
