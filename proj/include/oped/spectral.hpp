#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace oped {

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending. Deterministic: fixed sweep order, no pivot searching. Sweeps
/// stop once the off-diagonal Frobenius norm falls below 1e-13 * ||A||_F;
/// failure to converge within 60 sweeps throws. If eigenvectors is non-null
/// it receives the rotation product (columns match the sorted eigenvalues).
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> symmetric_eigenvalues(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>* eigenvectors = nullptr) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
    const Eigen::Index n = a.rows();
    if (n < 1) throw std::invalid_argument("symmetric_eigenvalues: empty matrix");
    if (a.cols() != n) throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
    const Scalar norm = a.norm();
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * (Scalar(1) + norm))
        throw std::invalid_argument("symmetric_eigenvalues: matrix not symmetric");

    Mat v;
    if (eigenvectors) v = Mat::Identity(n, n);
    const Scalar stop = Scalar(1e-13) * norm;

    auto off_norm = [&a, n]() {
        Scalar s = Scalar(0);
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) s += a(p, q) * a(p, q);
        using std::sqrt;
        return sqrt(Scalar(2) * s);
    };

    bool converged = (n == 1) || off_norm() <= stop;
    for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                if (apq == Scalar(0)) continue;
                using std::abs;
                using std::sqrt;
                const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
                const Scalar t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                                 (abs(theta) + sqrt(Scalar(1) + theta * theta));
                const Scalar c = Scalar(1) / sqrt(Scalar(1) + t * t);
                const Scalar s = t * c;
                // Apply the rotation J(p, q, theta) on both sides.
                for (Eigen::Index i = 0; i < n; ++i) {
                    const Scalar aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (Eigen::Index i = 0; i < n; ++i) {
                    const Scalar api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                if (eigenvectors) {
                    for (Eigen::Index i = 0; i < n; ++i) {
                        const Scalar vip = v(i, p), viq = v(i, q);
                        v(i, p) = c * vip - s * viq;
                        v(i, q) = s * vip + c * viq;
                    }
                }
            }
        }
        converged = off_norm() <= stop;
    }
    if (!converged) throw std::runtime_error("symmetric_eigenvalues: Jacobi sweeps did not converge");

    Vec values = a.diagonal();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&values](Eigen::Index l, Eigen::Index r) { return values(l) < values(r); });
    Vec sorted(n);
    for (Eigen::Index i = 0; i < n; ++i) sorted(i) = values(order[static_cast<std::size_t>(i)]);
    if (eigenvectors) {
        eigenvectors->resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) eigenvectors->col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return sorted;
}

/// Ratio of extreme eigenvalues; flagged infinite at the double-precision
/// noise floor mu_min <= 1e-13 * mu_max.
struct ConditionNumber {
    double value = 1.0;
    bool infinite = false;
};

inline ConditionNumber condition_number(const Eigen::MatrixXd& a) {
    const Eigen::VectorXd mu = symmetric_eigenvalues<double>(a);
    const double lo = mu(0), hi = mu(mu.size() - 1);
    if (lo <= 1e-13 * hi) return {0.0, true};
    return {hi / lo, false};
}

/// Slepian's sinc-kernel Toeplitz matrix C_Phi with entries
/// sin(2 (mu - nu) Phi) / ((mu - nu) pi) and diagonal 2 Phi / pi.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> slepian_matrix(Scalar phi, int r) {
    if (!(phi > Scalar(0)) || !(phi < std::numbers::pi_v<Scalar> / Scalar(2)))
        throw std::domain_error("slepian_matrix: Phi must lie in (0, pi/2)");
    if (r < 1) throw std::invalid_argument("slepian_matrix: r must be >= 1");
    using std::sin;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> c(r, r);
    for (int mu = 0; mu < r; ++mu) {
        for (int nu = 0; nu < r; ++nu) {
            const int d = mu - nu;
            c(mu, nu) = d == 0 ? Scalar(2) * phi / std::numbers::pi_v<Scalar>
                               : sin(Scalar(2 * d) * phi) / (Scalar(d) * std::numbers::pi_v<Scalar>);
        }
    }
    return c;
}

}  // namespace oped
