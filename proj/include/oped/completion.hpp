#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "oped/chebyshev.hpp"
#include "oped/common.hpp"
#include "oped/filter.hpp"
#include "oped/sine_transform.hpp"
#include "oped/spectral.hpp"

namespace oped {

enum class MatrixKind { B, M, A };

/// Angular grid the matrix entries are built on. The reconstruction pipelines
/// place views at spacing pi / n_sys over the half circle; the full-circle
/// grid (spacing 2 pi / n_sys) matches the classical matrix identities but is
/// only usable while no two views coincide modulo pi (r <= n_sys / 2).
enum class AngleConvention { half_circle, full_circle };

namespace detail {

template <typename Scalar>
Scalar angle_spacing(int n_sys, AngleConvention conv) {
    const Scalar base = std::numbers::pi_v<Scalar> / Scalar(n_sys);
    return conv == AngleConvention::half_circle ? base : Scalar(2) * base;
}

// U_k(cos(delta * d)) for d = 0 .. count-1. Entries are evaluated through the
// Chebyshev form, which stays finite where the sine quotient degenerates.
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> u_profile(int k, int count, Scalar delta) {
    Eigen::Vector<Scalar, Eigen::Dynamic> u(count);
    for (int d = 0; d < count; ++d) u[d] = chebyshev_u(k, std::cos(delta * Scalar(d)));
    return u;
}

}  // namespace detail

/// The r x r symmetric Toeplitz matrices of the completion systems:
///   B: b_{mu,nu} = U_k(cos(phi_mu - phi_nu)),  diagonal k+1
///   M: I - B / n_sys
///   A: I - eta(k / n_d) B / n_sys
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> completion_matrix(
    MatrixKind kind, int k, int r, int n_sys, AngleConvention conv = AngleConvention::half_circle,
    const FilterT<Scalar>* filter = nullptr, int n_d = -1) {
    if (r <= 0) throw std::invalid_argument("completion_matrix: r must be >= 1");
    if (n_sys <= 0) throw std::invalid_argument("completion_matrix: n_sys must be >= 1");
    if (k < 0 || k > n_sys - 1)
        throw std::invalid_argument("completion_matrix: k out of range [0, n_sys)");
    if (kind == MatrixKind::A && filter == nullptr)
        throw std::invalid_argument("completion_matrix: kind A requires a filter");
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Scalar delta = detail::angle_spacing<Scalar>(n_sys, conv);
    const auto u = detail::u_profile(k, r, delta);
    Mat b(r, r);
    for (int mu = 0; mu < r; ++mu)
        for (int nu = 0; nu < r; ++nu) b(mu, nu) = u[std::abs(mu - nu)];
    if (kind == MatrixKind::B) return b;
    const Scalar scale = kind == MatrixKind::M
                             ? Scalar(1) / Scalar(n_sys)
                             : eta(*filter, Scalar(k) / Scalar(n_d > 0 ? n_d : n_sys)) / Scalar(n_sys);
    Mat m = -scale * b;
    m.diagonal().array() += Scalar(1);
    return m;
}

/// One per-frequency linear system A x = rhs for the missing coefficients.
struct CompletionSystem {
    int k = 0;
    Eigen::MatrixXd matrix;    // kind A, r x r
    Eigen::VectorXd rhs;       // length r
    Eigen::VectorXd solution;  // filled by solve_system
    bool solved = false;
    bool ill_conditioned = false;
    double residual = 0.0;
};

/// Hand-rolled Cholesky with an explicit pivot floor: returns false as soon as
/// a pivot drops to <= pivot_floor (matrix treated as numerically indefinite).
inline bool cholesky_factor(const Eigen::MatrixXd& a, Eigen::MatrixXd& lower, double pivot_floor) {
    const Eigen::Index n = a.rows();
    lower.setZero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = a(j, j) - lower.row(j).head(j).squaredNorm();
        if (d <= pivot_floor) return false;
        lower(j, j) = std::sqrt(d);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double off = a(i, j) - lower.row(j).head(j).dot(lower.row(i).head(j));
            lower(i, j) = off / lower(j, j);
        }
    }
    return true;
}

/// Solves the system in place. Primary path is the SPD factorization; if a
/// pivot falls below 1e-13 * ||A||_F the solve falls back to a spectral
/// pseudo-inverse that discards eigencomponents below 1e-12 * mu_max and the
/// system is flagged ill-conditioned. The flag is also raised when the final
/// residual exceeds 1e-8 * (1 + ||rhs||_inf).
inline Eigen::VectorXd solve_system(CompletionSystem& sys) {
    const Eigen::Index r = sys.matrix.rows();
    if (sys.matrix.cols() != r) throw std::invalid_argument("solve_system: matrix not square");
    if (sys.rhs.size() != r) throw std::invalid_argument("solve_system: dimension mismatch");
    const double sym = (sys.matrix - sys.matrix.transpose()).cwiseAbs().maxCoeff();
    if (sym > 1e-12 * (1.0 + sys.matrix.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("solve_system: matrix not symmetric");

    const double norm = sys.matrix.norm();
    Eigen::MatrixXd lower;
    if (cholesky_factor(sys.matrix, lower, 1e-13 * norm)) {
        // Forward / backward substitution.
        Eigen::VectorXd y(r);
        for (Eigen::Index i = 0; i < r; ++i)
            y(i) = (sys.rhs(i) - lower.row(i).head(i).dot(y.head(i))) / lower(i, i);
        Eigen::VectorXd x(r);
        for (Eigen::Index i = r - 1; i >= 0; --i)
            x(i) = (y(i) - lower.col(i).tail(r - i - 1).dot(x.tail(r - i - 1))) / lower(i, i);
        sys.solution = std::move(x);
        sys.ill_conditioned = false;
    } else {
        Eigen::MatrixXd vectors;
        const Eigen::VectorXd mu = symmetric_eigenvalues<double>(sys.matrix, &vectors);
        const double cutoff = 1e-12 * mu.cwiseAbs().maxCoeff();
        Eigen::VectorXd x = Eigen::VectorXd::Zero(r);
        for (Eigen::Index i = 0; i < r; ++i) {
            if (mu(i) <= cutoff) continue;
            x += (vectors.col(i).dot(sys.rhs) / mu(i)) * vectors.col(i);
        }
        sys.solution = std::move(x);
        sys.ill_conditioned = true;
    }
    sys.residual = (sys.matrix * sys.solution - sys.rhs).cwiseAbs().maxCoeff();
    if (sys.residual > 1e-8 * (1.0 + sys.rhs.cwiseAbs().maxCoeff())) sys.ill_conditioned = true;
    sys.solved = true;
    return sys.solution;
}

/// Builds the system for frequency k from the available views of lambda:
///   rhs[mu] = sum_{nu=r}^{V-1} a^{(k)}_{mu,nu} lambda[k][nu],
/// with a^{(k)}_{mu,nu} = eta(k/N_d) U_k(cos(pi (mu-nu) / V)) / V.
inline CompletionSystem assemble_system(const SineCoefficients& c, int k, const Filter& filter) {
    const int r = c.missing;
    if (r <= 0) throw std::invalid_argument("assemble_system: nothing to solve (r = 0)");
    if (k < 0 || k >= c.rays) throw std::invalid_argument("assemble_system: k out of range");
    const int v = c.views;
    const double scale = eta(filter, double(k) / double(c.rays)) / double(v);
    const auto u = detail::u_profile<double>(k, v, std::numbers::pi / double(v));
    CompletionSystem sys;
    sys.k = k;
    sys.matrix.setZero(r, r);
    for (int mu = 0; mu < r; ++mu)
        for (int nu = 0; nu < r; ++nu)
            sys.matrix(mu, nu) = (mu == nu ? 1.0 : 0.0) - scale * u[std::abs(mu - nu)];
    sys.rhs.setZero(r);
    for (int mu = 0; mu < r; ++mu) {
        double acc = 0.0;
        for (int nu = r; nu < v; ++nu) acc += u[nu - mu] * c.lambda(k, nu);
        sys.rhs(mu) = scale * acc;
    }
    return sys;
}

/// Recovers the missing leading views for every frequency and returns the
/// completed coefficient set. Requires tau < 1 - r / V (the positive
/// definiteness bound of the system matrices); r = 0 input is returned as-is.
inline SineCoefficients complete_coefficients(const SineCoefficients& partial, const Filter& filter) {
    filter.validate();
    SineCoefficients out = partial;
    const int r = partial.missing;
    if (r == 0) {
        out.ill_conditioned.assign(static_cast<std::size_t>(partial.rays), 0);
        return out;
    }
    const int v = partial.views;
    const double bound = 1.0 - double(r) / double(v);
    if (!(filter.tau < bound))
        throw precondition_error(
            "completion systems are singular: tau must satisfy tau < 1 - r/" +
            std::to_string(v) + " = " + std::to_string(bound) + " (tau = " +
            std::to_string(filter.tau) + ", r = " + std::to_string(r) +
            "); a margin tau <= " + std::to_string(bound - 0.05) + " is recommended");
    out.ill_conditioned.assign(static_cast<std::size_t>(partial.rays), 0);
    for (int k = 0; k < partial.rays; ++k) {
        CompletionSystem sys = assemble_system(partial, k, filter);
        solve_system(sys);
        out.lambda.block(k, 0, 1, r) = sys.solution.transpose();
        out.ill_conditioned[static_cast<std::size_t>(k)] = sys.ill_conditioned ? 1 : 0;
    }
    out.missing = 0;
    return out;
}

}  // namespace oped
