#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oped/completion.hpp"
#include "oped/parallel.hpp"
#include "oped/spectral.hpp"

namespace oped {

/// Which system-size convention a condition report uses for an even data set
/// of size N: the half convention analyzes the N/2-view systems the pipeline
/// actually solves (k < N/2, eta(2k/N)); the full convention treats the same
/// angular grid as an N-view system (k < N, eta(k/N)).
enum class TableConvention { half, full };

inline const char* to_string(TableConvention c) {
    return c == TableConvention::half ? "half" : "full";
}

struct SpectralRow {
    int k = 0;
    double mu_min = 0.0;
    double mu_max = 0.0;
    double cond = 0.0;
    bool infinite = false;
    bool solver_failed = false;
};

struct SpectralReport {
    int n = 0;  // data-set N
    int r = 0;
    double tau = 0.0;
    double beta = 0.0;
    std::string filter_description;
    std::string convention;
    std::vector<SpectralRow> per_k;
    double max_condition = 0.0;
    bool max_infinite = false;
    double coverage_degrees = 0.0;
};

/// Spectra of all per-frequency system matrices for one (tau, beta) choice.
/// Eigensolver failures are recorded on the affected row and do not abort the
/// sweep over k.
inline SpectralReport condition_table_single(int n, int r, const Filter& filter,
                                             TableConvention convention = TableConvention::half) {
    if (n <= 0 || n % 2 != 0) throw std::invalid_argument("condition_table: N must be even and positive");
    if (r < 1) throw std::invalid_argument("condition_table: r must be >= 1");
    filter.validate();
    const int n_sys = convention == TableConvention::half ? n / 2 : n;
    const AngleConvention angles = convention == TableConvention::half ? AngleConvention::half_circle
                                                                       : AngleConvention::full_circle;
    SpectralReport report;
    report.n = n;
    report.r = r;
    report.tau = filter.tau;
    report.beta = filter.beta;
    report.filter_description = filter.describe();
    report.convention = to_string(convention);
    report.coverage_degrees = 180.0 - 360.0 * r / n;
    report.per_k.assign(static_cast<std::size_t>(n_sys), SpectralRow{});
    parallel_for(0, n_sys, [&](std::ptrdiff_t k) {
        SpectralRow& row = report.per_k[static_cast<std::size_t>(k)];
        row.k = static_cast<int>(k);
        try {
            const Eigen::MatrixXd a = completion_matrix<double>(MatrixKind::A, static_cast<int>(k), r,
                                                                n_sys, angles, &filter);
            const Eigen::VectorXd mu = symmetric_eigenvalues<double>(a);
            row.mu_min = mu(0);
            row.mu_max = mu(mu.size() - 1);
            row.infinite = row.mu_min <= 1e-13 * row.mu_max;
            row.cond = row.infinite ? 0.0 : row.mu_max / row.mu_min;
        } catch (const std::exception&) {
            row.solver_failed = true;
            row.infinite = true;
        }
    });
    for (const SpectralRow& row : report.per_k) {
        if (row.infinite) report.max_infinite = true;
        else if (row.cond > report.max_condition) report.max_condition = row.cond;
    }
    return report;
}

inline std::vector<SpectralReport> condition_table(int n, int r,
                                                   const std::vector<std::pair<double, double>>& tau_beta,
                                                   TableConvention convention = TableConvention::half,
                                                   FilterProfile profile = FilterProfile::plateau,
                                                   int order = 3) {
    std::vector<SpectralReport> reports;
    reports.reserve(tau_beta.size());
    for (const auto& [tau, beta] : tau_beta) {
        Filter f;
        f.tau = tau;
        f.beta = beta;
        f.profile = profile;
        f.order = order;
        reports.push_back(condition_table_single(n, r, f, convention));
    }
    return reports;
}

/// The (tau, beta) grid used by the standard sweep.
inline std::vector<std::pair<double, double>> sweep_grid() {
    return {{0.0, 0.5}, {0.0, 0.9}, {0.1, 0.5}, {0.1, 0.9}, {0.2, 0.5}, {0.2, 0.9}};
}

}  // namespace oped
