#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oped/completion.hpp"
#include "oped/io.hpp"
#include "oped/polynomial.hpp"
#include "oped/reconstruction.hpp"
#include "oped/report.hpp"

namespace oped {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_precondition = 2,
    exit_verification = 3,
};

struct SinogramOptions {
    std::string phantom = "shepp-logan";  // shepp-logan | disk | path to file
    int n = 502;
    int rays = 0;  // 0 -> N/2 default
    int missing = 0;
    Parity parity = Parity::even_half_circle;
    double sigma = 0.0;
    std::optional<std::int64_t> seed;
    std::filesystem::path out;
};

struct ReconstructOptions {
    std::filesystem::path input;
    double tau = 0.0;
    double beta = 0.9;
    FilterProfile profile = FilterProfile::plateau;
    int order = 3;
    int grid = 256;
    double window_lo = 0.0;
    double window_hi = 1.05;
    std::filesystem::path out;
    std::filesystem::path metrics;         // optional
    std::string reference = "shepp-logan"; // phantom for metrics
};

struct CondReportOptions {
    int n = 502;
    int missing = 21;
    double tau = 0.0;
    double beta = 0.9;
    FilterProfile profile = FilterProfile::plateau;
    int order = 3;
    bool sweep = false;
    TableConvention convention = TableConvention::half;
    std::filesystem::path out;
    std::filesystem::path json;  // optional; defaults to out + ".json"
};

inline EllipsePhantom resolve_phantom(const std::string& name) {
    if (name == "shepp-logan") return phantoms::shepp_logan();
    if (name == "disk") return phantoms::unit_disk();
    if (std::filesystem::exists(name)) return read_phantom_file(name);
    throw std::invalid_argument("unknown phantom '" + name + "' (expected shepp-logan, disk, or a file path)");
}

inline int cmd_sinogram(const SinogramOptions& opt, std::ostream& err = std::cerr) {
    try {
        SinogramGeometry geom;
        geom.n = opt.n;
        geom.rays = opt.rays > 0 ? opt.rays : default_rays(opt.n);
        geom.missing = opt.missing;
        geom.parity = opt.parity;
        geom.validate();
        const EllipsePhantom phantom = resolve_phantom(opt.phantom);
        Sinogram s = sample_sinogram(phantom, geom);
        if (opt.sigma > 0.0) {
            if (!opt.seed) throw std::invalid_argument("--sigma requires --seed for reproducibility");
            s = add_noise(s, opt.sigma, *opt.seed);
        }
        write_sinogram(opt.out, s);
        return exit_ok;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_precondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

inline int cmd_reconstruct(const ReconstructOptions& opt, std::ostream& err = std::cerr) {
    try {
        const Sinogram s = read_sinogram(opt.input);
        Filter filter;
        filter.tau = opt.tau;
        filter.beta = opt.beta;
        filter.profile = opt.profile;
        filter.order = opt.order;
        filter.validate();
        SineCoefficients coeffs = sine_coefficients(s);
        if (coeffs.missing > 0) coeffs = complete_coefficients(coeffs, filter);
        const ReconImage img = oped_evaluate(coeffs, filter, opt.grid);
        write_image_pgm(opt.out, img, opt.window_lo, opt.window_hi);
        if (!opt.metrics.empty()) {
            const Metrics m = compute_metrics(img, resolve_phantom(opt.reference));
            write_metrics_json(opt.metrics, m);
        }
        return exit_ok;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_precondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

inline int cmd_cond_report(const CondReportOptions& opt, std::ostream& err = std::cerr) {
    try {
        std::vector<std::pair<double, double>> grid;
        if (opt.sweep) grid = sweep_grid();
        else grid = {{opt.tau, opt.beta}};
        const std::vector<SpectralReport> reports =
            condition_table(opt.n, opt.missing, grid, opt.convention, opt.profile, opt.order);
        if (opt.sweep) {
            // One summary row per (tau, beta).
            std::string csv = "tau,beta,max_cond,coverage_degrees\n";
            for (const auto& r : reports) {
                csv += detail::format_double(r.tau) + ',' + detail::format_double(r.beta) + ',';
                csv += r.max_infinite ? "inf" : detail::format_double(r.max_condition);
                csv += ',' + detail::format_double(r.coverage_degrees) + '\n';
            }
            atomic_write(opt.out, csv);
        } else {
            write_spectral_csv(opt.out, reports.front());
        }
        const std::filesystem::path json_path =
            opt.json.empty() ? std::filesystem::path(opt.out.string() + ".json") : opt.json;
        write_spectral_json(json_path, reports);
        return exit_ok;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_precondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

// ---------------------------------------------------------------------------
// Verification suites (exit 0 on pass, 3 on failure)
// ---------------------------------------------------------------------------

namespace verify {

struct Check {
    std::ostream& out;
    bool ok = true;
    void expect(bool pass, const std::string& label) {
        out << (pass ? "  ok   " : "  FAIL ") << label << '\n';
        if (!pass) ok = false;
    }
};

/// Spectral facts about the completion matrices at the given even size:
/// eigenvalue range and rank structure of M, positive definiteness of A
/// under the cut-off bound, the shifted-spectrum identity between A and M,
/// and the mirror identity relating M and B on the full-circle grid.
inline bool theorems(int n, std::ostream& out) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("theorem suite needs even N >= 4");
    Check check{out};

    bool range_ok = true, classify_ok = true, multiplicity_ok = true;
    for (int k = 0; k < n; ++k) {
        for (int r = 1; r < n; ++r) {
            const auto m = completion_matrix<double>(MatrixKind::M, k, r, n);
            const Eigen::VectorXd mu = symmetric_eigenvalues<double>(m);
            if (mu(0) < -1e-9 || mu(mu.size() - 1) > 1.0 + 1e-9) range_ok = false;
            const bool positive = mu(0) > 1e-9;
            if (positive != (k + r < n)) classify_ok = false;
            if (k + r >= n) {
                int zeros = 0;
                for (Eigen::Index i = 0; i < mu.size(); ++i)
                    if (std::abs(mu(i)) <= 1e-9) ++zeros;
                if (zeros != k + r + 1 - n) multiplicity_ok = false;
            }
        }
    }
    check.expect(range_ok, "eigenvalues of M lie in [0, 1] for all (k, r)");
    check.expect(classify_ok, "M positive definite exactly when k + r < N");
    check.expect(multiplicity_ok, "zero eigenvalue of M has multiplicity k + r + 1 - N");

    Filter filter;
    filter.tau = 0.5;
    filter.beta = 0.0;
    bool pd_ok = true;
    for (int r = 1; r <= n / 2 - 1; ++r) {
        for (int k = 0; k < n; ++k) {
            const auto a = completion_matrix<double>(MatrixKind::A, k, r, n,
                                                     AngleConvention::half_circle, &filter);
            if (symmetric_eigenvalues<double>(a)(0) <= 1e-9) pd_ok = false;
        }
    }
    double singular_min = 1.0;
    for (int k = 0; k < n; ++k) {
        const auto a = completion_matrix<double>(MatrixKind::A, k, n / 2, n,
                                                 AngleConvention::half_circle, &filter);
        singular_min = std::min(singular_min, symmetric_eigenvalues<double>(a)(0));
    }
    check.expect(pd_ok, "A positive definite for all k when tau < 1 - r/N");
    check.expect(singular_min <= 1e-9, "A singular for some k when tau = 1 - r/N");

    // Mirror identity M_{N-l-2, r} = B_{l, r} / N on the full-circle grid.
    double mirror_worst = 0.0;
    const int r_mirror = std::min(4, n / 2);
    for (int l = 0; l <= n - 2; ++l) {
        const auto m = completion_matrix<double>(MatrixKind::M, n - l - 2, r_mirror, n,
                                                 AngleConvention::full_circle);
        const auto b = completion_matrix<double>(MatrixKind::B, l, r_mirror, n,
                                                 AngleConvention::full_circle);
        mirror_worst = std::max(mirror_worst, (m - b / double(n)).cwiseAbs().maxCoeff());
    }
    check.expect(mirror_worst <= 1e-12, "mirror identity M(N-l-2) = B(l)/N entrywise");

    // Spectrum of A is the eta-shifted spectrum of M.
    std::mt19937 rng(2024);
    Filter shift_filter;
    shift_filter.tau = 0.3;
    shift_filter.beta = 0.4;
    double shift_worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int k = static_cast<int>(rng() % static_cast<unsigned>(n));
        const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
        const double e = eta(shift_filter, double(k) / double(n));
        const auto a = completion_matrix<double>(MatrixKind::A, k, r, n,
                                                 AngleConvention::half_circle, &shift_filter);
        const auto m = completion_matrix<double>(MatrixKind::M, k, r, n);
        const Eigen::VectorXd mu_a = symmetric_eigenvalues<double>(a);
        const Eigen::VectorXd mu_m = symmetric_eigenvalues<double>(m);
        Eigen::VectorXd shifted = (1.0 - e) + e * mu_m.array();
        std::sort(shifted.data(), shifted.data() + shifted.size());
        shift_worst = std::max(shift_worst, (mu_a - shifted).cwiseAbs().maxCoeff());
    }
    check.expect(shift_worst <= 1e-9, "spectrum(A) = 1 - eta + eta * spectrum(M)");
    return check.ok;
}

/// Odd-N full-circle vs half-circle evaluation agreement, plus the sign
/// symmetry of full-circle coefficients at the even neighbour size.
inline bool parity(int n, std::ostream& out, int grid = 64) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("parity suite needs odd N >= 3");
    Check check{out};
    const EllipsePhantom head = phantoms::shepp_logan();
    const int rays = default_rays(n);

    std::vector<double> phi(static_cast<std::size_t>(n)), gamma(static_cast<std::size_t>(n));
    for (int nu = 0; nu < n; ++nu) {
        phi[static_cast<std::size_t>(nu)] = 2.0 * std::numbers::pi * nu / n;
        gamma[static_cast<std::size_t>(nu)] = std::numbers::pi * nu / n;
    }
    Filter filter;
    const auto lambda_phi = sine_coefficient_matrix(sample_radon(head, phi, rays));
    const auto lambda_gamma = sine_coefficient_matrix(sample_radon(head, gamma, rays));
    const double diff = parity_equivalence(lambda_phi, lambda_gamma, filter, grid);
    check.expect(diff <= 1e-10, "odd-N full-circle and half-circle evaluations agree (max diff " +
                                    detail::format_double(diff) + ")");

    const int even_n = n - 1;
    if (even_n >= 4) {
        std::vector<double> full(static_cast<std::size_t>(even_n));
        for (int nu = 0; nu < even_n; ++nu)
            full[static_cast<std::size_t>(nu)] = 2.0 * std::numbers::pi * nu / even_n;
        const auto lambda_full = sine_coefficient_matrix(sample_radon(head, full, default_rays(even_n)));
        const double residual = half_circle_symmetry_residual(lambda_full);
        check.expect(residual <= 1e-10, "even-N sign symmetry of opposite views (residual " +
                                            detail::format_double(residual) + ")");
    }
    return check.ok;
}

/// Exact reproduction of low-degree polynomials through the full pipeline.
inline bool preservation(int n, std::ostream& out, int grid = 128) {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("preservation suite needs even N >= 8");
    Check check{out};
    SinogramGeometry geom;
    geom.n = n;
    geom.rays = n / 2;
    geom.missing = 0;
    Filter filter;
    filter.tau = 0.25;
    filter.beta = 0.9;

    const std::vector<std::pair<std::string, Poly2>> cases = {
        {"1", Poly2{{{0, 0, 1.0}}}},
        {"x", Poly2{{{1, 0, 1.0}}}},
        {"y", Poly2{{{0, 1, 1.0}}}},
        {"x^2+y^2", Poly2{{{2, 0, 1.0}, {0, 2, 1.0}}}},
        {"x*y", Poly2{{{1, 1, 1.0}}}},
    };
    for (const auto& [label, poly] : cases) {
        const SineCoefficients coeffs = sine_coefficients(poly_sinogram(poly, geom));
        const ReconImage img = oped_evaluate(coeffs, filter, grid);
        double worst = 0.0;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                if (!img.mask(i, j)) continue;
                double x, y;
                ReconImage::pixel_center(grid, i, j, x, y);
                worst = std::max(worst, std::abs(img.values(i, j) - poly(x, y)));
            }
        check.expect(worst <= 1e-8, "f = " + label + " reproduced (max error " +
                                        detail::format_double(worst) + ")");
    }
    return check.ok;
}

}  // namespace verify

inline int cmd_verify(const std::string& suite, std::optional<int> n, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
    try {
        bool ok;
        if (suite == "theorems") ok = verify::theorems(n.value_or(16), out);
        else if (suite == "parity") ok = verify::parity(n.value_or(9), out);
        else if (suite == "preservation") ok = verify::preservation(n.value_or(64), out);
        else throw std::invalid_argument("unknown suite '" + suite +
                                         "' (expected theorems, parity, or preservation)");
        out << (ok ? "suite passed" : "suite FAILED") << '\n';
        return ok ? exit_ok : exit_verification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace oped
