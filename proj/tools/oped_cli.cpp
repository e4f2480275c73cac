// Command-line front end: phantom sinogram generation, (limited-angle)
// reconstruction, condition-number reports, and self-verification suites.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "oped/parallel.hpp"
#include "oped/pipeline.hpp"

namespace {

oped::FilterProfile parse_profile(const std::string& name) {
    if (name == "plateau") return oped::FilterProfile::plateau;
    if (name == "bump") return oped::FilterProfile::bump;
    throw CLI::ValidationError("--filter must be plateau or bump");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OPED tomographic reconstruction toolkit"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0 = hardware)")->capture_default_str();

    // --- sinogram ---
    oped::SinogramOptions sg;
    std::string sg_parity = "even";
    long long sg_seed = 0;
    auto* sino = app.add_subcommand("sinogram", "sample a phantom sinogram");
    sino->add_option("--phantom", sg.phantom, "shepp-logan | disk | phantom file")->capture_default_str();
    sino->add_option("--N", sg.n, "view-count parameter N")->capture_default_str();
    sino->add_option("--Nd", sg.rays, "rays per view (default N/2)");
    sino->add_option("--r", sg.missing, "missing leading views")->capture_default_str();
    sino->add_option("--parity", sg_parity, "even | odd")->capture_default_str();
    sino->add_option("--sigma", sg.sigma, "Gaussian noise standard deviation")->capture_default_str();
    auto* seed_opt = sino->add_option("--seed", sg_seed, "noise seed");
    sino->add_option("--out", sg.out, "output sinogram path")->required();

    // --- reconstruct ---
    oped::ReconstructOptions rc;
    std::string rc_filter = "plateau";
    std::vector<double> rc_window;
    auto* rec = app.add_subcommand("reconstruct", "reconstruct an image from a sinogram");
    rec->add_option("--in", rc.input, "input sinogram")->required();
    rec->add_option("--tau", rc.tau, "filter cut-off tau")->capture_default_str();
    rec->add_option("--beta", rc.beta, "filter terminal value beta")->capture_default_str();
    rec->add_option("--filter", rc_filter, "plateau | bump")->capture_default_str();
    rec->add_option("--filter-order", rc.order, "bump smoothness order")->capture_default_str();
    rec->add_option("--grid", rc.grid, "image side length M")->capture_default_str();
    rec->add_option("--window", rc_window, "grayscale window lo hi")->expected(2);
    rec->add_option("--out", rc.out, "output PGM image")->required();
    rec->add_option("--metrics", rc.metrics, "optional metrics JSON path");
    rec->add_option("--reference", rc.reference, "reference phantom for metrics")->capture_default_str();

    // --- cond-report ---
    oped::CondReportOptions cr;
    std::string cr_filter = "plateau";
    std::string cr_convention = "half";
    auto* cond = app.add_subcommand("cond-report", "condition numbers of the completion systems");
    cond->add_option("--N", cr.n, "data-set size N (even)")->capture_default_str();
    cond->add_option("--r", cr.missing, "missing view count")->capture_default_str();
    cond->add_option("--tau", cr.tau, "filter cut-off tau")->capture_default_str();
    cond->add_option("--beta", cr.beta, "filter terminal value beta")->capture_default_str();
    cond->add_option("--filter", cr_filter, "plateau | bump")->capture_default_str();
    cond->add_option("--filter-order", cr.order, "bump smoothness order")->capture_default_str();
    cond->add_flag("--sweep", cr.sweep, "run the standard (tau, beta) grid");
    cond->add_option("--table-convention", cr_convention, "half | full")->capture_default_str();
    cond->add_option("--out", cr.out, "output CSV path")->required();
    cond->add_option("--json", cr.json, "summary JSON path (default <out>.json)");

    // --- verify ---
    std::string suite;
    std::optional<int> verify_n;
    int verify_n_raw = -1;
    auto* ver = app.add_subcommand("verify", "run built-in verification suites");
    ver->add_option("--suite", suite, "theorems | parity | preservation")->required();
    ver->add_option("--N", verify_n_raw, "override the suite's default size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? oped::exit_ok : oped::exit_usage;
    }

    oped::set_max_threads(threads);

    if (sino->parsed()) {
        if (sg_parity == "even") sg.parity = oped::Parity::even_half_circle;
        else if (sg_parity == "odd") sg.parity = oped::Parity::odd_full_circle;
        else {
            std::cerr << "error: --parity must be even or odd\n";
            return oped::exit_usage;
        }
        if (seed_opt->count() > 0) sg.seed = sg_seed;
        return oped::cmd_sinogram(sg);
    }
    if (rec->parsed()) {
        try {
            rc.profile = parse_profile(rc_filter);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return oped::exit_usage;
        }
        if (!rc_window.empty()) {
            rc.window_lo = rc_window[0];
            rc.window_hi = rc_window[1];
        }
        return oped::cmd_reconstruct(rc);
    }
    if (cond->parsed()) {
        try {
            cr.profile = parse_profile(cr_filter);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return oped::exit_usage;
        }
        if (cr_convention == "half") cr.convention = oped::TableConvention::half;
        else if (cr_convention == "full") cr.convention = oped::TableConvention::full;
        else {
            std::cerr << "error: --table-convention must be half or full\n";
            return oped::exit_usage;
        }
        return oped::cmd_cond_report(cr);
    }
    if (ver->parsed()) {
        if (verify_n_raw > 0) verify_n = verify_n_raw;
        return oped::cmd_verify(suite, verify_n);
    }
    return oped::exit_usage;
}
