#pragma once

#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oped/phantom.hpp"
#include "oped/reconstruction.hpp"
#include "oped/report.hpp"
#include "oped/sinogram.hpp"

namespace oped {

inline constexpr char kSinogramMagic[] = "OPEDSG1";

namespace detail {

inline std::uint64_t swap_u64(std::uint64_t x) {
    x = (x & 0x00ff00ff00ff00ffULL) << 8 | (x & 0xff00ff00ff00ff00ULL) >> 8;
    x = (x & 0x0000ffff0000ffffULL) << 16 | (x & 0xffff0000ffff0000ULL) >> 16;
    return x << 32 | x >> 32;
}

inline void append_f64_le(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    if constexpr (std::endian::native == std::endian::big) bits = swap_u64(bits);
    char raw[8];
    std::memcpy(raw, &bits, 8);
    out.append(raw, 8);
}

inline double read_f64_le(const char* p) {
    std::uint64_t bits;
    std::memcpy(&bits, p, 8);
    if constexpr (std::endian::native == std::endian::big) bits = swap_u64(bits);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// Writes bytes to a temporary file in the target directory and renames it
/// into place, so readers never observe a partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

/// Sinogram container: magic line, one ASCII header line
/// "N N_d r parity sigma seed", then the available rows (nu = r .. V-1) as
/// row-major 64-bit little-endian IEEE doubles.
inline std::string encode_sinogram(const Sinogram& s) {
    s.geometry.validate();
    std::string out;
    out += kSinogramMagic;
    out += '\n';
    out += std::to_string(s.geometry.n) + ' ' + std::to_string(s.geometry.rays) + ' ' +
           std::to_string(s.geometry.missing) + ' ' +
           (s.geometry.parity == Parity::even_half_circle ? "even" : "odd") + ' ' +
           detail::format_double(s.noise_sigma) + ' ' + (s.seed ? std::to_string(*s.seed) : "-") + '\n';
    for (int nu = s.geometry.missing; nu < s.geometry.views(); ++nu)
        for (int j = 0; j < s.geometry.rays; ++j) {
            const double v = s.values(nu, j);
            if (!std::isfinite(v)) throw std::runtime_error("sinogram contains non-finite values");
            detail::append_f64_le(out, v);
        }
    return out;
}

inline void write_sinogram(const std::filesystem::path& path, const Sinogram& s) {
    atomic_write(path, encode_sinogram(s));
}

inline Sinogram decode_sinogram(const std::string& bytes) {
    std::size_t pos = bytes.find('\n');
    if (pos == std::string::npos || bytes.substr(0, pos) != kSinogramMagic)
        throw std::runtime_error("sinogram: bad magic (expected OPEDSG1)");
    const std::size_t header_end = bytes.find('\n', pos + 1);
    if (header_end == std::string::npos) throw std::runtime_error("sinogram: missing header line");
    std::istringstream header(bytes.substr(pos + 1, header_end - pos - 1));
    Sinogram s;
    std::string parity, seed;
    double sigma = 0.0;
    if (!(header >> s.geometry.n >> s.geometry.rays >> s.geometry.missing >> parity >> sigma >> seed))
        throw std::runtime_error("sinogram: malformed header line");
    if (parity == "even") s.geometry.parity = Parity::even_half_circle;
    else if (parity == "odd") s.geometry.parity = Parity::odd_full_circle;
    else throw std::runtime_error("sinogram: unknown parity '" + parity + "'");
    s.geometry.validate();
    s.noise_sigma = sigma;
    if (seed != "-") {
        try {
            s.seed = std::stoll(seed);
        } catch (const std::exception&) {
            throw std::runtime_error("sinogram: malformed seed field '" + seed + "'");
        }
    }

    const int views = s.geometry.views();
    const std::size_t expected =
        static_cast<std::size_t>(views - s.geometry.missing) * static_cast<std::size_t>(s.geometry.rays) * 8;
    const std::size_t actual = bytes.size() - header_end - 1;
    if (actual != expected)
        throw std::runtime_error("sinogram: payload is " + std::to_string(actual) + " bytes, expected " +
                                 std::to_string(expected));
    s.values = Eigen::MatrixXd::Zero(views, s.geometry.rays);
    const char* p = bytes.data() + header_end + 1;
    for (int nu = s.geometry.missing; nu < views; ++nu)
        for (int j = 0; j < s.geometry.rays; ++j, p += 8) {
            const double v = detail::read_f64_le(p);
            if (!std::isfinite(v)) throw std::runtime_error("sinogram: non-finite value in payload");
            s.values(nu, j) = v;
        }
    return s;
}

inline Sinogram read_sinogram(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return decode_sinogram(buf.str());
}

/// 16-bit binary PGM (maxval 65535, big-endian samples per the format).
/// Values are windowed linearly onto [0, 65535] and clamped; unmasked pixels
/// render as window_lo.
inline std::string encode_pgm16(const ReconImage& img, double window_lo, double window_hi) {
    if (!(window_lo < window_hi)) throw std::invalid_argument("write_image: window_lo must be < window_hi");
    std::string out = "P5\n" + std::to_string(img.size) + ' ' + std::to_string(img.size) + "\n65535\n";
    for (int i = 0; i < img.size; ++i) {
        for (int j = 0; j < img.size; ++j) {
            const double v = img.mask(i, j) ? img.values(i, j) : window_lo;
            double scaled = std::round((v - window_lo) / (window_hi - window_lo) * 65535.0);
            if (scaled < 0.0) scaled = 0.0;
            if (scaled > 65535.0) scaled = 65535.0;
            const auto sample = static_cast<std::uint16_t>(scaled);
            out += static_cast<char>(sample >> 8);
            out += static_cast<char>(sample & 0xff);
        }
    }
    return out;
}

inline void write_image_pgm(const std::filesystem::path& path, const ReconImage& img, double window_lo,
                            double window_hi) {
    atomic_write(path, encode_pgm16(img, window_lo, window_hi));
}

/// Error metrics over the masked disk against the analytic phantom densities
/// sampled at pixel centers.
struct Metrics {
    double rmse_inside_disk = 0.0;
    double rel_l2_inside_disk = 0.0;
    double max_abs_inside_disk = 0.0;
    int grid = 0;
};

inline Metrics compute_metrics(const ReconImage& img, const EllipsePhantom& reference) {
    reference.validate();
    Metrics m;
    m.grid = img.size;
    double err2 = 0.0, ref2 = 0.0, worst = 0.0;
    std::size_t count = 0;
    for (int i = 0; i < img.size; ++i) {
        for (int j = 0; j < img.size; ++j) {
            if (!img.mask(i, j)) continue;
            double x, y;
            ReconImage::pixel_center(img.size, i, j, x, y);
            const double ref = reference(x, y);
            const double diff = img.values(i, j) - ref;
            err2 += diff * diff;
            ref2 += ref * ref;
            if (std::abs(diff) > worst) worst = std::abs(diff);
            ++count;
        }
    }
    if (count == 0) throw std::invalid_argument("compute_metrics: empty mask");
    m.rmse_inside_disk = std::sqrt(err2 / static_cast<double>(count));
    m.rel_l2_inside_disk = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);
    m.max_abs_inside_disk = worst;
    return m;
}

inline void write_metrics_json(const std::filesystem::path& path, const Metrics& m) {
    nlohmann::json j;
    j["rmse_inside_disk"] = m.rmse_inside_disk;
    j["rel_l2_inside_disk"] = m.rel_l2_inside_disk;
    j["max_abs_inside_disk"] = m.max_abs_inside_disk;
    j["grid"] = m.grid;
    atomic_write(path, j.dump(2) + "\n");
}

/// Per-k spectral rows as CSV with columns exactly "k,mu_min,mu_max,cond".
inline std::string encode_spectral_csv(const SpectralReport& report) {
    std::string out = "k,mu_min,mu_max,cond\n";
    for (const SpectralRow& row : report.per_k) {
        out += std::to_string(row.k) + ',';
        if (row.solver_failed) {
            out += ",,error\n";
            continue;
        }
        out += detail::format_double(row.mu_min) + ',' + detail::format_double(row.mu_max) + ',';
        out += row.infinite ? "inf" : detail::format_double(row.cond);
        out += '\n';
    }
    return out;
}

inline void write_spectral_csv(const std::filesystem::path& path, const SpectralReport& report) {
    atomic_write(path, encode_spectral_csv(report));
}

inline nlohmann::json spectral_summary_json(const SpectralReport& report) {
    nlohmann::json j;
    j["max_condition"] = report.max_infinite ? nlohmann::json("inf") : nlohmann::json(report.max_condition);
    j["coverage_degrees"] = report.coverage_degrees;
    j["parameters"] = {{"N", report.n},       {"r", report.r},
                       {"tau", report.tau},   {"beta", report.beta},
                       {"filter", report.filter_description}, {"convention", report.convention}};
    return j;
}

inline void write_spectral_json(const std::filesystem::path& path, const std::vector<SpectralReport>& reports) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) j.push_back(spectral_summary_json(r));
    atomic_write(path, j.dump(2) + "\n");
}

/// Plain-text phantom: one ellipse per line as
/// "center_x center_y semi_major semi_minor tilt_radians density";
/// blank lines and lines starting with '#' are skipped.
inline EllipsePhantom read_phantom_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open phantom file " + path.string());
    EllipsePhantom p;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        Ellipse e;
        if (!(row >> e.center_x >> e.center_y >> e.semi_major >> e.semi_minor >> e.tilt >> e.density))
            throw std::runtime_error("phantom file " + path.string() + ": malformed line " +
                                     std::to_string(line_no));
        p.ellipses.push_back(e);
    }
    p.validate();
    return p;
}

}  // namespace oped
