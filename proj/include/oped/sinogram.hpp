#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "oped/geometry.hpp"
#include "oped/phantom.hpp"

namespace oped {

/// Sampled Radon data g[nu][j] on the OPED geometry. Rows with nu < missing
/// are not measurements; they are kept zero-filled for shape stability.
struct Sinogram {
    SinogramGeometry geometry;
    Eigen::MatrixXd values;  // views() x rays
    double noise_sigma = 0.0;
    std::optional<std::int64_t> seed;
};

/// Samples phantom line integrals at an arbitrary list of view angles.
inline Eigen::MatrixXd sample_radon(const EllipsePhantom& p, const std::vector<double>& angles, int rays) {
    p.validate();
    Eigen::MatrixXd g(static_cast<Eigen::Index>(angles.size()), rays);
    for (Eigen::Index nu = 0; nu < g.rows(); ++nu) {
        for (int j = 0; j < rays; ++j) {
            const double psi = (2 * j + 1) * std::numbers::pi / (2.0 * rays);
            g(nu, j) = phantom_radon(p, angles[static_cast<std::size_t>(nu)], std::cos(psi));
        }
    }
    return g;
}

inline Sinogram sample_sinogram(const EllipsePhantom& p, const SinogramGeometry& geom) {
    geom.validate();
    p.validate();
    Sinogram s;
    s.geometry = geom;
    s.values = Eigen::MatrixXd::Zero(geom.views(), geom.rays);
    for (int nu = geom.missing; nu < geom.views(); ++nu)
        for (int j = 0; j < geom.rays; ++j)
            s.values(nu, j) = phantom_radon(p, geom.view_angle(nu), geom.ray_offset(j));
    return s;
}

/// Deterministic standard-normal stream: mt19937_64 + Box-Muller. The draw
/// sequence is fully defined by the seed and the call order.
class GaussianStream {
  public:
    explicit GaussianStream(std::int64_t seed) : engine_(static_cast<std::uint64_t>(seed)) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1], u2 in [0, 1)
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Adds seeded i.i.d. Gaussian noise to every stored (available) sample, in
/// row-major order (nu outer, j inner). sigma = 0 returns the input unchanged.
inline Sinogram add_noise(const Sinogram& s, double sigma, std::int64_t seed) {
    if (sigma < 0) throw std::invalid_argument("add_noise: sigma must be >= 0");
    if (sigma == 0.0) return s;
    Sinogram out = s;
    out.noise_sigma = sigma;
    out.seed = seed;
    GaussianStream stream(seed);
    for (int nu = s.geometry.missing; nu < s.geometry.views(); ++nu)
        for (int j = 0; j < s.geometry.rays; ++j) out.values(nu, j) += sigma * stream.next();
    return out;
}

}  // namespace oped
