#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oped {

/// How the view count N maps onto the half circle.
enum class Parity {
    even_half_circle,  // N even: N/2 views at phi_nu = 2 pi nu / N, nu in [0, N/2)
    odd_full_circle    // N odd:  N   views at gamma_nu = pi nu / N, nu in [0, N)
};

/// Sampling geometry: equi-angular views over [0, pi) and Chebyshev ray
/// offsets t_j = cos psi_j, psi_j = (2j+1) pi / (2 N_d). In both parities the
/// views land on the same grid pi * nu / V, with V = N/2 (even) or N (odd).
struct SinogramGeometry {
    int n = 502;       // the N parameter
    int rays = 251;    // N_d, rays per view
    int missing = 0;   // r, leading views absent
    Parity parity = Parity::even_half_circle;

    int views() const { return parity == Parity::even_half_circle ? n / 2 : n; }

    double view_angle(int nu) const { return std::numbers::pi * nu / views(); }

    double ray_angle(int j) const { return (2 * j + 1) * std::numbers::pi / (2.0 * rays); }

    double ray_offset(int j) const { return std::cos(ray_angle(j)); }

    /// Angular span of the available views, in degrees: 180 - r * (180 / V).
    double coverage_degrees() const { return 180.0 - missing * (180.0 / views()); }

    void validate() const {
        if (n <= 0) throw std::invalid_argument("geometry: N must be positive");
        if (parity == Parity::even_half_circle && n % 2 != 0)
            throw std::invalid_argument("geometry: even_half_circle requires even N");
        if (parity == Parity::odd_full_circle && n % 2 == 0)
            throw std::invalid_argument("geometry: odd_full_circle requires odd N");
        if (rays < 1) throw std::invalid_argument("geometry: N_d must be >= 1");
        if (missing < 0 || missing >= n / 2.0 - 1.0)
            throw std::invalid_argument("geometry: r must satisfy 0 <= r < N/2 - 1 (r=" +
                                        std::to_string(missing) + ", N=" + std::to_string(n) + ")");
    }
};

/// Default ray count: N/2, rounded up for odd N.
inline int default_rays(int n) { return (n + 1) / 2; }

}  // namespace oped
