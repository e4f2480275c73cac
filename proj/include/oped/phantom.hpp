#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "oped/common.hpp"

namespace oped {

/// Constant-density ellipse contained in the closed unit disk.
template <typename Scalar>
struct EllipseT {
    Scalar center_x = Scalar(0);
    Scalar center_y = Scalar(0);
    Scalar semi_major = Scalar(1);  // a
    Scalar semi_minor = Scalar(1);  // b
    Scalar tilt = Scalar(0);        // radians, counter-clockwise
    Scalar density = Scalar(1);

    void validate() const;

    /// Squared distance from the origin to the boundary point at parameter u.
    Scalar boundary_radius_sq(Scalar u) const {
        using std::cos;
        using std::sin;
        const Scalar px = center_x + semi_major * cos(u) * cos(tilt) - semi_minor * sin(u) * sin(tilt);
        const Scalar py = center_y + semi_major * cos(u) * sin(tilt) + semi_minor * sin(u) * cos(tilt);
        return px * px + py * py;
    }

    bool contains(Scalar x, Scalar y) const {
        using std::cos;
        using std::sin;
        const Scalar dx = x - center_x;
        const Scalar dy = y - center_y;
        const Scalar u = dx * cos(tilt) + dy * sin(tilt);
        const Scalar v = -dx * sin(tilt) + dy * cos(tilt);
        return (u / semi_major) * (u / semi_major) + (v / semi_minor) * (v / semi_minor) <= Scalar(1);
    }
};

namespace detail {

// Max squared distance from the origin to the ellipse boundary: coarse scan
// plus golden-section refinement around the best bracket.
template <typename Scalar>
Scalar max_boundary_radius_sq(const EllipseT<Scalar>& e) {
    constexpr int kGrid = 1024;
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    int best = 0;
    Scalar best_val = e.boundary_radius_sq(Scalar(0));
    for (int i = 1; i < kGrid; ++i) {
        const Scalar val = e.boundary_radius_sq(two_pi * Scalar(i) / Scalar(kGrid));
        if (val > best_val) {
            best_val = val;
            best = i;
        }
    }
    Scalar lo = two_pi * Scalar(best - 1) / Scalar(kGrid);
    Scalar hi = two_pi * Scalar(best + 1) / Scalar(kGrid);
    const Scalar phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
    Scalar x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    Scalar f1 = e.boundary_radius_sq(x1), f2 = e.boundary_radius_sq(x2);
    for (int it = 0; it < 200 && hi - lo > Scalar(1e-14); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = e.boundary_radius_sq(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = e.boundary_radius_sq(x1);
        }
    }
    using std::max;
    return max(max(f1, f2), best_val);
}

}  // namespace detail

template <typename Scalar>
void EllipseT<Scalar>::validate() const {
    if (!(semi_major > Scalar(0)) || !(semi_minor > Scalar(0)))
        throw std::invalid_argument("ellipse: semi-axes must be positive");
    using std::hypot;
    using std::max;
    using std::sqrt;
    // Quick sufficient bound; fall back to the exact boundary maximum.
    const Scalar reach = hypot(center_x, center_y) + max(semi_major, semi_minor);
    if (reach <= Scalar(1) + Scalar(kUnitIntervalSlack)) return;
    const Scalar rmax = sqrt(detail::max_boundary_radius_sq(*this));
    if (rmax > Scalar(1) + Scalar(kUnitIntervalSlack))
        throw std::invalid_argument("ellipse: not contained in the unit disk (reach " +
                                    std::to_string(double(rmax)) + ")");
}

/// Superposition of ellipses; densities add where ellipses overlap.
template <typename Scalar>
struct PhantomT {
    std::vector<EllipseT<Scalar>> ellipses;

    void validate() const {
        if (ellipses.empty()) throw std::invalid_argument("phantom: no ellipses");
        for (const auto& e : ellipses) e.validate();
    }

    /// Density at a point (sum over containing ellipses).
    Scalar operator()(Scalar x, Scalar y) const {
        Scalar v = Scalar(0);
        for (const auto& e : ellipses)
            if (e.contains(x, y)) v += e.density;
        return v;
    }
};

using Ellipse = EllipseT<double>;
using EllipsePhantom = PhantomT<double>;

/// Line integral of the ellipse density along x cos(theta) + y sin(theta) = t.
/// Closed form: with s the offset relative to the ellipse center and
/// d^2 = a^2 cos^2(theta - tilt) + b^2 sin^2(theta - tilt), the chord length is
/// 2 a b sqrt(d^2 - s^2) / d^2 when s^2 < d^2, else zero.
template <typename Scalar>
Scalar ellipse_radon(const EllipseT<Scalar>& e, Scalar theta, Scalar t) {
    using std::cos;
    using std::sin;
    using std::sqrt;
    if (t > Scalar(1) + Scalar(kUnitIntervalSlack) || t < Scalar(-1) - Scalar(kUnitIntervalSlack))
        throw std::domain_error("ellipse_radon: offset outside [-1, 1]");
    const Scalar s = t - (e.center_x * cos(theta) + e.center_y * sin(theta));
    const Scalar ca = cos(theta - e.tilt);
    const Scalar sa = sin(theta - e.tilt);
    const Scalar d2 = e.semi_major * e.semi_major * ca * ca + e.semi_minor * e.semi_minor * sa * sa;
    const Scalar rem = d2 - s * s;
    if (rem <= Scalar(0)) return Scalar(0);
    return Scalar(2) * e.density * e.semi_major * e.semi_minor * sqrt(rem) / d2;
}

template <typename Scalar>
Scalar phantom_radon(const PhantomT<Scalar>& p, Scalar theta, Scalar t) {
    Scalar v = Scalar(0);
    for (const auto& e : p.ellipses) v += ellipse_radon(e, theta, t);
    return v;
}

namespace phantoms {

/// Unit disk of density 1.
template <typename Scalar = double>
PhantomT<Scalar> unit_disk() {
    return PhantomT<Scalar>{{EllipseT<Scalar>{Scalar(0), Scalar(0), Scalar(1), Scalar(1), Scalar(0), Scalar(1)}}};
}

/// The classical ten-ellipse Shepp-Logan head phantom. Parameters follow the
/// widely reproduced published table (semi-axes along x/y before tilt, tilt in
/// degrees converted here, additive densities with the 2.0 outer shell).
template <typename Scalar = double>
PhantomT<Scalar> shepp_logan() {
    struct Row {
        double density, a, b, x0, y0, tilt_deg;
    };
    static constexpr Row rows[] = {
        {2.00, 0.6900, 0.9200, 0.00, 0.0000, 0.0},
        {-0.98, 0.6624, 0.8740, 0.00, -0.0184, 0.0},
        {-0.02, 0.1100, 0.3100, 0.22, 0.0000, -18.0},
        {-0.02, 0.1600, 0.4100, -0.22, 0.0000, 18.0},
        {0.01, 0.2100, 0.2500, 0.00, 0.3500, 0.0},
        {0.01, 0.0460, 0.0460, 0.00, 0.1000, 0.0},
        {0.01, 0.0460, 0.0460, 0.00, -0.1000, 0.0},
        {0.01, 0.0460, 0.0230, -0.08, -0.6050, 0.0},
        {0.01, 0.0230, 0.0230, 0.00, -0.6060, 0.0},
        {0.01, 0.0230, 0.0460, 0.06, -0.6050, 0.0},
    };
    PhantomT<Scalar> p;
    for (const Row& r : rows) {
        p.ellipses.push_back(EllipseT<Scalar>{Scalar(r.x0), Scalar(r.y0), Scalar(r.a), Scalar(r.b),
                                              Scalar(r.tilt_deg) * std::numbers::pi_v<Scalar> / Scalar(180),
                                              Scalar(r.density)});
    }
    return p;
}

}  // namespace phantoms

}  // namespace oped
