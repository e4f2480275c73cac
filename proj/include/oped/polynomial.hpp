#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oped/sinogram.hpp"

namespace oped {

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration.
/// Exact for polynomials of degree <= 2n - 1.
template <typename Scalar>
std::pair<std::vector<Scalar>, std::vector<Scalar>> gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
    std::vector<Scalar> nodes(static_cast<std::size_t>(n)), weights(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev-style initial guess.
        Scalar x = std::cos(std::numbers::pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
        Scalar dp = Scalar(0);
        for (int it = 0; it < 100; ++it) {
            Scalar p0 = Scalar(1), p1 = x;
            for (int j = 2; j <= n; ++j) {
                const Scalar p2 = ((Scalar(2 * j - 1)) * x * p1 - Scalar(j - 1) * p0) / Scalar(j);
                p0 = p1;
                p1 = p2;
            }
            dp = Scalar(n) * (x * p1 - p0) / (x * x - Scalar(1));
            const Scalar dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < Scalar(1e-15)) break;
        }
        nodes[static_cast<std::size_t>(i)] = x;
        weights[static_cast<std::size_t>(i)] = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    }
    return {std::move(nodes), std::move(weights)};
}

/// Sparse bivariate polynomial sum c x^px y^py.
template <typename Scalar>
struct Poly2T {
    struct Term {
        int px, py;
        Scalar coeff;
    };
    std::vector<Term> terms;

    Scalar operator()(Scalar x, Scalar y) const {
        Scalar v = Scalar(0);
        for (const auto& t : terms) {
            Scalar m = t.coeff;
            for (int i = 0; i < t.px; ++i) m *= x;
            for (int i = 0; i < t.py; ++i) m *= y;
            v += m;
        }
        return v;
    }

    int degree() const {
        int d = 0;
        for (const auto& t : terms) d = std::max(d, t.px + t.py);
        return d;
    }
};

using Poly2 = Poly2T<double>;

/// Radon transform of a polynomial over the unit disk: the restriction to the
/// line is a polynomial in arclength, so fixed-order Gauss-Legendre quadrature
/// over the chord is exact.
template <typename Scalar>
Scalar poly_radon(const Poly2T<Scalar>& f, Scalar theta, Scalar t) {
    using std::cos;
    using std::sin;
    using std::sqrt;
    const Scalar chord2 = Scalar(1) - t * t;
    if (chord2 <= Scalar(0)) return Scalar(0);
    const Scalar half = sqrt(chord2);
    const int order = f.degree() / 2 + 1;
    const auto [nodes, weights] = gauss_legendre<Scalar>(std::max(order, 2));
    const Scalar c = cos(theta), s = sin(theta);
    Scalar acc = Scalar(0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Scalar u = half * nodes[i];
        acc += weights[i] * f(t * c - u * s, t * s + u * c);
    }
    return half * acc;
}

/// Sinogram of a polynomial on the standard geometry (all views present).
inline Sinogram poly_sinogram(const Poly2& f, const SinogramGeometry& geom) {
    geom.validate();
    Sinogram s;
    s.geometry = geom;
    s.values = Eigen::MatrixXd::Zero(geom.views(), geom.rays);
    for (int nu = geom.missing; nu < geom.views(); ++nu)
        for (int j = 0; j < geom.rays; ++j)
            s.values(nu, j) = poly_radon(f, geom.view_angle(nu), geom.ray_offset(j));
    return s;
}

}  // namespace oped
