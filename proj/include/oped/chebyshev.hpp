#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

#include "oped/common.hpp"

namespace oped {

namespace detail {

template <typename Scalar>
Scalar clamp_to_unit(Scalar t, const char* what) {
    if (t > Scalar(1)) {
        if (t > Scalar(1) + Scalar(kUnitIntervalSlack))
            throw std::domain_error(std::string(what) + ": argument " + std::to_string(double(t)) +
                                    " outside [-1, 1]");
        return Scalar(1);
    }
    if (t < Scalar(-1)) {
        if (t < Scalar(-1) - Scalar(kUnitIntervalSlack))
            throw std::domain_error(std::string(what) + ": argument " + std::to_string(double(t)) +
                                    " outside [-1, 1]");
        return Scalar(-1);
    }
    return t;
}

// Three-term recurrence U_{k+1} = 2 t U_k - U_{k-1}; stable on [-1, 1].
template <typename Scalar>
Scalar chebyshev_u_recurrence(int k, Scalar t) {
    Scalar prev = Scalar(1);           // U_0
    if (k == 0) return prev;
    Scalar cur = Scalar(2) * t;        // U_1
    for (int i = 2; i <= k; ++i) {
        Scalar next = Scalar(2) * t * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace detail

/// Chebyshev polynomial of the second kind, U_k(t) = sin((k+1) acos t) / sin(acos t).
/// Near t = +-1 the sine quotient degenerates; there the recurrence is used instead,
/// so the endpoint values U_k(+-1) = (+-1)^k (k+1) come out exactly.
template <typename Scalar>
Scalar chebyshev_u(int k, Scalar t) {
    if (k < 0) throw std::invalid_argument("chebyshev_u: negative degree");
    t = detail::clamp_to_unit(t, "chebyshev_u");
    const Scalar sin2 = Scalar(1) - t * t;
    if (sin2 > Scalar(1e-16)) {  // |sin theta| > 1e-8
        using std::acos;
        using std::sin;
        using std::sqrt;
        const Scalar theta = acos(t);
        return sin(Scalar(k + 1) * theta) / sqrt(sin2);
    }
    return detail::chebyshev_u_recurrence(k, t);
}

/// Fills out[k] = U_k(t) for k = 0 .. out.size()-1 via the recurrence.
template <typename Scalar>
void chebyshev_u_series(Scalar t, Eigen::Ref<Eigen::Vector<Scalar, Eigen::Dynamic>> out) {
    const Eigen::Index n = out.size();
    if (n == 0) return;
    t = detail::clamp_to_unit(t, "chebyshev_u_series");
    out[0] = Scalar(1);
    if (n == 1) return;
    out[1] = Scalar(2) * t;
    for (Eigen::Index k = 2; k < n; ++k) out[k] = Scalar(2) * t * out[k - 1] - out[k - 2];
}

}  // namespace oped
