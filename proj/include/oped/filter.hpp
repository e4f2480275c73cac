#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace oped {

/// Shape of the decreasing section of the frequency multiplier eta.
enum class FilterProfile {
    plateau,  // C^3 cubic descending from 1 to beta on [tau, 1]
    bump      // polynomial bump of order m, descending from 1 to 0 on [tau, 1]
};

/// Binomial-weighted bump of degree 2k+1 on [0, 1]:
///   h_k(t) = (1-t)^{k+1} * sum_{j=0}^{k} C(k+j, j) t^j,
/// with h_k(0) = 1, h_k(1) = 0 and k vanishing derivatives at both ends.
template <typename Scalar>
Scalar bump_h(int k, Scalar t) {
    if (k < 0) throw std::invalid_argument("bump_h: negative order");
    if (t < Scalar(0) || t > Scalar(1)) throw std::domain_error("bump_h: argument outside [0, 1]");
    Scalar sum = Scalar(0);
    Scalar binom = Scalar(1);  // C(k+j, j), built up multiplicatively
    Scalar tpow = Scalar(1);
    for (int j = 0; j <= k; ++j) {
        sum += binom * tpow;
        tpow *= t;
        binom *= Scalar(k + j + 1) / Scalar(j + 1);
    }
    using std::pow;
    return pow(Scalar(1) - t, Scalar(k + 1)) * sum;
}

/// Frequency filter: 1 on [0, tau], strictly decreasing on [tau, 1] towards
/// eta(1) = beta (plateau profile) or 0 (bump profile).
template <typename Scalar>
struct FilterT {
    Scalar tau = Scalar(0);
    Scalar beta = Scalar(0.9);
    FilterProfile profile = FilterProfile::plateau;
    int order = 3;

    void validate() const {
        if (!(tau >= Scalar(0)) || tau >= Scalar(1))
            throw std::invalid_argument("filter: tau must lie in [0, 1)");
        if (!(beta >= Scalar(0)) || beta > Scalar(1))
            throw std::invalid_argument("filter: beta must lie in [0, 1]");
        if (order < 1) throw std::invalid_argument("filter: order must be >= 1");
    }

    Scalar operator()(Scalar t) const { return eta(*this, t); }

    std::string describe() const {
        std::string s = profile == FilterProfile::plateau ? "plateau" : "bump";
        s += "(tau=" + std::to_string(double(tau)) + ", beta=" + std::to_string(double(beta)) +
             ", order=" + std::to_string(order) + ")";
        return s;
    }
};

using Filter = FilterT<double>;

template <typename Scalar>
Scalar eta(const FilterT<Scalar>& f, Scalar t) {
    f.validate();
    if (t < Scalar(0)) throw std::domain_error("eta: negative argument");
    if (t <= f.tau) return Scalar(1);
    if (t > Scalar(1)) return f.profile == FilterProfile::plateau ? f.beta : Scalar(0);
    const Scalar u = (t - f.tau) / (Scalar(1) - f.tau);
    if (f.profile == FilterProfile::bump) return bump_h(f.order, u);
    return (f.beta - Scalar(1)) * (Scalar(3) * u * u - Scalar(2) * u * u * u) + Scalar(1);
}

}  // namespace oped
