#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace latspec::specfun {

/// sqrt(x^2 - 1) evaluated as sqrt((|x|-1)(|x|+1)) to avoid cancellation
/// near |x| = 1.
inline double sqrt_x2m1(double x) {
    const double a = std::abs(x);
    return std::sqrt((a - 1.0) * (a + 1.0));
}

inline void require_outside_band(double x, const char* who) {
    if (!(std::abs(x) > 1.0))
        throw std::domain_error(std::string(who) + " requires |x| > 1");
}

/// g(x) = 1 / (x sqrt(1 - x^-2)) for |x| > 1; equal to sign(x)/sqrt(x^2-1).
inline double g(double x) {
    require_outside_band(x, "g");
    const double s = sqrt_x2m1(x);
    return x > 0.0 ? 1.0 / s : -1.0 / s;
}

/// h(x) = x g(x) - 1, evaluated in the cancellation-free form
/// 1 / (sqrt(x^2-1) (|x| + sqrt(x^2-1))).  Strictly positive on |x| > 1.
inline double h(double x) {
    require_outside_band(x, "h");
    const double s = sqrt_x2m1(x);
    return 1.0 / (s * (std::abs(x) + s));
}

/// v(x) = x h(x).
inline double v(double x) {
    return x * h(x);
}

/// l(gamma) = gamma (1 + sqrt(1 - gamma^-2)), the branch with |l| >= 1:
/// gamma + sqrt(gamma^2-1) for gamma >= 1, gamma - sqrt(gamma^2-1) for
/// gamma <= -1.  Both terms share the sign of gamma, so there is no
/// subtractive cancellation.
inline double l(double gamma) {
    if (!(std::abs(gamma) >= 1.0))
        throw std::domain_error("l(gamma) requires |gamma| >= 1");
    const double s = sqrt_x2m1(gamma);
    return gamma >= 1.0 ? gamma + s : gamma - s;
}

/// Secular function F(gamma) = (gamma - sigma) (l(gamma) - delta), defined
/// for |gamma| >= 1.  Bound states away from the explicit kappa solve
/// F(gamma) = (alpha+1)^2.
inline double secular_F(double gamma, double delta, double sigma) {
    return (gamma - sigma) * (l(gamma) - delta);
}

/// Tail decay ratio of a bound state at spectral parameter gamma:
/// |f_{k+1}/f_k| = 1/|l(gamma)|.
inline double decay_rate(double gamma) {
    return 1.0 / std::abs(l(gamma));
}

/// k-th cosine moment of the resolvent kernel,
///   I_k(gamma) = (1/2pi) Int_{-pi}^{pi} cos(k phi) / (cos phi + gamma) dphi,
/// for |gamma| > 1.  Closed form I_k = g(gamma) (-1/l(gamma))^|k|, obtained
/// from the residue at the single pole inside the unit circle.  In
/// particular I_0 = g, I_1 = -h, and |I_{k+1}/I_k| = 1/|l|.
inline double lattice_moment(double gamma, long k) {
    require_outside_band(gamma, "lattice_moment");
    const double t = -1.0 / l(gamma);
    return g(gamma) * std::pow(t, static_cast<double>(std::llabs(k)));
}

/// Composite periodic-rule approximation of the same moment; spectrally
/// convergent for |gamma| > 1.  Test oracle only, never used in production
/// paths.  An odd node count is rounded up to keep the rule symmetric.
inline double quadrature_moment(double gamma, long k, long nodes) {
    require_outside_band(gamma, "quadrature_moment");
    if (nodes < 64)
        throw std::invalid_argument("quadrature_moment needs at least 64 nodes");
    if (nodes % 2 != 0) ++nodes;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(nodes);
    // compensated summation: the integrand alternates in sign for k > 0 and
    // the sum can be many orders below the largest term
    double sum = 0.0, carry = 0.0;
    for (long j = 0; j < nodes; ++j) {
        const double phi = -std::numbers::pi + step * static_cast<double>(j);
        const double term = std::cos(static_cast<double>(k) * phi) / (std::cos(phi) + gamma);
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(nodes);
}

}  // namespace latspec::specfun
