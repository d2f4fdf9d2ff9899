#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "latspec/params.hpp"
#include "latspec/spectrum.hpp"

namespace latspec {

/// Bound-state eigenvector over a finite window, unit-l2 normalized.
/// Components are computed once for k >= 0 and mirrored with the parity
/// sign, so the parity relations hold exactly.
struct EigenvectorTable {
    int half_width = 0;            // window is -half_width .. half_width
    std::vector<double> values;    // site k at index k + half_width
    Parity parity = Parity::Even;
    double gamma = 0.0;
    double decay_rate = 0.0;       // |f_{k+1}/f_k| tail ratio; 0 for compact support

    double value_at(int site) const {
        return values[static_cast<std::size_t>(site + half_width)];
    }
};

namespace detail {

inline void require_window(int half_width) {
    if (half_width < 5)
        throw std::invalid_argument("eigenvector window half-width must be at least 5");
}

inline void unit_normalize(std::vector<double>& vals) {
    double s = 0.0;
    for (double x : vals) s += x * x;
    const double norm = std::sqrt(s);
    for (double& x : vals) x /= norm;
}

/// Even eigenvector components from the seed pair (f_0, f_1):
///   f_k = f_1 (-alpha I_k + delta (I_{k-1}+I_{k+1})/2)
///       + f_0 (sigma I_k - alpha (I_{k-1}+I_{k+1})/2),  k >= 1,
/// with I_k the resolvent moments at gamma.  The moments are exactly
/// geometric, so the components are c t^k with t = -1/l(gamma) and the
/// interior three-term recursion holds to machine precision.
inline EigenvectorTable build_even_table(const NormalizedParams& n, double gamma,
                                         double f0, double f1, int half_width) {
    require_window(half_width);
    EigenvectorTable tab;
    tab.half_width = half_width;
    tab.parity = Parity::Even;
    tab.gamma = gamma;
    tab.decay_rate = specfun::decay_rate(gamma);
    tab.values.assign(2 * static_cast<std::size_t>(half_width) + 1, 0.0);

    const double g = specfun::g(gamma);
    const double t = -1.0 / specfun::l(gamma);
    tab.values[static_cast<std::size_t>(half_width)] = f0;
    double t_km1 = 1.0;  // t^{k-1}
    for (int k = 1; k <= half_width; ++k) {
        const double i_km1 = g * t_km1;
        const double i_k = i_km1 * t;
        const double i_kp1 = i_k * t;
        const double half_sum = 0.5 * (i_km1 + i_kp1);
        const double fk = f1 * (-n.alpha * i_k + n.delta * half_sum) +
                          f0 * (n.sigma * i_k - n.alpha * half_sum);
        tab.values[static_cast<std::size_t>(half_width + k)] = fk;
        tab.values[static_cast<std::size_t>(half_width - k)] = fk;
        t_km1 *= t;
    }
    unit_normalize(tab.values);
    return tab;
}

/// Null vector (f_0, f_1') of the 2x2 block, taken from the larger-pivot row.
inline void block_null_vector(const SystemCoefficients& c, double& f0, double& f1) {
    const double r1 = std::hypot(c.a11, c.a12);
    const double r2 = std::hypot(c.a21, c.a22);
    if (r1 >= r2) {
        f0 = -c.a12 / r1;
        f1 = c.a11 / r1;
    } else {
        f0 = -c.a22 / r2;
        f1 = c.a21 / r2;
    }
}

}  // namespace detail

/// Odd eigenvector attached to kappa: f_0 = 0, f_1 = 1 seed, and
/// f_k = (delta f_1 / 2)(I_{k-1} - I_{k+1}) at gamma_delta for k > 1,
/// mirrored with f_{-k} = -f_k, then unit-normalized.
inline EigenvectorTable odd_eigenvector(const PhysicalParams& p, int half_width) {
    detail::require_window(half_width);
    validate(p);
    const NormalizedParams n = normalize(p);
    if (!(std::abs(n.delta) > 1.0))
        throw std::domain_error("odd eigenvector requires |delta| > 1 (kappa absent)");
    const double gd = gamma_delta_of(n.delta);

    EigenvectorTable tab;
    tab.half_width = half_width;
    tab.parity = Parity::Odd;
    tab.gamma = gd;
    tab.decay_rate = specfun::decay_rate(gd);
    tab.values.assign(2 * static_cast<std::size_t>(half_width) + 1, 0.0);

    const double g = specfun::g(gd);
    const double t = -1.0 / specfun::l(gd);
    double t_km1 = 1.0;
    for (int k = 1; k <= half_width; ++k) {
        const double diff = g * t_km1 * (1.0 - t * t);  // I_{k-1} - I_{k+1}
        const double fk = 0.5 * n.delta * diff;
        tab.values[static_cast<std::size_t>(half_width + k)] = fk;
        tab.values[static_cast<std::size_t>(half_width - k)] = -fk;
        t_km1 *= t;
    }
    detail::unit_normalize(tab.values);
    return tab;
}

/// Even eigenvector attached to a secular root gamma (alpha != -1).  The
/// seed pair (f_0, f_1) is the null vector of the 2x2 block; gamma must
/// satisfy the determinant condition to the stated tolerance.
inline EigenvectorTable even_eigenvector(const PhysicalParams& p, double gamma,
                                         int half_width) {
    detail::require_window(half_width);
    validate(p);
    const NormalizedParams n = normalize(p);
    if (n.alpha == -1.0)
        throw std::domain_error("even eigenvector requires alpha != -1");

    // |D'| <= 1e-8 scaled by its own factors, i.e. |F - (alpha+1)^2| small
    const double target = coupling_target(n.alpha);
    const double lg = specfun::l(gamma);
    const double scale = std::abs(specfun::h(gamma) / lg * (lg - n.delta));
    const double dp = determinant_dprime(n, gamma);
    if (std::abs(dp) > 1e-8 * std::max(1.0, target) * std::max(scale, 1e-300))
        throw std::domain_error("gamma is not a root of the secular equation");

    const RankResult rr = system_rank(n, gamma);
    const double s1 = rr.singular_values[0];
    const double s2 = rr.singular_values[1];
    if (!(s2 <= 1e-6 * std::max(1.0, s1)))
        throw std::domain_error("gamma is not a root of the secular equation");
    if (!(s1 > 1e-9))
        throw std::logic_error("two-dimensional null space at a simple root");

    double f0 = 0.0, f1 = 0.0;
    detail::block_null_vector(rr.coeffs, f0, f1);
    return detail::build_even_table(n, gamma, f0, f1, half_width);
}

/// The explicit eigenvectors on the alpha = -1 line: e_0 for the eigenvalue
/// mu (exact, finitely supported), and for |delta| > 1 the odd and even
/// kappa-vectors spanning the two-dimensional kappa eigenspace.
inline std::vector<EigenvectorTable> alpha_minus_one_vectors(const PhysicalParams& p,
                                                             int half_width) {
    detail::require_window(half_width);
    validate(p);
    const NormalizedParams n = normalize(p);
    if (n.alpha != -1.0)
        throw std::domain_error("alpha_minus_one_vectors requires alpha = -1");

    std::vector<EigenvectorTable> out;

    EigenvectorTable e0;
    e0.half_width = half_width;
    e0.parity = Parity::Even;
    e0.gamma = p.mu / (2.0 * p.lambda) - 1.0;
    e0.decay_rate = 0.0;
    e0.values.assign(2 * static_cast<std::size_t>(half_width) + 1, 0.0);
    e0.values[static_cast<std::size_t>(half_width)] = 1.0;
    out.push_back(std::move(e0));

    if (std::abs(n.delta) > 1.0) {
        const double gd = gamma_delta_of(n.delta);
        out.push_back(odd_eigenvector(p, half_width));

        // even kappa-vector: null vector of the rank-1 (rank-0 at the
        // mu = kappa collision) system at gamma_delta
        const RankResult rr = system_rank(n, gd);
        double f0 = 0.0, f1 = 1.0;
        const double block_norm = std::max(std::hypot(rr.coeffs.a11, rr.coeffs.a12),
                                           std::hypot(rr.coeffs.a21, rr.coeffs.a22));
        if (block_norm > 1e-12)
            detail::block_null_vector(rr.coeffs, f0, f1);
        out.push_back(detail::build_even_table(n, gd, f0, f1, half_width));
    }
    return out;
}

}  // namespace latspec
