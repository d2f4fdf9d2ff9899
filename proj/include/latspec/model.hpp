#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "latspec/params.hpp"

namespace latspec {

/// Action of H on a finite window of sites -N..N with Dirichlet truncation
/// (components outside the window are treated as zero).  The input holds
/// f_{-N}..f_N contiguously; site k lives at index k + N.  Works for real
/// and complex scalars.
///
/// The window must cover at least 5 sites so the three perturbed rows at
/// sites -1, 0, 1 stay clear of the boundary.
template <class Scalar>
std::vector<Scalar> apply_hamiltonian(const PhysicalParams& p, std::span<const Scalar> f) {
    validate(p);
    const std::size_t m = f.size();
    if (m < 5 || m % 2 == 0)
        throw std::invalid_argument(
            "apply_hamiltonian needs an odd window of at least 5 sites");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(m / 2);  // half-width

    std::vector<Scalar> out(m);
    auto at = [&](std::ptrdiff_t site) -> Scalar {
        if (site < -n || site > n) return Scalar{};
        return f[static_cast<std::size_t>(site + n)];
    };

    // homogeneous rows: lambda (-f_{k+1} + 2 f_k - f_{k-1})
    for (std::ptrdiff_t k = -n; k <= n; ++k)
        out[static_cast<std::size_t>(k + n)] =
            p.lambda * (-at(k + 1) + 2.0 * at(k) - at(k - 1));

    // perturbed rows at sites -1, 0, 1
    const auto f0 = at(0), fp = at(1), fm = at(-1);
    out[static_cast<std::size_t>(-1 + n)] += p.mu1 * fm - p.lambda1 * f0;
    out[static_cast<std::size_t>(0 + n)] +=
        (2.0 * p.lambda1 + p.mu) * f0 - p.lambda1 * (fp + fm);
    out[static_cast<std::size_t>(1 + n)] += p.mu1 * fp - p.lambda1 * f0;
    return out;
}

template <class Scalar>
std::vector<Scalar> apply_hamiltonian(const PhysicalParams& p, const std::vector<Scalar>& f) {
    return apply_hamiltonian(p, std::span<const Scalar>(f));
}

}  // namespace latspec
