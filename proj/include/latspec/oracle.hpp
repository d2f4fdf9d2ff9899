#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "latspec/params.hpp"
#include "latspec/specfun.hpp"

namespace latspec::oracle {

/// Truncation of H to the window -N..N, stored as diagonal and single
/// off-diagonal (the matrix is symmetric by construction).
struct TridiagonalH {
    std::vector<double> diag;     // length 2N+1
    std::vector<double> offdiag;  // length 2N
    int half_width = 0;
    double lambda = 0.0;
};

inline TridiagonalH build_truncated(const PhysicalParams& p, int half_width) {
    validate(p);
    if (half_width < 2)
        throw std::invalid_argument("truncation half-width must be at least 2");
    const std::size_t m = 2 * static_cast<std::size_t>(half_width) + 1;
    TridiagonalH t;
    t.half_width = half_width;
    t.lambda = p.lambda;
    t.diag.assign(m, 2.0 * p.lambda);
    t.offdiag.assign(m - 1, -p.lambda);
    const std::size_t c = static_cast<std::size_t>(half_width);  // site 0
    t.diag[c] += 2.0 * p.lambda1 + p.mu;
    t.diag[c - 1] += p.mu1;
    t.diag[c + 1] += p.mu1;
    t.offdiag[c - 1] += -p.lambda1;  // bond (-1, 0)
    t.offdiag[c] += -p.lambda1;      // bond (0, +1)
    return t;
}

namespace detail {

/// Sturm count: number of eigenvalues of the symmetric tridiagonal matrix
/// strictly below x, via the sign changes of the LDL^T pivots.
inline int count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    constexpr double pivmin = 1e-300;
    int count = 0;
    double q = d[0] - x;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

inline std::pair<double, double> gershgorin(const TridiagonalH& m) {
    const std::size_t n = m.diag.size();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(m.offdiag[i - 1]) : 0.0) +
                         (i + 1 < n ? std::abs(m.offdiag[i]) : 0.0);
        lo = std::min(lo, m.diag[i] - r);
        hi = std::max(hi, m.diag[i] + r);
    }
    return {lo, hi};
}

/// k-th smallest eigenvalue (0-based) by Sturm bisection.
inline double eigenvalue_by_index(const TridiagonalH& m, int k, double abs_tol) {
    auto [lo, hi] = gershgorin(m);
    while (hi - lo > abs_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at floating resolution
        if (count_below(m.diag, m.offdiag, mid) <= k)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Solves (T - shift I) x = rhs by Gaussian elimination with partial
/// pivoting (bandwidth grows to two superdiagonals).  Zero pivots are
/// floored so the solve survives shifts at an exact eigenvalue, which is
/// the normal situation in inverse iteration.
inline std::vector<double> shifted_solve(const TridiagonalH& m, double shift,
                                         std::vector<double> rhs) {
    const std::size_t n = m.diag.size();
    std::vector<double> b(n), c(n, 0.0), c2(n, 0.0), a(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) b[i] = m.diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        c[i] = m.offdiag[i];
        a[i] = m.offdiag[i];  // a[i] couples row i+1 to column i
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(b[i]));
    for (double x : m.offdiag) scale = std::max(scale, std::abs(x));
    const double floor = std::max(scale, 1.0) * 1e-280;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(a[i]) > std::abs(b[i])) {
            std::swap(b[i], a[i]);
            std::swap(c[i], b[i + 1]);
            std::swap(c2[i], c[i + 1]);
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (std::abs(b[i]) < floor) b[i] = (b[i] < 0.0 ? -floor : floor);
        const double f = a[i] / b[i];
        b[i + 1] -= f * c[i];
        c[i + 1] -= f * c2[i];
        rhs[i + 1] -= f * rhs[i];
    }
    if (std::abs(b[n - 1]) < floor) b[n - 1] = (b[n - 1] < 0.0 ? -floor : floor);

    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = rhs[ii];
        if (ii + 1 < n) s -= c[ii] * x[ii + 1];
        if (ii + 2 < n) s -= c2[ii] * x[ii + 2];
        x[ii] = s / b[ii];
    }
    return x;
}

inline void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    const double nrm = std::sqrt(s);
    for (double& x : v) x /= nrm;
}

/// Inverse iteration for the eigenvector at nu, orthogonalized against the
/// previously accepted vectors of the same eigenvalue cluster.
inline std::vector<double> inverse_iteration(
    const TridiagonalH& m, double nu,
    const std::vector<std::vector<double>>& cluster, std::size_t cluster_begin,
    std::size_t cluster_end) {
    const std::size_t n = m.diag.size();
    std::mt19937_64 rng(0x5DEECE66Dull);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    normalize(v);

    for (int it = 0; it < 4; ++it) {
        v = shifted_solve(m, nu, std::move(v));
        for (std::size_t j = cluster_begin; j < cluster_end; ++j) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += cluster[j][i] * v[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= dot * cluster[j][i];
        }
        normalize(v);
    }
    return v;
}

inline double residual_norm(const TridiagonalH& m, double nu, const std::vector<double>& v) {
    const std::size_t n = m.diag.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = (m.diag[i] - nu) * v[i];
        if (i > 0) r += m.offdiag[i - 1] * v[i - 1];
        if (i + 1 < n) r += m.offdiag[i] * v[i + 1];
        s += r * r;
    }
    return std::sqrt(s);
}

}  // namespace detail

/// Number of eigenvalues of the infinite operator strictly above x (for
/// x > 4 lambda) or strictly below x (for x < 0).  The free semi-infinite
/// tails are eliminated exactly through their boundary Green's function,
/// which adds lambda / l(gamma(x)) to the two end diagonals; by inertia
/// additivity the Sturm count of the closed window then equals the count
/// for the infinite operator, independent of the window size.
inline int count_outside_exact(const PhysicalParams& p, int half_width, double x) {
    validate(p);
    if (half_width < 2)
        throw std::invalid_argument("half-width must be at least 2");
    const double gamma = x / (2.0 * p.lambda) - 1.0;
    if (!(std::abs(gamma) > 1.0))
        throw std::domain_error("count_outside_exact requires x outside [0, 4 lambda]");
    TridiagonalH t = build_truncated(p, half_width);
    const double closure = p.lambda / specfun::l(gamma);
    t.diag.front() += closure;
    t.diag.back() += closure;
    const int below = detail::count_below(t.diag, t.offdiag, x);
    if (x < 0.0) return below;
    return static_cast<int>(t.diag.size()) - below;
}

/// Total number of discrete eigenvalues (with multiplicity) outside the
/// closed band [ -edge_tol, 4 lambda + edge_tol ].
inline int bound_count_exact(const PhysicalParams& p, int half_width, double edge_tol = 1e-12) {
    return count_outside_exact(p, half_width, -edge_tol) +
           count_outside_exact(p, half_width, 4.0 * p.lambda + edge_tol);
}

struct BoundEig {
    double value = 0.0;
    double gap = 0.0;  // distance to the nearer band edge
};

struct OracleReport {
    std::vector<BoundEig> bound_eigs;  // ascending
    int half_width = 0;
    std::vector<double> residuals;     // ||T v - nu v|| per bound eigenvector
    double band_lo = 0.0;
    double band_hi = 0.0;
    int count_below_band = 0;  // Sturm count at band_lo - edge tolerance
    int count_above_band = 0;  // Sturm count at band_hi + edge tolerance
};

/// Locates every eigenvalue of the truncated matrix outside [0, 4 lambda]
/// (band-edge tolerance 1e-8, truncation shifts edge states by O(1/N^2))
/// by Sturm bisection to 1e-11 absolute, with inverse-iteration residuals.
inline OracleReport eigenvalues_outside_band(const TridiagonalH& m) {
    constexpr double edge_tol = 1e-8;
    constexpr double value_tol = 1e-11;
    const int n = static_cast<int>(m.diag.size());
    OracleReport rep;
    rep.half_width = m.half_width;
    rep.band_lo = 0.0;
    rep.band_hi = 4.0 * m.lambda;

    rep.count_below_band = detail::count_below(m.diag, m.offdiag, rep.band_lo - edge_tol);
    rep.count_above_band =
        n - detail::count_below(m.diag, m.offdiag, rep.band_hi + edge_tol);

    std::vector<int> indices;
    for (int k = 0; k < rep.count_below_band; ++k) indices.push_back(k);
    for (int k = n - rep.count_above_band; k < n; ++k) indices.push_back(k);

    std::vector<std::vector<double>> vecs;
    std::size_t cluster_begin = 0;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int k : indices) {
        const double nu = detail::eigenvalue_by_index(m, k, value_tol);
        BoundEig be;
        be.value = nu;
        be.gap = nu < rep.band_lo ? rep.band_lo - nu : nu - rep.band_hi;
        // eigenvalues closer than the bisection tolerance form one cluster;
        // the iteration is orthogonalized inside it
        if (!std::isnan(prev) && nu - prev > 100.0 * value_tol) cluster_begin = vecs.size();
        vecs.push_back(detail::inverse_iteration(m, nu, vecs, cluster_begin, vecs.size()));
        rep.residuals.push_back(detail::residual_norm(m, nu, vecs.back()));
        rep.bound_eigs.push_back(be);
        prev = nu;
    }
    return rep;
}

/// Orthonormal inverse-iteration eigenvectors for an eigenvalue of m;
/// `count` > 1 spans a degenerate cluster.
inline std::vector<std::vector<double>> bound_eigenvectors(const TridiagonalH& m, double nu,
                                                           int count = 1) {
    std::vector<std::vector<double>> vecs;
    for (int i = 0; i < count; ++i)
        vecs.push_back(detail::inverse_iteration(m, nu, vecs, 0, vecs.size()));
    return vecs;
}

/// Full eigendecomposition of the truncated matrix: values by bisection,
/// vectors by inverse iteration with reorthogonalization inside clusters of
/// nearly equal eigenvalues.
struct EigenDecomposition {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] pairs values[k]
};

inline EigenDecomposition full_decomposition(const TridiagonalH& m) {
    const int n = static_cast<int>(m.diag.size());
    EigenDecomposition d;
    d.values.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        d.values[static_cast<std::size_t>(k)] = detail::eigenvalue_by_index(m, k, 1e-12);

    const auto [glo, ghi] = detail::gershgorin(m);
    const double cluster_gap = std::max(1e-10, 1e-4 * (ghi - glo));
    d.vectors.reserve(static_cast<std::size_t>(n));
    std::size_t cluster_begin = 0;
    for (int k = 0; k < n; ++k) {
        const std::size_t j = static_cast<std::size_t>(k);
        if (k > 0 && d.values[j] - d.values[j - 1] > cluster_gap) cluster_begin = j;
        d.vectors.push_back(
            detail::inverse_iteration(m, d.values[j], d.vectors, cluster_begin, j));
    }
    return d;
}

/// Continuous-time evolution f(t) = exp(-i t H_N) f0 through the full
/// eigendecomposition of the truncated matrix.  f0 must span the window
/// -N..N (length 2N+1) and have positive norm; the norm is preserved to
/// the orthogonality of the computed eigenbasis.
inline std::vector<std::complex<double>> evolve(const PhysicalParams& p,
                                                std::span<const std::complex<double>> f0,
                                                double t, int half_width) {
    validate(p);
    if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
    const std::size_t n = 2 * static_cast<std::size_t>(half_width) + 1;
    if (f0.size() != n)
        throw std::invalid_argument("initial state must have length 2N+1");
    double nrm = 0.0;
    for (const auto& z : f0) nrm += std::norm(z);
    if (!(nrm > 0.0)) throw std::invalid_argument("initial state must be nonzero");

    const TridiagonalH m = build_truncated(p, half_width);
    const EigenDecomposition d = full_decomposition(m);

    std::vector<std::complex<double>> coeff(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += d.vectors[k][i] * f0[i];
        coeff[k] = c;
    }
    std::vector<std::complex<double>> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const std::complex<double> phase =
            std::exp(std::complex<double>(0.0, -d.values[k] * t)) * coeff[k];
        for (std::size_t i = 0; i < n; ++i) out[i] += phase * d.vectors[k][i];
    }
    return out;
}

inline std::vector<std::complex<double>> evolve(const PhysicalParams& p,
                                                const std::vector<std::complex<double>>& f0,
                                                double t, int half_width) {
    return evolve(p, std::span<const std::complex<double>>(f0), t, half_width);
}

}  // namespace latspec::oracle
