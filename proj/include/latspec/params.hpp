#pragma once

#include <cmath>
#include <stdexcept>

namespace latspec {

/// Physical couplings of the lattice Hamiltonian H = H0 + H1.
///
/// H0 is the nearest-neighbor Laplacian with hopping strength lambda > 0.
/// H1 touches only the sites -1, 0, 1: it adds lambda1 to the two bonds at
/// site 0, mu to the on-site energy at 0 and mu1 at the sites +-1.
struct PhysicalParams {
    double lambda = 1.0;
    double lambda1 = 0.0;
    double mu = 0.0;
    double mu1 = 0.0;
};

/// Dimensionless couplings plus the two boundary values c1, c2 whose signs
/// drive the region classification.
struct NormalizedParams {
    double alpha = 0.0;  // lambda1 / lambda
    double delta = 0.0;  // mu1 / lambda
    double sigma = 0.0;  // (2*lambda1 + mu) / (2*lambda)
    double c1 = 0.0;     // (delta-1)(sigma-1) - (alpha+1)^2
    double c2 = 0.0;     // (delta+1)(sigma+1) - (alpha+1)^2
};

/// Right-hand side of the secular equation, (alpha+1)^2.
inline double coupling_target(double alpha) {
    const double a = alpha + 1.0;
    return a * a;
}

inline NormalizedParams make_normalized(double alpha, double delta, double sigma) {
    const double t = coupling_target(alpha);
    NormalizedParams n;
    n.alpha = alpha;
    n.delta = delta;
    n.sigma = sigma;
    n.c1 = (delta - 1.0) * (sigma - 1.0) - t;
    n.c2 = (delta + 1.0) * (sigma + 1.0) - t;
    return n;
}

inline void validate(const PhysicalParams& p) {
    if (!(std::isfinite(p.lambda) && std::isfinite(p.lambda1) &&
          std::isfinite(p.mu) && std::isfinite(p.mu1)))
        throw std::domain_error("physical parameters must all be finite");
    if (!(p.lambda > 0.0))
        throw std::domain_error("lambda must be positive");
}

inline NormalizedParams normalize(const PhysicalParams& p) {
    validate(p);
    return make_normalized(p.lambda1 / p.lambda, p.mu1 / p.lambda,
                           (2.0 * p.lambda1 + p.mu) / (2.0 * p.lambda));
}

/// Couplings with lambda = 1 realizing a given normalized triple.
inline PhysicalParams to_physical(double alpha, double delta, double sigma) {
    PhysicalParams p;
    p.lambda = 1.0;
    p.lambda1 = alpha;
    p.mu = 2.0 * (sigma - alpha);
    p.mu1 = delta;
    return p;
}

}  // namespace latspec
