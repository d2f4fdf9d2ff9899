#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "latspec/classify.hpp"
#include "latspec/params.hpp"
#include "latspec/specfun.hpp"

namespace latspec {

enum class EigenvalueOrigin { ExplicitKappa, RootOfF, AlphaMinusOneMu };
enum class Parity { Odd, Even, Both };

inline const char* to_string(EigenvalueOrigin o) {
    switch (o) {
        case EigenvalueOrigin::ExplicitKappa: return "ExplicitKappa";
        case EigenvalueOrigin::RootOfF: return "RootOfF";
        case EigenvalueOrigin::AlphaMinusOneMu: return "AlphaMinusOneMu";
    }
    return "?";
}

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::Odd: return "odd";
        case Parity::Even: return "even";
        case Parity::Both: return "both";
    }
    return "?";
}

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

/// One discrete (or embedded, when flagged) eigenvalue of H.
struct EigenvalueRecord {
    double nu = 0.0;      // eigenvalue, energy units
    double gamma = 0.0;   // nu/(2 lambda) - 1
    EigenvalueOrigin origin = EigenvalueOrigin::RootOfF;
    Parity parity = Parity::Even;
    int multiplicity = 1;
    std::optional<Bracket> bracket;  // gamma interval that contained the root
    bool embedded = false;           // nu inside [0, 4 lambda]
};

/// Bookkeeping of the case analysis: the zero gamma_delta of l - delta when
/// |delta| >= 1, and the ordered pair (gamma_min, gamma_max) of the zeros of
/// F on the relevant side.
struct SolverBrackets {
    std::optional<double> gamma_delta;
    std::optional<double> gamma_min;
    std::optional<double> gamma_max;
    double target = 0.0;  // (alpha+1)^2
};

/// Unique root of l(gamma) = delta, (delta^2+1)/(2 delta); requires
/// |delta| >= 1 for |gamma_delta| >= 1.
inline double gamma_delta_of(double delta) {
    if (!(std::abs(delta) >= 1.0))
        throw std::domain_error("gamma_delta requires |delta| >= 1");
    return 0.5 * (delta + 1.0 / delta);
}

/// Explicit eigenvalue kappa = (mu1 + lambda)^2 / mu1 = lambda (delta+1)^2 / delta.
/// Defined for mu1 != 0; it is an actual eigenvalue only when |delta| > 1.
inline double kappa(const PhysicalParams& p) {
    validate(p);
    if (p.mu1 == 0.0)
        throw std::domain_error("kappa requires mu1 != 0");
    const double s = p.mu1 + p.lambda;
    return s * s / p.mu1;
}

inline SolverBrackets solver_brackets(const NormalizedParams& n) {
    SolverBrackets b;
    b.target = coupling_target(n.alpha);
    if (std::abs(n.delta) >= 1.0) {
        const double gd = gamma_delta_of(n.delta);
        b.gamma_delta = gd;
        b.gamma_min = std::min(n.sigma, gd);
        b.gamma_max = std::max(n.sigma, gd);
    }
    return b;
}

struct SecularRoot {
    double gamma = 0.0;
    Bracket bracket;
};

namespace detail {

/// Bisection with a guarded secant step that never leaves the bracket.
/// f is strictly monotone across [lo, hi] and f(lo) - target, f(hi) - target
/// have opposite signs.  Refines until the bracket is below 1e-13 absolute
/// (or a few ulps for large gamma).
template <class Fn>
double bracketed_root(Fn&& f, double lo, double hi, double target) {
    double a = lo, b = hi;
    double fa = f(a) - target, fb = f(b) - target;
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::logic_error("secular root not bracketed");

    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 400; ++it) {
        const double width = b - a;
        const double floor_w =
            std::max(1e-13, 8.0 * eps * std::max({1.0, std::abs(a), std::abs(b)}));
        if (width <= floor_w) break;

        double m;
        if (it % 2 == 0 && fb != fa) {
            // secant candidate, clipped well inside the bracket
            m = b - fb * (b - a) / (fb - fa);
            const double guard = 0.125 * width;
            if (!(m > a + guard && m < b - guard)) m = 0.5 * (a + b);
        } else {
            m = 0.5 * (a + b);
        }
        const double fm = f(m) - target;
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    return 0.5 * (a + b);
}

/// Doubles an offset away from `start` until f exceeds target (F -> +inf at
/// both ends of the real axis).  dir = +1 grows right, -1 grows left.
template <class Fn>
double grow_until_above(Fn&& f, double start, double target, int dir) {
    double step = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double x = start + dir * step;
        if (f(x) > target) return x;
        step *= 2.0;
    }
    throw std::runtime_error(
        "failed to bracket a secular root in 200 doublings; "
        "region classification is inconsistent");
}

}  // namespace detail

/// All roots of F(gamma) = (alpha+1)^2 with |gamma| > 1 guaranteed by the
/// region, each with the bracket that contained it.  Requires alpha != -1.
inline std::vector<SecularRoot> solve_secular(const NormalizedParams& n, const Region& region) {
    if (region.tag == RegionTag::AlphaMinusOne)
        throw std::invalid_argument("solve_secular requires alpha != -1");
    if (region.tag == RegionTag::Unclassified)
        throw std::invalid_argument("solve_secular needs a classified region");

    const double target = coupling_target(n.alpha);
    auto F = [&](double gamma) { return specfun::secular_F(gamma, n.delta, n.sigma); };

    // zeros of F on each side of the band
    std::vector<double> zr, zl;
    if (n.sigma > 1.0) zr.push_back(n.sigma);
    if (n.sigma < -1.0) zl.push_back(n.sigma);
    if (n.delta > 1.0) zr.push_back(gamma_delta_of(n.delta));
    if (n.delta < -1.0) zl.push_back(gamma_delta_of(n.delta));

    std::vector<SecularRoot> roots;
    auto push = [&](double lo, double hi) {
        const double g = detail::bracketed_root(F, lo, hi, target);
        roots.push_back({g, {lo, hi}});
    };
    auto one_root_right = [&] {
        double start = 1.0;
        for (double z : zr) start = std::max(start, z);
        push(start, detail::grow_until_above(F, start, target, +1));
    };
    auto one_root_left = [&] {
        double start = -1.0;
        for (double z : zl) start = std::min(start, z);
        push(detail::grow_until_above(F, start, target, -1), start);
    };

    switch (region.tag) {
        case RegionTag::U1pp: {
            // F decreases from F(1) > target to 0 on (1, gamma_min) and
            // increases through target beyond gamma_max
            const double gmin = std::min(n.sigma, gamma_delta_of(n.delta));
            const double gmax = std::max(n.sigma, gamma_delta_of(n.delta));
            push(1.0, gmin);
            push(gmax, detail::grow_until_above(F, gmax, target, +1));
            break;
        }
        case RegionTag::Um1pp: {
            const double gmin = std::min(n.sigma, gamma_delta_of(n.delta));
            const double gmax = std::max(n.sigma, gamma_delta_of(n.delta));
            push(gmax, -1.0);
            push(detail::grow_until_above(F, gmin, target, -1), gmin);
            break;
        }
        case RegionTag::Ump:
            one_root_right();
            break;
        case RegionTag::Umm:
            one_root_right();
            one_root_left();
            break;
        case RegionTag::Upm:
            one_root_left();
            break;
        case RegionTag::U0pp:
            break;
        default:
            break;
    }
    std::sort(roots.begin(), roots.end(),
              [](const SecularRoot& x, const SecularRoot& y) { return x.gamma < y.gamma; });
    return roots;
}

/// D'(alpha, delta, sigma, gamma) =
///   -h(gamma) l(gamma)^-1 (F(gamma) - (alpha+1)^2) (l(gamma) - delta),
/// the determinant of the reduced 3x3 system; vanishes exactly at the
/// discrete eigenvalues.
inline double determinant_dprime(const NormalizedParams& n, double gamma) {
    specfun::require_outside_band(gamma, "determinant_dprime");
    const double lg = specfun::l(gamma);
    const double F = (gamma - n.sigma) * (lg - n.delta);
    return -specfun::h(gamma) / lg * (F - coupling_target(n.alpha)) * (lg - n.delta);
}

/// Coefficients of the reduced linear system in (f_0, f_1', f_-1'): a 2x2
/// block coupling f_0 and f_1' plus one decoupled scalar on f_-1'.
struct SystemCoefficients {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;
    double e = 0.0;  // delta (g - v) - 1
};

struct RankResult {
    int rank = 0;
    SystemCoefficients coeffs;
    std::array<double, 3> singular_values{};  // block pair then |e|
};

/// Numerical rank of the reduced system at gamma; singular values below
/// 1e-9 * max treated as zero.  Multiplicity of an eigenvalue at gamma is
/// 3 - rank.
inline RankResult system_rank(const NormalizedParams& n, double gamma) {
    specfun::require_outside_band(gamma, "system_rank");
    const double g = specfun::g(gamma);
    const double h = specfun::h(gamma);
    const double v = specfun::v(gamma);

    RankResult r;
    r.coeffs.a11 = 1.0 - n.alpha * h - n.sigma * g;
    r.coeffs.a12 = n.alpha * g + n.delta * h;
    r.coeffs.a21 = n.sigma * h + n.alpha * v;
    r.coeffs.a22 = 1.0 - n.alpha * h - n.delta * v;
    r.coeffs.e = n.delta * (g - v) - 1.0;

    // closed-form singular values of the 2x2 block
    const double q = r.coeffs.a11 * r.coeffs.a11 + r.coeffs.a12 * r.coeffs.a12 +
                     r.coeffs.a21 * r.coeffs.a21 + r.coeffs.a22 * r.coeffs.a22;
    const double det = r.coeffs.a11 * r.coeffs.a22 - r.coeffs.a12 * r.coeffs.a21;
    const double disc = std::sqrt(std::max(0.0, q * q - 4.0 * det * det));
    const double s1 = std::sqrt(0.5 * (q + disc));
    const double s2 = s1 > 0.0 ? std::abs(det) / s1 : 0.0;

    r.singular_values = {s1, s2, std::abs(r.coeffs.e)};
    // the coefficients are differences of terms of this magnitude; a fully
    // cancelled system must read as rank 0 even though roundoff leaves
    // singular values at the eps level
    const double assembly = std::max(
        {1.0, std::abs(n.alpha) * std::max({std::abs(g), std::abs(h), std::abs(v)}),
         std::abs(n.delta) * std::max({std::abs(g), std::abs(h), std::abs(v)}),
         std::abs(n.sigma) * std::max({std::abs(g), std::abs(h), std::abs(v)})});
    const double cut = 1e-9 * std::max({s1, s2, std::abs(r.coeffs.e), assembly});
    for (double s : r.singular_values)
        if (s > cut) ++r.rank;
    return r;
}

inline int multiplicity_at(const NormalizedParams& n, double gamma) {
    return 3 - system_rank(n, gamma).rank;
}

/// Full discrete spectrum of H, assembled per the classification: secular
/// roots (even eigenvectors) plus the explicit kappa (odd eigenvector) when
/// |delta| > 1 for alpha != -1, and the explicit {mu, kappa} sets on the
/// alpha = -1 line.  When alpha = -1 and mu falls inside [0, 4 lambda] an
/// extra record flagged `embedded` is appended; it is not part of the
/// discrete spectrum.  Records are sorted by nu, embedded ones last.
inline std::vector<EigenvalueRecord> discrete_spectrum(const PhysicalParams& p) {
    validate(p);
    const NormalizedParams n = normalize(p);
    const Region region = classify(n);
    const double two_lambda = 2.0 * p.lambda;

    std::vector<EigenvalueRecord> records;
    // keeps the record invariant gamma = nu/(2 lambda) - 1 bit-exact
    auto gamma_of = [&](double nu) { return nu / two_lambda - 1.0; };

    if (region.tag == RegionTag::AlphaMinusOne) {
        const bool kappa_exists = std::abs(n.delta) > 1.0;
        const bool mu_discrete = std::abs(n.sigma) > 1.0;

        if (kappa_exists) {
            const double k = kappa(p);
            const bool collision = mu_discrete && (p.mu == k ||
                std::abs(p.mu - k) <= 1e-14 * std::max(std::abs(p.mu), std::abs(k)));
            EigenvalueRecord rec;
            rec.nu = k;
            rec.gamma = gamma_of(k);
            rec.origin = EigenvalueOrigin::ExplicitKappa;
            rec.parity = Parity::Both;
            // kappa spans the odd and even vectors (rank of the reduced
            // system is 1); the merged mu = kappa cluster additionally
            // carries e_0, a full three-dimensional eigenspace
            rec.multiplicity = collision ? 3 : 2;
            records.push_back(rec);
            if (mu_discrete && !collision) {
                EigenvalueRecord mrec;
                mrec.nu = p.mu;
                mrec.gamma = gamma_of(p.mu);
                mrec.origin = EigenvalueOrigin::AlphaMinusOneMu;
                mrec.parity = Parity::Even;  // eigenvector is exactly e_0
                mrec.multiplicity = 1;
                records.push_back(mrec);
            }
        } else if (mu_discrete) {
            EigenvalueRecord mrec;
            mrec.nu = p.mu;
            mrec.gamma = gamma_of(p.mu);
            mrec.origin = EigenvalueOrigin::AlphaMinusOneMu;
            mrec.parity = Parity::Even;
            mrec.multiplicity = 1;
            records.push_back(mrec);
        }
        std::sort(records.begin(), records.end(),
                  [](const EigenvalueRecord& x, const EigenvalueRecord& y) { return x.nu < y.nu; });

        if (!mu_discrete) {
            // He_0 = mu e_0 with mu inside the essential band
            EigenvalueRecord erec;
            erec.nu = p.mu;
            erec.gamma = gamma_of(p.mu);
            erec.origin = EigenvalueOrigin::AlphaMinusOneMu;
            erec.parity = Parity::Even;
            erec.multiplicity = 1;
            erec.embedded = true;
            records.push_back(erec);
        }
        return records;
    }

    // every eigenvalue is simple for alpha != -1
    for (const SecularRoot& root : solve_secular(n, region)) {
        EigenvalueRecord rec;
        rec.nu = two_lambda * (root.gamma + 1.0);
        rec.gamma = gamma_of(rec.nu);
        rec.origin = EigenvalueOrigin::RootOfF;
        rec.parity = Parity::Even;
        rec.multiplicity = 1;
        rec.bracket = root.bracket;
        records.push_back(rec);
    }
    if (std::abs(n.delta) > 1.0) {
        EigenvalueRecord rec;
        rec.nu = kappa(p);
        rec.gamma = gamma_of(rec.nu);
        rec.origin = EigenvalueOrigin::ExplicitKappa;
        rec.parity = Parity::Odd;
        rec.multiplicity = 1;
        records.push_back(rec);
    }
    std::sort(records.begin(), records.end(),
              [](const EigenvalueRecord& x, const EigenvalueRecord& y) { return x.nu < y.nu; });
    return records;
}

/// Sum of multiplicities of the non-embedded records.
inline int discrete_count(const std::vector<EigenvalueRecord>& records) {
    int c = 0;
    for (const auto& r : records)
        if (!r.embedded) c += r.multiplicity;
    return c;
}

}  // namespace latspec
