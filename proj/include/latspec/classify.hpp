#pragma once

#include <cmath>
#include <cstdlib>

#include "latspec/params.hpp"

namespace latspec {

/// The six regions of the (alpha, delta, sigma) partition, the alpha = -1
/// line treated separately, and an honest fallback for boundary strata a
/// nonzero probe tolerance may fail to classify.
enum class RegionTag {
    U1pp,           // U_1(+,+)
    U0pp,           // U_0(+,+)
    Um1pp,          // U_-1(+,+)
    Ump,            // U(-,+)
    Umm,            // U(-,-)
    Upm,            // U(+,-)
    AlphaMinusOne,
    Unclassified,
};

/// Case label of the spectral classification the region maps to.
enum class CaseLabel {
    A, B, C, D1, D2, E1, E2, F1, F2,
    T2MuKappa,    // alpha = -1, |delta|>1, |sigma|>1, mu != kappa
    T2Mu,         // alpha = -1, |delta|<=1, |sigma|>1
    T2Kappa,      // alpha = -1, |delta|>1, |sigma|<=1
    T2Empty,      // alpha = -1, |delta|<=1, |sigma|<=1
    T2Collision,  // alpha = -1, mu = kappa
    None,
};

struct Region {
    RegionTag tag = RegionTag::Unclassified;
    CaseLabel label = CaseLabel::None;
};

// tag spellings are comma-free so the CSV outputs stay trivially parseable
inline const char* to_string(RegionTag t) {
    switch (t) {
        case RegionTag::U1pp: return "U1(++)";
        case RegionTag::U0pp: return "U0(++)";
        case RegionTag::Um1pp: return "U-1(++)";
        case RegionTag::Ump: return "U(-+)";
        case RegionTag::Umm: return "U(--)";
        case RegionTag::Upm: return "U(+-)";
        case RegionTag::AlphaMinusOne: return "alpha=-1";
        case RegionTag::Unclassified: return "unclassified";
    }
    return "?";
}

inline const char* to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::A: return "a";
        case CaseLabel::B: return "b";
        case CaseLabel::C: return "c";
        case CaseLabel::D1: return "d1";
        case CaseLabel::D2: return "d2";
        case CaseLabel::E1: return "e1";
        case CaseLabel::E2: return "e2";
        case CaseLabel::F1: return "f1";
        case CaseLabel::F2: return "f2";
        case CaseLabel::T2MuKappa: return "T2-mu-kappa";
        case CaseLabel::T2Mu: return "T2-mu";
        case CaseLabel::T2Kappa: return "T2-kappa";
        case CaseLabel::T2Empty: return "T2-empty";
        case CaseLabel::T2Collision: return "T2-collision";
        case CaseLabel::None: return "";
    }
    return "?";
}

/// Number of discrete eigenvalues (counted with geometric multiplicity)
/// mandated by the case label; -1 when unclassified.
inline int expected_eigenvalue_count(const Region& r) {
    switch (r.label) {
        case CaseLabel::A: return 3;
        case CaseLabel::B: return 0;
        case CaseLabel::C: return 3;
        case CaseLabel::D1: return 1;
        case CaseLabel::D2: return 2;
        case CaseLabel::E1: return 2;
        case CaseLabel::E2: return 3;
        case CaseLabel::F1: return 1;
        case CaseLabel::F2: return 2;
        case CaseLabel::T2MuKappa: return 3;  // kappa carries multiplicity 2
        case CaseLabel::T2Mu: return 1;
        case CaseLabel::T2Kappa: return 2;
        case CaseLabel::T2Empty: return 0;
        case CaseLabel::T2Collision: return 3;
        case CaseLabel::None: return -1;
    }
    return -1;
}

namespace detail {

/// Three-way comparison against a reference with a symmetric dead zone:
/// +1 if x > ref + tol, -1 if x < ref - tol, 0 otherwise.  tol = 0 gives
/// exact floating comparisons.
inline int cmp(double x, double ref, double tol) {
    if (x > ref + tol) return 1;
    if (x < ref - tol) return -1;
    return 0;
}

}  // namespace detail

/// Region membership for a normalized parameter point.  The predicates are
/// sharp; `tol` widens every comparison's dead zone for callers probing near
/// boundaries and defaults to exact comparisons.
inline Region classify(const NormalizedParams& n, double tol = 0.0) {
    using detail::cmp;

    if (cmp(n.alpha, -1.0, tol) == 0) {
        const bool dk = cmp(std::abs(n.delta), 1.0, tol) > 0;   // kappa exists
        const bool ds = cmp(std::abs(n.sigma), 1.0, tol) > 0;   // mu outside the band
        if (dk && ds) {
            // mu = kappa exactly when sigma = gamma_delta
            const double gd = 0.5 * (n.delta + 1.0 / n.delta);
            const bool collision =
                n.sigma == gd ||
                std::abs(n.sigma - gd) <= 1e-14 * std::max(std::abs(n.sigma), std::abs(gd));
            return {RegionTag::AlphaMinusOne,
                    collision ? CaseLabel::T2Collision : CaseLabel::T2MuKappa};
        }
        if (ds) return {RegionTag::AlphaMinusOne, CaseLabel::T2Mu};
        if (dk) return {RegionTag::AlphaMinusOne, CaseLabel::T2Kappa};
        return {RegionTag::AlphaMinusOne, CaseLabel::T2Empty};
    }

    const int s1 = cmp(n.c1, 0.0, tol);
    const int s2 = cmp(n.c2, 0.0, tol);
    const int d1 = cmp(n.delta, 1.0, tol);   // delta vs +1
    const int dm = cmp(n.delta, -1.0, tol);  // delta vs -1
    const int g1 = cmp(n.sigma, 1.0, tol);
    const int gm = cmp(n.sigma, -1.0, tol);
    const bool abs_delta_le1 = d1 <= 0 && dm >= 0;
    const bool abs_sigma_le1 = g1 <= 0 && gm >= 0;
    const bool kappa_exists = d1 > 0 || dm < 0;  // |delta| > 1

    if (s1 > 0 && s2 > 0 && d1 > 0 && g1 > 0)
        return {RegionTag::U1pp, CaseLabel::A};
    if (s1 >= 0 && s2 >= 0 && abs_delta_le1 && abs_sigma_le1)
        return {RegionTag::U0pp, CaseLabel::B};
    if (s1 > 0 && s2 > 0 && dm < 0 && gm < 0)
        return {RegionTag::Um1pp, CaseLabel::C};
    if ((s1 < 0 && s2 >= 0) || (s1 == 0 && s2 > 0 && d1 > 0 && g1 > 0))
        return {RegionTag::Ump, kappa_exists ? CaseLabel::D2 : CaseLabel::D1};
    if (s1 < 0 && s2 < 0)
        return {RegionTag::Umm, kappa_exists ? CaseLabel::E2 : CaseLabel::E1};
    if ((s1 >= 0 && s2 < 0) || (s1 > 0 && s2 == 0 && dm < 0 && gm < 0))
        return {RegionTag::Upm, kappa_exists ? CaseLabel::F2 : CaseLabel::F1};

    return {RegionTag::Unclassified, CaseLabel::None};
}

}  // namespace latspec
