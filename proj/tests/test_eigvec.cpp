#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "latspec/eigvec.hpp"
#include "latspec/model.hpp"

using namespace latspec;
using Catch::Approx;

namespace {

const PhysicalParams kWorked{1.0, 0.0, 4.0, 3.0};
const PhysicalParams kT2{1.0, -1.0, 6.0, 3.0};
constexpr double kGamma1 = 1.1740696735598142;
constexpr double kGamma2 = 2.53584874666829;

double rel_residual(const PhysicalParams& p, const EigenvectorTable& t, double nu) {
    const auto hf = apply_hamiltonian(p, t.values);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < hf.size(); ++i) {
        const double r = hf[i] - nu * t.values[i];
        num += r * r;
        den += t.values[i] * t.values[i];
    }
    return std::sqrt(num / den);
}

double nu_of(const EigenvectorTable& t, double lambda) {
    return 2.0 * lambda * (t.gamma + 1.0);
}

void check_interior_recursion(const EigenvectorTable& t, double lambda, double nu) {
    for (int k = 2; k < t.half_width - 1; ++k) {
        for (int sgn : {1, -1}) {
            const int site = sgn * k;
            const double lhs = lambda * (-t.value_at(site + 1) + 2.0 * t.value_at(site) -
                                         t.value_at(site - 1));
            CHECK(std::abs(lhs - nu * t.value_at(site)) <=
                  1e-9 * std::max(std::abs(nu * t.value_at(site)), 1e-300));
        }
    }
}

}  // namespace

TEST_CASE("odd kappa eigenvector") {
    const auto t = odd_eigenvector(kWorked, 200);
    const double nu = 16.0 / 3.0;

    CHECK(t.parity == Parity::Odd);
    CHECK(t.value_at(0) == 0.0);
    for (int k = 1; k <= t.half_width; ++k)
        CHECK(t.value_at(-k) == -t.value_at(k));

    CHECK(rel_residual(kWorked, t, nu) <= 1e-9);

    // decay |f_{k+1}/f_k| -> 1/l(gamma_delta) = 1/3
    CHECK(t.decay_rate == Approx(1.0 / 3.0).epsilon(1e-14));
    for (int k = 10; k <= 100; ++k)
        CHECK(std::abs(t.value_at(k + 1) / t.value_at(k)) ==
              Approx(t.decay_rate).epsilon(1e-8));

    double norm2 = 0.0;
    for (double x : t.values) norm2 += x * x;
    CHECK(norm2 == Approx(1.0).margin(1e-12));

    check_interior_recursion(t, 1.0, nu);
}

TEST_CASE("even eigenvectors at the secular roots") {
    for (double gamma : {kGamma1, kGamma2}) {
        const auto t = even_eigenvector(kWorked, gamma, 200);
        const double nu = nu_of(t, 1.0);
        CHECK(t.parity == Parity::Even);
        for (int k = 1; k <= t.half_width; ++k)
            CHECK(t.value_at(-k) == t.value_at(k));
        CHECK(rel_residual(kWorked, t, nu) <= 1e-9);
        check_interior_recursion(t, 1.0, nu);
        double norm2 = 0.0;
        for (double x : t.values) norm2 += x * x;
        CHECK(norm2 == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("rejections") {
    // gamma = 3 is not a root of the secular equation
    CHECK_THROWS_AS(even_eigenvector(kWorked, 3.0, 100), std::domain_error);
    // free Hamiltonian: no roots exist anywhere outside the band
    CHECK_THROWS_AS(even_eigenvector({1.0, 0.0, 0.0, 0.0}, 2.0, 100), std::domain_error);
    // no kappa for |delta| <= 1
    CHECK_THROWS_AS(odd_eigenvector({1.0, 0.0, 0.0, 0.5}, 100), std::domain_error);
    // even construction is the alpha != -1 path
    CHECK_THROWS_AS(even_eigenvector(kT2, 5.0 / 3.0, 100), std::domain_error);
    // and the explicit path requires alpha = -1
    CHECK_THROWS_AS(alpha_minus_one_vectors(kWorked, 100), std::domain_error);
    CHECK_THROWS_AS(odd_eigenvector(kWorked, 4), std::invalid_argument);
}

TEST_CASE("alpha = -1 vector set") {
    const auto vecs = alpha_minus_one_vectors(kT2, 200);
    REQUIRE(vecs.size() == 3);

    const auto& e0 = vecs[0];
    const auto& odd = vecs[1];
    const auto& even = vecs[2];

    // e_0 is exact and finitely supported: zero residual
    CHECK(e0.value_at(0) == 1.0);
    CHECK(rel_residual(kT2, e0, 6.0) == 0.0);
    CHECK(e0.decay_rate == 0.0);

    CHECK(odd.parity == Parity::Odd);
    CHECK(even.parity == Parity::Even);
    CHECK(rel_residual(kT2, odd, 16.0 / 3.0) <= 1e-9);
    CHECK(rel_residual(kT2, even, 16.0 / 3.0) <= 1e-9);

    // parity makes the kappa pair orthogonal without any tolerance when the
    // mirrored contributions are accumulated together
    double dot = odd.value_at(0) * even.value_at(0);
    for (int k = 1; k <= odd.half_width; ++k)
        dot += odd.value_at(-k) * even.value_at(-k) + odd.value_at(k) * even.value_at(k);
    CHECK(dot == 0.0);

    // both kappa vectors are orthogonal to e_0 within truncation error
    CHECK(std::abs(odd.value_at(0)) == 0.0);
    CHECK(std::abs(even.value_at(0)) <= 1e-12);
}

TEST_CASE("only e_0 on the alpha = -1 line without kappa") {
    const auto vecs = alpha_minus_one_vectors({1.0, -1.0, 2.0, 0.0}, 100);
    REQUIRE(vecs.size() == 1);
    CHECK(vecs[0].value_at(0) == 1.0);
    CHECK(rel_residual({1.0, -1.0, 2.0, 0.0}, vecs[0], 2.0) == 0.0);
}

TEST_CASE("collision keeps a full vector basis") {
    const PhysicalParams p{1.0, -1.0, 16.0 / 3.0, 3.0};
    const auto vecs = alpha_minus_one_vectors(p, 150);
    REQUIRE(vecs.size() == 3);
    for (const auto& t : vecs)
        CHECK(rel_residual(p, t, 16.0 / 3.0) <= 1e-9);
}

TEST_CASE("eigenvectors of distinct eigenvalues are orthogonal") {
    const auto a = even_eigenvector(kWorked, kGamma1, 200);
    const auto b = even_eigenvector(kWorked, kGamma2, 200);
    const auto c = odd_eigenvector(kWorked, 200);
    auto dot = [](const EigenvectorTable& x, const EigenvectorTable& y) {
        // mirrored pairs together, so opposite-parity products cancel exactly
        double s = x.value_at(0) * y.value_at(0);
        for (int k = 1; k <= x.half_width; ++k)
            s += x.value_at(-k) * y.value_at(-k) + x.value_at(k) * y.value_at(k);
        return s;
    };
    CHECK(std::abs(dot(a, b)) <= 1e-8);
    CHECK(dot(a, c) == 0.0);  // parity
    CHECK(dot(b, c) == 0.0);
}

TEST_CASE("residuals shrink geometrically with the window") {
    // weakly bound root: delta = 0, sigma = 0.2 puts the root just above 1
    const PhysicalParams p = to_physical(0.0, 0.0, 0.2);
    const auto n = normalize(p);
    const auto roots = solve_secular(n, classify(n));
    REQUIRE(roots.size() == 1);
    const double gamma = roots[0].gamma;
    const double rate = specfun::decay_rate(gamma);
    CHECK(rate > 0.75);  // slow decay, so truncation dominates

    double prev = 0.0;
    for (int N : {50, 100, 200}) {
        const auto t = even_eigenvector(p, gamma, N);
        const double r = rel_residual(p, t, nu_of(t, 1.0));
        CHECK(r <= std::max(1e-9, 10.0 * std::pow(rate, N)));
        if (N > 50) {
            // geometric shrink until the root-residual floor
            CHECK(r <= std::max(1e-11, 30.0 * prev * std::pow(rate, N / 2)));
        }
        prev = r;
    }
}
