#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ptsusy/pt_core.hpp"
#include "ptsusy/verify.hpp"
#include "support.hpp"

using namespace ptsusy;
using testsupport::rel;

TEST_CASE("parameters are validated") {
    CHECK_THROWS_AS(PTParams(1.0, 4.0), ValidationError);
    CHECK_THROWS_AS(PTParams(3.0, 0.5), ValidationError);
    CHECK(PTParams(3, 4).swapped() == PTParams(4, 3));
}

TEST_CASE("potential values") {
    CHECK(rel(potential_value(PTParams(3, 4), kHalfPi / 2), 18.0) < 1e-14);
    CHECK(rel(potential_value(PTParams(2, 2), kHalfPi / 2), 4.0) < 1e-14);
    double x = 0.3, s = std::sin(x), c = std::cos(x);
    CHECK(rel(potential_value(PTParams(5, 8), x), 20.0 / (2 * s * s) + 56.0 / (2 * c * c)) < 1e-14);
    CHECK_THROWS_AS(potential_value(PTParams(3, 4), 0.0), DomainError);
    CHECK_THROWS_AS(potential_value(PTParams(3, 4), kHalfPi), DomainError);
}

TEST_CASE("energy levels") {
    PTParams p34(3, 4), p58(5, 8);
    double e34[] = {24.5, 40.5, 60.5, 84.5};
    for (int n = 0; n < 4; ++n) CHECK(eigen_energy(p34, n) == e34[n]);
    double e58[] = {84.5, 112.5, 144.5, 180.5, 220.5, 264.5, 312.5, 364.5};
    for (int n = 0; n < 8; ++n) CHECK(eigen_energy(p58, n) == e58[n]);
    for (int n = 0; n < 6; ++n)
        CHECK(eigen_energy(p58, n + 1) - eigen_energy(p58, n) == doctest::Approx(2 * (p58.mu() + 2 * n + 1)));
    CHECK(band_index(p58, 50.0) == 0);
    CHECK(band_index(p58, 100.0) == 1);
    CHECK(!band_index(p58, 112.5).has_value());
    CHECK(eigen_index(p58, 144.5) == 2);
}

TEST_CASE("normalized eigenfunctions") {
    PTParams p(5, 8);
    for (int n = 0; n < 5; ++n) {
        auto psi = eigenfunction(p, n);
        double norm = verify::quadrature([&](double x) { return psi.value(x); }, 2, 0.0, kHalfPi,
                                         {p.lambda(), p.nu()});
        CHECK(std::abs(norm - 1.0) < 1e-10);
        CHECK(count_nodes(psi) == n);
        CHECK(psi.value(0.05) > 0.0);
    }
    // Independent high-precision value.
    CHECK(std::abs(eigenfunction(p, 2).value(0.6) - (-0.661456878244315233)) < 1e-12);
}

TEST_CASE("normalization matches the corrected closed form") {
    PTParams p(3, 4);
    double l = p.lambda(), nu = p.nu(), mu = p.mu();
    for (int n = 0; n < 5; ++n) {
        double n2 = 2 * (mu + 2 * n) * std::tgamma(mu + n) * specfun::pochhammer(l + 0.5, n) /
                    (std::tgamma(n + 1.0) * specfun::pochhammer(nu + 0.5, n) * std::tgamma(l + 0.5) *
                     std::tgamma(nu + 0.5));
        SchrodingerSolution raw(p, physical_seed(p, n));
        double ratio = eigenfunction(p, n).value(0.4) / raw.value(0.4);
        CHECK(rel(std::abs(ratio), std::sqrt(n2)) < 1e-10);
    }
}

TEST_CASE("eigenfunctions satisfy the equation and are orthogonal") {
    PTParams p(3, 4);
    verify::OracleConfig cfg;
    auto v = [&](double x) { return potential_value(p, x); };
    for (int n = 0; n < 5; ++n) {
        auto psi = eigenfunction(p, n);
        CHECK(verify::residual_norm(v, [&](double x) { return psi.value(x); }, eigen_energy(p, n), cfg) < 1e-6);
        for (int m = 0; m < n; ++m) {
            auto phi = eigenfunction(p, m);
            double o = verify::quadrature([&](double x) { return psi.value(x) * phi.value(x); }, 1, 0.0, kHalfPi,
                                          {2 * p.lambda(), 2 * p.nu()});
            CHECK(std::abs(o) < 1e-10);
        }
    }
}

TEST_CASE("endpoint exponents of the general solution") {
    PTParams p(5, 8);
    CHECK(SchrodingerSolution(p, regular_seed(60.0)).left_exponent() == 5.0);
    CHECK(SchrodingerSolution(p, general_seed(60.0, {0.0, 1.0})).left_exponent() == -4.0);
    CHECK(SchrodingerSolution(p, physical_seed(p, 1)).right_exponent() == 8.0);
    CHECK(SchrodingerSolution(p, regular_seed(60.0)).right_exponent() == -7.0);
    CHECK(SchrodingerSolution(p, regular_seed(60.0, Frame::right)).right_exponent() == 8.0);
}

TEST_CASE("left and right expansions agree near the middle") {
    PTParams p(5, 8);
    for (auto seed : {regular_seed(60.0), seed_from_q(p, 115.52, -1.0), general_seed(cplx(176.344, 1.5), {1.0, 0.3})}) {
        SchrodingerSolution u(p, seed);
        for (double x : {0.7, 0.7854, 0.85}) {
            cplx l = 0, r = 0;
            for (const auto& t : u.expand_in(x, Frame::left))
                l += t.coeff * std::pow(std::sin(x), t.p) * std::pow(std::cos(x), t.r) * t.f;
            for (const auto& t : u.expand_in(x, Frame::right))
                r += t.coeff * std::pow(std::sin(x), t.p) * std::pow(std::cos(x), t.r) * t.f;
            CHECK(std::abs(l - r) <= 1e-11 * std::max(1.0, std::abs(l)));
        }
    }
}

TEST_CASE("Wronskian of two solutions at one energy is constant") {
    PTParams p(3, 4);
    SchrodingerSolution u1(p, regular_seed(10.0)), u2(p, general_seed(10.0, {0.0, 1.0}));
    auto w = [&](double x) {
        auto a = u1.evaluate(x), b = u2.evaluate(x);
        return (a.u * b.du - b.u * a.du).real();
    };
    double w0 = w(0.3);
    for (double x : {0.05, 0.6, 1.0, 1.4}) CHECK(std::abs(w(x) - w0) < 1e-9 * std::abs(w0));
}

TEST_CASE("seed residual") {
    PTParams p(5, 8);
    verify::OracleConfig cfg;
    SchrodingerSolution u(p, seed_from_q(p, 115.52, 1.0));
    // Relative residual of -u''/2 + V u - eps u from finite differences.
    double worst = 0.0;
    for (double x : testsupport::uniform(0.1, 1.4, 200)) {
        double h = 1e-4;
        double d2 = (u.value(x + h) - 2 * u.value(x) + u.value(x - h)) / (h * h);
        double r = -d2 / 2 + (potential_value(p, x) - 115.52) * u.value(x);
        worst = std::max(worst, std::abs(r) / (1 + std::abs(115.52 * u.value(x))));
    }
    CHECK(worst < 1e-4);
    (void)cfg;
}

TEST_CASE("q seeds: poles and node rule") {
    PTParams p(5, 8);
    CHECK_THROWS_AS(seed_from_q(p, 112.5, 1.0), PoleError);
    CHECK(count_nodes(SchrodingerSolution(p, seed_from_q(p, 115.52, -1.0))) == 3);
    for (int i = 0; i < 4; ++i) {
        double lo = i == 0 ? 40.0 : eigen_energy(p, i - 1);
        double eps = (lo + eigen_energy(p, i)) / 2;
        CHECK(count_nodes(SchrodingerSolution(p, seed_from_q(p, eps, 1.0))) == i);
        CHECK(count_nodes(SchrodingerSolution(p, seed_from_q(p, eps, -1.0))) == i + 1);
    }
}

TEST_CASE("mirror reproduces the solution at pi/2 - x") {
    PTParams p(5, 8);
    for (auto seed : {regular_seed(60.0), seed_from_q(p, 115.52, 1.0), general_seed(150.0, {0.4, -1.2})}) {
        SchrodingerSolution u(p, seed);
        auto [ms, mp] = mirror(seed, p);
        CHECK(mp == PTParams(8, 5));
        SchrodingerSolution v(mp, ms);
        CHECK(v.left_exponent() == u.right_exponent());
        for (double x : {0.1, 0.5, 0.9, 1.3}) CHECK(std::abs(v.value(kHalfPi - x) - u.value(x)) <= 1e-11 * std::max(1.0, std::abs(u.value(x))));
    }
}

TEST_CASE("printed mirror coefficients are the inverse connection") {
    PTParams p(5, 8);
    cplx eps = 150.0;
    auto m = printed_mirror_coefficients(p, eps);
    Coefficients in{0.4, -1.2};
    auto [ms, mp] = mirror(general_seed(eps, in), p);
    auto c = connection_matrix(p, eps);
    CHECK(std::abs(ms.coeffs.A - (c.c11 * in.A + c.c12 * in.B)) < 1e-9 * std::abs(ms.coeffs.A));
    cplx a2 = ms.coeffs.A, b2 = ms.coeffs.B;
    cplx a3 = m.alpha1 * a2 + m.beta1 * b2, b3 = m.alpha2 * a2 + m.beta2 * b2;
    CHECK(std::abs(a3 - in.A) < 1e-8);
    CHECK(std::abs(b3 - in.B) < 1e-8);
}

TEST_CASE("symmetric mirror twice returns the original seed") {
    PTParams p(4, 4);
    auto [m1, p1] = mirror(regular_seed(20.0), p);
    auto [m2, p2] = mirror(m1, p1);
    CHECK(std::abs(m2.coeffs.A - 1.0) < 1e-10);
    CHECK(std::abs(m2.coeffs.B) < 1e-10);
}

TEST_CASE("half-integer parameter falls back to ODE continuation") {
    PTParams p(3, 4.5);
    SchrodingerSolution u(p, regular_seed(15.0));
    for (double x : testsupport::uniform(0.2, 1.3, 40)) {
        double h = 1e-4;
        double d2 = (u.value(x + h) - 2 * u.value(x) + u.value(x - h)) / (h * h);
        double r = -d2 / 2 + (potential_value(p, x) - 15.0) * u.value(x);
        CHECK(std::abs(r) < 1e-4 * (1 + std::abs(15.0 * u.value(x))));
    }
}

TEST_CASE("evaluators enforce the guard") {
    SchrodingerSolution u(PTParams(3, 4), regular_seed(10.0));
    CHECK_THROWS_AS(u.evaluate(1e-8), DomainError);
    CHECK_THROWS_AS(u.evaluate(kHalfPi), DomainError);
}
