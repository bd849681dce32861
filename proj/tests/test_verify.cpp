#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ptsusy/verify.hpp"
#include "support.hpp"

using namespace ptsusy;
using namespace ptsusy::verify;

TEST_CASE("oracle grid") {
    auto g = oracle_grid(100, 1e-4);
    REQUIRE(g.size() == 100);
    double h = (kHalfPi - 2e-4) / 101;
    CHECK(std::abs(g[0] - (1e-4 + h)) < 1e-15);
    CHECK(std::abs(g.back() - (kHalfPi - 1e-4 - h)) < 1e-14);
}

TEST_CASE("config validation") {
    OracleConfig c;
    CHECK_NOTHROW(c.validate());
    c.grid_points = 100;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = OracleConfig{};
    c.guard_delta = 0.1;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = OracleConfig{};
    c.levels = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("free particle in a box of width pi/2") {
    OracleConfig cfg;
    cfg.levels = 3;
    cfg.guard_delta = 1e-9;
    auto e = oracle_spectrum([](double) { return 0.0; }, cfg);
    // -u''/2 = E u on (0, pi/2): E_k = 2 k^2
    for (int k = 0; k < 3; ++k) CHECK(std::abs(e[k] - 2.0 * (k + 1) * (k + 1)) < 1e-5 * (k + 1) * (k + 1));
}

TEST_CASE("Poschl-Teller spectrum from the oracle") {
    for (auto p : {PTParams(3, 4), PTParams(5, 8)}) {
        OracleConfig cfg;
        auto e = oracle_spectrum([&](double x) { return potential_value(p, x); }, cfg);
        for (int n = 0; n < cfg.levels; ++n) CHECK(std::abs(e[n] - eigen_energy(p, n)) < 1e-6 * eigen_energy(p, n));
    }
}

TEST_CASE("second-order convergence without Richardson") {
    PTParams p(3, 4);
    auto v = [&](double x) { return potential_value(p, x); };
    OracleConfig a;
    a.richardson = false;
    a.levels = 2;
    a.grid_points = 1000;
    OracleConfig b = a;
    b.grid_points = 2001;
    OracleConfig c = a;
    c.grid_points = 4003;
    auto ea = oracle_spectrum(v, a), eb = oracle_spectrum(v, b), ec = oracle_spectrum(v, c);
    double ratio = (ea[0] - eb[0]) / (eb[0] - ec[0]);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("serial and parallel oracle agree") {
    PTParams p(5, 8);
    auto v = [&](double x) { return potential_value(p, x); };
    OracleConfig s;
    s.execution = Execution::serial;
    OracleConfig par;
    CHECK(oracle_spectrum(v, s) == oracle_spectrum(v, par));
}

TEST_CASE("oracle eigenvectors have n nodes") {
    PTParams p(3, 4);
    OracleConfig cfg;
    cfg.levels = 5;
    auto st = oracle_states([&](double x) { return potential_value(p, x); }, cfg);
    REQUIRE(st.vectors.size() == 5);
    for (int n = 0; n < 5; ++n) CHECK(count_sign_changes(st.vectors[n]) == n);
}

TEST_CASE("non-finite potential is rejected") {
    OracleConfig cfg;
    CHECK_THROWS_AS(oracle_spectrum([](double x) { return x > 0.5 ? NAN : 0.0; }, cfg), DomainError);
}

TEST_CASE("spectrum comparison") {
    std::vector<SpectrumLevel> pred = {{24.5, LevelTag::retained, 0},
                                       {40.5, LevelTag::retained, 1},
                                       {60.5, LevelTag::retained, 2}};
    auto ok = compare_spectra(pred, {24.5, 40.5, 60.5});
    CHECK(ok.pass);
    CHECK(ok.matched.size() == 3);
    auto missing = compare_spectra(pred, {24.5, 60.5});
    CHECK(!missing.pass);
    CHECK(missing.unmatched_predicted.size() == 1);
    CHECK(missing.unmatched_predicted[0].energy == 40.5);
    auto extra = compare_spectra(pred, {19.0, 24.5, 40.5, 60.5});
    CHECK(!extra.pass);
    CHECK(extra.unmatched_oracle.size() == 1);
    std::vector<SpectrumLevel> deleted = {{24.5, LevelTag::deleted, 0}, {40.5, LevelTag::retained, 1}};
    auto del = compare_spectra(deleted, {40.5});
    CHECK(del.pass);
    CHECK(del.absent_as_expected.size() == 1);
    auto still = compare_spectra(deleted, {24.5, 40.5});
    CHECK(!still.pass);
    CHECK(still.present_but_deleted.size() == 1);
}

TEST_CASE("residual norm separates eigenpairs from impostors") {
    PTParams p(3, 4);
    auto v = [&](double x) { return potential_value(p, x); };
    auto psi = eigenfunction(p, 1);
    auto f = [&](double x) { return psi.value(x); };
    OracleConfig cfg;
    CHECK(residual_norm(v, f, 40.5, cfg) < 1e-6);
    CHECK(residual_norm(v, f, 41.5, cfg) > 1e-3);
}

TEST_CASE("quadrature") {
    auto s = [](double x) { return std::sin(x); };
    CHECK(std::abs(quadrature(s, 2, 0.0, kHalfPi, {1.0, 0.0}) - std::numbers::pi / 4) < 1e-10);
    CHECK(std::abs(quadrature(s, 1, 0.2, 1.0) - (std::cos(0.2) - std::cos(1.0))) < 1e-10);
    auto psi = eigenfunction(PTParams(3, 4), 0);
    CHECK(std::abs(quadrature([&](double x) { return psi.value(x); }, 2, 0.0, kHalfPi, {3.0, 4.0}) - 1.0) < 1e-9);
    auto blow = [](double x) { return std::pow(std::cos(x), -3.0); };
    CHECK_THROWS_AS(quadrature(blow, 2, 0.0, kHalfPi, {0.0, -3.0}), DivergenceError);
}
