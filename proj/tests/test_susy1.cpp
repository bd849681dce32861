#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "checks.hpp"
#include "ptsusy/susy1.hpp"

using namespace ptsusy;
using namespace testsupport;

TEST_CASE("deleting the ground state shifts lambda and nu by one") {
    PTParams p(3, 4);
    auto t = delete_ground(p);
    PTParams shifted(4, 5);
    CHECK(max_diff([&](double x) { return t->value(x); }, [&](double x) { return potential_value(shifted, x); },
                   interior()) < 1e-12);
    auto e = t->new_exponents();
    CHECK(std::abs(e.left - 4.0) < 1e-12);
    CHECK(std::abs(e.right - 5.0) < 1e-12);
    auto spec = t->predicted_spectrum(4);
    CHECK(spec[0].tag == LevelTag::deleted);
    CHECK(spec[0].energy == 24.5);
    CHECK(spec[1].energy == 40.5);
    CHECK(oracle_report(*t).pass);
}

TEST_CASE("symmetric shape invariance at the midpoint") {
    PTParams p(4, 4);
    auto t = delete_ground(p);
    CHECK(std::abs(t->value(kHalfPi / 2) - 2 * 5 * 4.0) < 1e-10);
}

TEST_CASE("delete_ground transformed states") {
    auto t = delete_ground(PTParams(3, 4));
    CHECK_THROWS_AS(t->transformed_state(0), DegenerateError);
    CHECK(worst_residual(*t, 4) < 1e-5);
    CHECK(gram_error(*t, 4) < 1e-6);
}

TEST_CASE("creating a ground state below E_0") {
    PTParams p(3, 4);
    auto t = create_ground(p, 19.0, 1.0);
    auto spec = t->predicted_spectrum(4);
    CHECK(spec[0].energy == 19.0);
    CHECK(spec[0].tag == LevelTag::created);
    CHECK(spec[1].energy == 24.5);
    auto e = t->new_exponents();
    CHECK(std::abs(e.left - 2.0) < 1e-12);
    CHECK(std::abs(e.right - 3.0) < 1e-12);
    CHECK(std::abs(left_coefficient_estimate(*t) - 1.0) < 1e-3);
    CHECK(std::abs(right_coefficient_estimate(*t) - 3.0) < 1e-3);
    auto ms = t->missing_states();
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].physical);
    CHECK(oracle_report(*t).pass);
    CHECK(worst_residual(*t, 4) < 1e-5);
    CHECK(gram_error(*t, 4) < 1e-6);
}

TEST_CASE("create_ground preconditions") {
    CHECK_THROWS_AS(create_ground(PTParams(2, 4), 5.0, 1.0), ValidationError);
    CHECK_THROWS_AS(create_ground(PTParams(3, 4), 19.0, -1.0), ValidationError);
    CHECK_THROWS_AS(create_ground(PTParams(3, 4), 30.0, 1.0), ValidationError);
}

TEST_CASE("isospectral first-order partners") {
    PTParams p(3, 4);
    auto left = isospectral_first(p, 19.0, Side::left);
    auto right = isospectral_first(p, 19.0, Side::right);
    CHECK(oracle_report(*left).pass);
    CHECK(oracle_report(*right).pass);
    for (auto& t : {left, right}) {
        auto spec = t->predicted_spectrum(4);
        CHECK(spec[0].energy == 24.5);
        CHECK(spec[0].tag == LevelTag::retained);
        REQUIRE(t->missing_states().size() == 1);
        CHECK(!t->missing_states()[0].physical);
        CHECK(worst_residual(*t, 4) < 1e-5);
    }
    auto mirrored = isospectral_first(p.swapped(), 19.0, Side::left);
    CHECK(mirror_difference(*mirrored, *right) < 1e-9);
}

TEST_CASE("intertwined states keep their node count") {
    auto t = create_ground(PTParams(3, 4), 19.0, 1.0);
    auto spec = t->predicted_spectrum(5);
    auto xs = uniform(1e-3, kHalfPi - 1e-3, 4000);
    for (int k = 0; k < 5; ++k) {
        auto f = t->state(spec[k]);
        std::vector<double> vals;
        for (double x : xs) vals.push_back(f(x));
        CHECK(verify::count_sign_changes(vals) == k);
    }
}

TEST_CASE("seed with a node is rejected") {
    PTParams p(3, 4);
    CHECK_THROWS_AS(FirstOrderTransform(p, seed_from_q(p, 19.0, -1.0)), ConstructionError);
}
