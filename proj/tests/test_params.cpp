#include <doctest.h>

#include <cmath>

#include "fsmlock/error.hpp"
#include "fsmlock/params.hpp"

using namespace fsmlock;

TEST_CASE("feasible selector widths are the divisors of L")
{
    CHECK(feasible_selector_widths(6) == std::vector<unsigned>{1, 2, 3, 6});
    CHECK(feasible_selector_widths(4) == std::vector<unsigned>{1, 2, 4});
    CHECK(feasible_selector_widths(128) == std::vector<unsigned>{1, 2, 4, 8, 16, 32, 64, 128});
    CHECK(feasible_selector_widths(1) == std::vector<unsigned>{1});
    CHECK_THROWS_AS(feasible_selector_widths(0), InfeasibleParams);
}

TEST_CASE("states_added")
{
    CHECK(states_added(4, 2) == 7);
    CHECK(states_added(6, 2) == 9);
    CHECK(states_added(128, 4) == 79);
    CHECK(states_added(5, 1) == 11);
    CHECK(states_added(128, 128) == (BigInt(1) << 128) - 1 + 2);
    CHECK_THROWS_AS(states_added(6, 4), InfeasibleParams);
    CHECK_THROWS_AS(states_added(6, 0), InfeasibleParams);
}

TEST_CASE("optimize reproduces the published parameter sets")
{
    CHECK(optimize(4) == LockParams{4, 2, 4, 3, 7});
    CHECK(optimize(6) == LockParams{6, 2, 6, 3, 9});
    CHECK(optimize(128) == LockParams{128, 4, 64, 15, 79});
    CHECK(optimize(5) == LockParams{5, 1, 10, 1, 11});
    CHECK(optimize(3).selector_bits == 1); // 1+6=7 vs 7+2=9
}

TEST_CASE("optimize is the argmin over feasible widths and satisfies the invariants")
{
    for (unsigned L = 1; L <= 256; ++L) {
        LockParams p = optimize(L);
        for (unsigned b : feasible_selector_widths(L)) {
            CHECK(states_added(L, p.selector_bits) <= states_added(L, b));
            if (states_added(L, b) == states_added(L, p.selector_bits)) {
                CHECK(p.selector_bits <= b); // ties go to the smaller width
            }
        }
        CHECK(p.black_holes == (std::uint64_t{1} << p.selector_bits) - 1);
        CHECK(p.dummy_states % 2 == 0);
        CHECK(p.dummy_states * p.selector_bits == 2 * L);
        CHECK(p.added_states == p.dummy_states + p.black_holes);
    }
}

TEST_CASE("continuous optimum solves 2^b b^2 = 2L/ln 2")
{
    auto residual = [](double L, double b) { return std::pow(2.0, b) * b * b - 2.0 * L / std::log(2.0); };

    double b6 = continuous_optimum_b(6);
    CHECK(b6 > 1.0);
    CHECK(b6 < 3.0);
    CHECK(std::abs(residual(6, b6)) < 1e-6);
    CHECK(2.0 * 6 / std::log(2.0) == doctest::Approx(17.312).epsilon(1e-4));

    double b128 = continuous_optimum_b(128);
    CHECK(b128 > 4.0);
    CHECK(b128 < 5.0);
    CHECK(std::pow(2.0, 4) * 16 < 2.0 * 128 / std::log(2.0));
    CHECK(std::pow(2.0, 5) * 25 > 2.0 * 128 / std::log(2.0));

    // 2L/ln 2 = 72 = 2^3 * 3^2.
    CHECK(continuous_optimum_b(36.0 * std::log(2.0)) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("integer optimum is a divisor bracketing the continuous optimum")
{
    for (unsigned L = 1; L <= 256; ++L) {
        double b_star = continuous_optimum_b(L);
        auto widths = feasible_selector_widths(L);
        std::optional<unsigned> below, above;
        for (unsigned b : widths) {
            if (b <= b_star) {
                below = b;
            }
            if (b >= b_star && !above) {
                above = b;
            }
        }
        unsigned best = optimize(L).selector_bits;
        CHECK((best == below || best == above));
    }
}

TEST_CASE("layered baseline state counts")
{
    CHECK(states_added_layered(4, 4) == 10);
    CHECK(states_added_layered(4, 6) == 15);
    CHECK(states_added_layered(3, 178) == 356);
    CHECK(kCitedLayeredStatesAt128 == 365);
    CHECK_THROWS_AS(states_added_layered(4, 5), InfeasibleParams);
    CHECK_THROWS_AS(states_added_layered(1, 4), InfeasibleParams);
    CHECK_THROWS_AS(states_added_layered(4, 0), InfeasibleParams);

    // With m = 4 the license is (M/2) * log2 m = M bits, so L = M.
    for (unsigned L : {4U, 6U}) {
        CHECK(states_added_layered(4, L) == (L == 4 ? 10 : 15));
        CHECK(optimize(L).added_states < states_added_layered(4, L));
    }
    CHECK(layered_selector_bits(4) == 2);
    CHECK(layered_selector_bits(3) == 2);
    CHECK(layered_selector_bits(2) == 1);
    CHECK(layered_selector_bits(5) == 3);
}
