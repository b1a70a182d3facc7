#include "orbitlab/wspecial.hpp"

#include <doctest.h>

#include <cmath>

using namespace orbitlab;

namespace {

WeaklySpecialFiberData line_data() {
    // v0 + span{e1} with v0 = (0, 1/2), no constant part.
    WeaklySpecialFiberData d;
    d.g = 1;
    d.V_N_basis = {{Rat(1), Rat(0)}};
    d.v0 = {Rat(0), make_rat(1, 2)};
    d.v = {0.0, 0.0};
    return d;
}

} // namespace

TEST_CASE("fiber membership") {
    SUBCASE("zero-dimensional slice is a single coset") {
        WeaklySpecialFiberData d;
        d.g = 1;
        d.v0 = {make_rat(1, 3), Rat(0)};
        d.v = {0.0, 0.0};
        CHECK(fiber_membership(std::vector<Rat>{make_rat(1, 3), Rat(0)}, d));
        CHECK(fiber_membership(std::vector<Rat>{make_rat(4, 3), Rat(-5)}, d));
        CHECK_FALSE(fiber_membership(std::vector<Rat>{make_rat(1, 2), Rat(0)}, d));
        CHECK(fiber_membership(std::vector<double>{1.0 / 3.0, 0.0}, d));
        CHECK_FALSE(fiber_membership(std::vector<double>{0.25, 0.0}, d));
    }
    SUBCASE("a line through a torsion point") {
        WeaklySpecialFiberData d = line_data();
        CHECK(fiber_membership(std::vector<double>{0.73, 0.5}, d));
        CHECK_FALSE(fiber_membership(std::vector<double>{0.73, 0.25}, d));
        CHECK(fiber_membership(std::vector<Rat>{make_rat(7, 10), make_rat(1, 2)}, d));
        CHECK_FALSE(fiber_membership(std::vector<Rat>{make_rat(7, 10), make_rat(1, 4)}, d));
    }
    SUBCASE("invariance under integral translations") {
        WeaklySpecialFiberData d = line_data();
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b) {
                CHECK(fiber_membership(std::vector<double>{0.73 + a, 0.5 + b}, d));
                CHECK_FALSE(fiber_membership(std::vector<double>{0.73 + a, 0.25 + b}, d));
            }
    }
    SUBCASE("constant part shifts the slice") {
        WeaklySpecialFiberData d = line_data();
        d.v = {0.0, 0.1};
        CHECK(fiber_membership(std::vector<double>{0.2, 0.6}, d));
        CHECK_FALSE(fiber_membership(std::vector<double>{0.2, 0.5}, d));
        // Rational queries fall back to the numeric test here.
        CHECK(fiber_membership(std::vector<Rat>{Rat(0), make_rat(3, 5)}, d));
    }
    SUBCASE("full basis makes everything a member") {
        WeaklySpecialFiberData d;
        d.g = 1;
        d.V_N_basis = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
        d.v0 = {Rat(0), Rat(0)};
        d.v = {0.0, 0.0};
        CHECK(fiber_membership(std::vector<double>{0.123, 0.987}, d));
    }
    SUBCASE("dependent basis rejected") {
        WeaklySpecialFiberData d;
        d.g = 1;
        d.V_N_basis = {{Rat(1), Rat(0)}, {Rat(2), Rat(0)}};
        d.v0 = {Rat(0), Rat(0)};
        d.v = {0.0, 0.0};
        CHECK_THROWS_AS(fiber_membership(std::vector<double>{0.0, 0.0}, d), Error);
    }
}

TEST_CASE("torsion test for sections") {
    SiegelPoint z1 = SiegelPoint::tau(0, 1), z2 = SiegelPoint::tau(0, 2),
                z3 = SiegelPoint::tau(0.25, 1.5);

    SUBCASE("zero section") {
        std::vector<MixedPoint> s{MixedPoint::exact({Rat(0), Rat(0)}, z1),
                                  MixedPoint::exact({Rat(0), Rat(0)}, z2),
                                  MixedPoint::exact({Rat(0), Rat(0)}, z3)};
        CHECK(torsion_section_test_g1(s, 10) == 1);
    }
    SUBCASE("constant 2-torsion section") {
        std::vector<MixedPoint> s{MixedPoint::exact({make_rat(1, 2), make_rat(1, 2)}, z1),
                                  MixedPoint::exact({make_rat(1, 2), make_rat(1, 2)}, z2),
                                  MixedPoint::exact({make_rat(1, 2), make_rat(1, 2)}, z3)};
        CHECK(torsion_section_test_g1(s, 10) == 2);
    }
    SUBCASE("mixed denominators need the lcm") {
        std::vector<MixedPoint> s{MixedPoint::exact({Rat(0), Rat(0)}, z1),
                                  MixedPoint::exact({make_rat(1, 8), Rat(0)}, z2),
                                  MixedPoint::exact({make_rat(1, 12), Rat(0)}, z3)};
        CHECK(torsion_section_test_g1(s, 50) == 24);
        // A tighter bound misses the answer.
        CHECK_FALSE(torsion_section_test_g1(s, 20).has_value());
    }
    SUBCASE("an irrational sample rules every multiple out") {
        std::vector<MixedPoint> s{MixedPoint::exact({Rat(0), Rat(0)}, z1),
                                  MixedPoint::exact({make_rat(1, 8), Rat(0)}, z2),
                                  MixedPoint::exact({make_rat(1, 12), Rat(0)}, z3),
                                  MixedPoint::real({std::sqrt(2.0) - 1.0, 0.0}, z1)};
        CHECK_FALSE(torsion_section_test_g1(s, 50).has_value());
    }
    SUBCASE("too few samples") {
        std::vector<MixedPoint> s{MixedPoint::exact({Rat(0), Rat(0)}, z1),
                                  MixedPoint::exact({Rat(0), Rat(0)}, z2)};
        CHECK_THROWS_AS(torsion_section_test_g1(s, 10), InsufficientSamples);
    }
}
