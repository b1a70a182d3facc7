#include "orbitlab/siegel.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace orbitlab;

namespace {

const RationalMatrix kS = RationalMatrix::from_ints(2, 2, {0, -1, 1, 0});

bool close(const SiegelPoint& a, const SiegelPoint& b, double tol = 1e-9) {
    return (a.X() - b.X()).cwiseAbs().maxCoeff() <= tol &&
           (a.Y() - b.Y()).cwiseAbs().maxCoeff() <= tol;
}

} // namespace

TEST_CASE("point validation") {
    CHECK_THROWS_AS(SiegelPoint::tau(0.0, -1.0), NumericalBreakdown);
    Eigen::MatrixXd x(2, 2), y(2, 2);
    x << 0, 1, 0, 0; // not symmetric
    y = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(SiegelPoint(x, y), NumericalBreakdown);
}

TEST_CASE("moebius action, g = 1") {
    SiegelPoint i = SiegelPoint::tau(0, 1);
    CHECK(close(act(RationalMatrix::identity(2), i), i));
    CHECK(close(act(kS, i), i)); // fixed point
    SiegelPoint two_i = SiegelPoint::tau(0, 2);
    CHECK(close(act(kS, two_i), SiegelPoint::tau(0, 0.5))); // -1/(2i) = i/2
    CHECK_THROWS_AS(act(RationalMatrix::from_ints(2, 2, {1, 1, 1, 1}), i), Singular);
}

TEST_CASE("scalars act trivially and compatibility holds") {
    std::mt19937 rng(17);
    SiegelPoint z = SiegelPoint::tau(0.37, 1.4);
    CHECK(close(act(RationalMatrix::identity(2) * Rat(3), z), z, 1e-12));
    for (int it = 0; it < 50; ++it) {
        RationalMatrix a = testutil::random_similitude(rng, 1, 2, 10000);
        RationalMatrix b = testutil::random_similitude(rng, 1, 3, 10000);
        CHECK(close(act(a, act(b, z)), act(a * b, z), 1e-7));
    }
}

TEST_CASE("action preserves positive definiteness, g = 2") {
    std::mt19937 rng(23);
    Eigen::MatrixXd x(2, 2), y(2, 2);
    x << 0.2, 0.1, 0.1, -0.3;
    y << 2.0, 0.5, 0.5, 1.5;
    SiegelPoint z(x, y);
    for (int it = 0; it < 20; ++it) {
        RationalMatrix m = testutil::random_similitude(rng, 2, 2, 100000);
        SiegelPoint w = act(m, z);
        Eigen::LLT<Eigen::MatrixXd> llt(w.Y());
        CHECK(llt.info() == Eigen::Success);
    }
}

TEST_CASE("classical reduction, g = 1") {
    SUBCASE("pure translation") {
        auto cert = reduce_g1(SiegelPoint::tau(5, 1));
        CHECK(close(cert.reduced, SiegelPoint::tau(0, 1)));
        CHECK(cert.gamma == RationalMatrix::from_ints(2, 2, {1, -5, 0, 1}));
    }
    SUBCASE("fixed point") {
        auto cert = reduce_g1(SiegelPoint::tau(0, 1));
        CHECK(cert.gamma == RationalMatrix::identity(2));
        CHECK(close(cert.reduced, SiegelPoint::tau(0, 1)));
    }
    SUBCASE("deep point reduces with verifying certificate") {
        SiegelPoint z = SiegelPoint::tau(0.3, 0.1);
        auto cert = reduce_g1(z);
        CHECK(in_fundamental_domain_g1(cert.reduced));
        CHECK(close(act(cert.gamma, z), cert.reduced, 1e-9));
        CHECK(gsp_multiplier(cert.gamma) == 1);
        CHECK(cert.gamma.is_integral());
    }
    SUBCASE("known value") {
        // (-8 + 4i)/5 is SL_2(Z)-equivalent to (-1 + 2i)/2.
        auto cert = reduce_g1(SiegelPoint::tau(-1.6, 0.8));
        CHECK(close(cert.reduced, SiegelPoint::tau(-0.5, 1.0), 1e-9));
    }
    SUBCASE("idempotence") {
        auto once = reduce_g1(SiegelPoint::tau(0.3, 0.1));
        auto twice = reduce_g1(once.reduced);
        CHECK(close(twice.reduced, once.reduced, 1e-12));
        CHECK((twice.gamma == RationalMatrix::identity(2) ||
               twice.gamma == RationalMatrix::identity(2) * Rat(-1)));
    }
    SUBCASE("degenerate imaginary part") {
        CHECK_THROWS_AS(reduce_g1(SiegelPoint::tau(0, 1e-13), Tolerances{}),
                        NumericalBreakdown);
    }
}

TEST_CASE("fundamental domain membership, g = 1") {
    CHECK(in_fundamental_domain_g1(SiegelPoint::tau(0, 2)));
    CHECK_FALSE(in_fundamental_domain_g1(SiegelPoint::tau(0.6, 2)));
    // Right half of the unit-circle boundary belongs to the other copy.
    double c = std::cos(M_PI / 3), s = std::sin(M_PI / 3);
    CHECK_FALSE(in_fundamental_domain_g1(SiegelPoint::tau(c, s)));
    CHECK(in_fundamental_domain_g1(SiegelPoint::tau(-c, s)));
}

TEST_CASE("random reduction soundness, g = 1") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ux(-8, 8), uy(0.05, 4.0);
    for (int it = 0; it < 200; ++it) {
        SiegelPoint z = SiegelPoint::tau(ux(rng), uy(rng));
        auto cert = reduce_g1(z);
        CHECK(in_fundamental_domain_g1(cert.reduced));
        CHECK(close(act(cert.gamma, z), cert.reduced, 1e-9));
    }
}

TEST_CASE("class comparison, g = 1") {
    SiegelPoint z = SiegelPoint::tau(0.3, 0.7);
    SiegelPoint w = act(RationalMatrix::from_ints(2, 2, {2, 1, 1, 1}), z);
    CHECK(same_sl2z_class(z, w));
    CHECK_FALSE(same_sl2z_class(SiegelPoint::tau(0, 2), SiegelPoint::tau(0, 1)));
    // Boundary: the two vertical edges are identified by a translation.
    CHECK(same_sl2z_class(SiegelPoint::tau(-0.5, 2), SiegelPoint::tau(0.5 - 1e-12, 2)));
}

TEST_CASE("approximate reduction, g = 2") {
    Eigen::MatrixXd x0 = Eigen::MatrixXd::Zero(2, 2);
    Eigen::MatrixXd y0(2, 2);
    y0 << 1.0, 0.1, 0.1, 2.0;

    SUBCASE("already reduced is fixed") {
        SiegelPoint z(x0, y0);
        auto cert = reduce_siegel_approx(z);
        CHECK(cert.gamma == RationalMatrix::identity(4));
        CHECK(close(cert.reduced, z));
    }
    SUBCASE("integral translation clears X") {
        Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(2, 2);
        SiegelPoint z(ones, y0);
        auto cert = reduce_siegel_approx(z);
        CHECK(cert.reduced.X().cwiseAbs().maxCoeff() <= 0.5 + 1e-9);
        CHECK(close(act(cert.gamma, z), cert.reduced, 1e-9));
    }
    SUBCASE("random certificates verify") {
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> ux(-5, 5);
        for (int it = 0; it < 30; ++it) {
            Eigen::MatrixXd x(2, 2);
            double a = ux(rng), b = ux(rng), c = ux(rng);
            x << a, b, b, c;
            SiegelPoint z(x, Eigen::MatrixXd::Identity(2, 2));
            auto cert = reduce_siegel_approx(z);
            CHECK(cert.reduced.X().cwiseAbs().maxCoeff() <= 0.5 + 1e-9);
            CHECK(close(act(cert.gamma, z), cert.reduced, 1e-9));
            CHECK(gsp_multiplier(cert.gamma) == 1);
            CHECK(cert.gamma.is_integral());
        }
    }
}
