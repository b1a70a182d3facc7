// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances and bounds are pinned here on purpose.
#include "orbitlab/lab.hpp"

#include "helpers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

using namespace orbitlab;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail = "") {
    std::printf("%s: %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : " ",
                detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void matrix_expression_randomized() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> nu_dist(1, 10);
    bool ok = true;
    for (int it = 0; it < 1000 && ok; ++it) {
        std::size_t g = (it % 2) + 1;
        SymplecticForm form(g);
        RationalMatrix a = testutil::random_similitude(rng, g, nu_dist(rng), 1000);
        PolarizedIsogenyMatrix iso(a);
        RationalMatrix m = matrix_expression(iso);
        ok = ok && m == form.J * a * form.J.inverse();
        ok = ok && m.is_integral();
        ok = ok && gsp_multiplier(m, form) == iso.nu;
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 10.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "(1000 random similitudes, g in {1,2}, %.2f s)", dt);
    report("matrix expression equals form conjugation", ok, buf);
}

void isogeny_counts() {
    bool ok = true;
    for (long d = 1; d <= 100 && ok; ++d) {
        long sigma = 0;
        for (long a = 1; a <= d; ++a)
            if (d % a == 0) sigma += a;
        ok = enumerate_isogenies_g1(d).size() == static_cast<std::size_t>(sigma);
    }
    report("degree-d representative count is the divisor sum for d <= 100", ok);
}

void reduction_randomized() {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ux(-8, 8), uy(0.05, 4.0);
    std::uniform_int_distribution<int> num(-40, 40);
    LevelStructure level(4);
    bool ok = true;
    double worst = 0;
    for (int it = 0; it < 1000 && ok; ++it) {
        SiegelPoint z = SiegelPoint::tau(ux(rng), uy(rng));
        FundDomainCertificate cert = reduce_g1(z);
        SiegelPoint back = act(cert.gamma, z);
        double res = std::max(std::abs(back.x1() - cert.reduced.x1()),
                              std::abs(back.y1() - cert.reduced.y1()));
        worst = std::max(worst, res);
        ok = ok && res < 1e-9 && in_fundamental_domain_g1(cert.reduced);
        FundDomainCertificate again = reduce_g1(cert.reduced);
        ok = ok && std::abs(again.reduced.x1() - cert.reduced.x1()) < 1e-9 &&
             std::abs(again.reduced.y1() - cert.reduced.y1()) < 1e-9;

        MixedPoint p = MixedPoint::exact({make_rat(num(rng), 7), make_rat(num(rng), 5)}, z);
        ReduceToFResult red = reduce_to_F(p, level);
        for (const Rat& c : *red.reduced.v_exact) ok = ok && c >= 0 && c < level.N;
        MixedPoint replay = mixed_act(red.cert, p);
        ok = ok && *replay.v_exact == *red.reduced.v_exact;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "(1000 points, worst residual %.2e)", worst);
    report("reduction certificates verify and are idempotent", ok, buf);
}

void orbit_height_envelope() {
    auto t0 = std::chrono::steady_clock::now();
    MixedPoint base = MixedPoint::exact({Rat(0), Rat(0)}, SiegelPoint::tau(0, 2));
    LevelStructure level(4);
    HeightScalingReport calib = run_height_scaling(base, 25, level, Tolerances{}, 8);
    HeightScalingReport rep = run_height_scaling(base, 50, level, Tolerances{}, 8);
    bool ok = rep.all_verified && rep.max_residual < 1e-9 && calib.fit.defined;
    for (const HeightScalingRow& row : rep.rows) {
        double bound = std::exp(calib.fit.log_c) *
                       std::pow(static_cast<double>(row.n), calib.fit.exponent + 2.0);
        ok = ok && mpz_get_d(row.max_height.get_mpz_t()) <= bound;
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 120.0;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "(%llu points to n = 50, kappa_emp %.3f, max residual %.2e, %.1f s)",
                  rep.points, rep.fit.exponent, rep.max_residual, dt);
    report("orbit witness heights verified and polynomially bounded", ok, buf);
}

void height_scaling_suite() {
    auto t0 = std::chrono::steady_clock::now();
    HeightOptions opt{1e-6, 24, 400000000};
    bool ok = true;
    double worst = 0;
    for (const CurveSample& s : bundled_curve_suite()) {
        TwoIsogeny phi = two_isogeny(s.curve);
        double hp = canonical_height(s.curve, s.point, opt);
        double hphip = canonical_height(phi.codomain, phi.apply(s.point), opt);
        double h2p = canonical_height(s.curve, ec_mul(s.curve, 2, s.point), opt);
        worst = std::max({worst, std::abs(hphip - 2 * hp), std::abs(h2p - 4 * hp)});
        ok = ok && std::abs(hphip - 2 * hp) < 1e-5 && std::abs(h2p - 4 * hp) < 1e-5;
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 60.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "(5 curves, worst residual %.2e, %.1f s)", worst, dt);
    report("canonical height scales by 2 under the isogeny and 4 under doubling", ok, buf);
}

void point_counts() {
    bool ok = count_rational_points(bundled_oracle("parabola"), 10) == 5;
    for (long T : {1L, 10L, 100L})
        ok = ok && count_rational_points(bundled_oracle("exp2"), T) == 1;
    report("rational point counts match the closed-form values", ok,
           "(parabola T=10 -> 5, exp2 T in {1,10,100} -> 1)");
}

void quaternion_identities() {
    bool ok = true;
    for (long n = 0; n <= 10000 && ok; ++n) {
        auto [a, b, c, d] = four_squares(n);
        ok = a * a + b * b + c * c + d * d == n && a >= b && b >= c && c >= d && d >= 0;
    }
    for (long n = 1; n <= 100 && ok; ++n) {
        auto [a, b, c, d] = four_squares(n);
        RationalMatrix q = quaternion_block(a, b, c, d, 1);
        ok = q.transpose() * q == RationalMatrix::identity(8) * Rat(n);
    }
    for (long n : {101L, 999L, 4096L, 9999L}) {
        auto [a, b, c, d] = four_squares(n);
        RationalMatrix q = quaternion_block(a, b, c, d, 2);
        ok = ok && q.transpose() * q == RationalMatrix::identity(16) * Rat(n);
    }
    report("four-square decompositions and quaternion norm identity", ok,
           "(sums to 10^4, norms to 100 plus samples)");
}

void division_point_counts() {
    bool ok = true;
    for (long n = 1; n <= 20 && ok; ++n) {
        DivisionPoints dp = division_points({}, n, 1);
        ok = dp.points.size() == static_cast<std::size_t>(n * n) && !dp.box_truncated;
    }
    report("n-division of the trivial group has exactly n^2 classes for n <= 20", ok);
}

void census_determinism() {
    MixedPoint base = MixedPoint::exact({Rat(0), Rat(0)}, SiegelPoint::tau(0, 2));
    LevelStructure level(4);
    std::ostringstream one, eight;
    write_csv(orbit_census(base, 30, level, Tolerances{}, 1), one);
    write_csv(orbit_census(base, 30, level, Tolerances{}, 8), eight);
    bool ok = !one.str().empty() && one.str() == eight.str();
    report("orbit census output is byte-identical across thread counts", ok,
           "(n = 30, 1 vs 8 threads)");
}

} // namespace

int main() {
    matrix_expression_randomized();
    isogeny_counts();
    reduction_randomized();
    orbit_height_envelope();
    height_scaling_suite();
    point_counts();
    quaternion_identities();
    division_point_counts();
    census_determinism();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
