#include "orbitlab/isogeny.hpp"

#include <cassert>
#include <cmath>
#include <utility>

namespace orbitlab {

PolarizedIsogenyMatrix::PolarizedIsogenyMatrix(RationalMatrix a) : alpha(std::move(a)) {
    if (!alpha.is_integral())
        throw Error("PolarizedIsogenyMatrix: entries must be integral");
    Rat m = gsp_multiplier(alpha); // throws if not a similitude
    if (m <= 0 || m.get_den() != 1)
        throw NotASimilitude("PolarizedIsogenyMatrix: multiplier must be a positive integer");
    nu = m.get_num();
    Int deg;
    mpz_pow_ui(deg.get_mpz_t(), nu.get_mpz_t(), static_cast<unsigned long>(g()));
    Rat d = alpha.det();
    if (d.get_den() != 1 || d.get_num() != deg)
        throw Error("PolarizedIsogenyMatrix: det(alpha) != nu^g");
    degree = deg;
}

RationalMatrix matrix_expression(const PolarizedIsogenyMatrix& iso) {
    return iso.alpha.transpose().inverse() * Rat(iso.nu);
}

std::vector<PolarizedIsogenyMatrix> enumerate_isogenies_g1(long d) {
    if (d < 1) throw Error("enumerate_isogenies_g1: degree must be positive");
    std::vector<PolarizedIsogenyMatrix> out;
    for (long a = 1; a <= d; ++a) {
        if (d % a != 0) continue;
        const long c = d / a;
        for (long b = 0; b < c; ++b) {
            RationalMatrix m = RationalMatrix::from_ints(2, 2, {a, b, 0, c});
            out.emplace_back(std::move(m));
        }
    }
    return out;
}

std::optional<long> min_isogeny_degree_g1(const SiegelPoint& tau_a, const SiegelPoint& tau_t,
                                          long d_max, const Tolerances& tol) {
    assert(tau_a.g() == 1 && tau_t.g() == 1);
    for (long d = 1; d <= d_max; ++d) {
        for (const PolarizedIsogenyMatrix& iso : enumerate_isogenies_g1(d)) {
            SiegelPoint image = act(matrix_expression(iso), tau_a, tol);
            if (same_sl2z_class(image, tau_t, tol)) return d;
        }
    }
    return std::nullopt;
}

std::array<long, 4> four_squares(long n) {
    if (n < 0) throw Error("four_squares: input must be nonnegative");
    const long amax = static_cast<long>(std::sqrt(static_cast<double>(n))) + 1;
    for (long a = amax; a >= 0; --a) {
        const long ra = n - a * a;
        if (ra < 0) continue;
        for (long b = std::min(a, static_cast<long>(std::sqrt(static_cast<double>(ra))) + 1);
             b >= 0; --b) {
            const long rb = ra - b * b;
            if (rb < 0 || b > a) continue;
            for (long c = std::min(b, static_cast<long>(std::sqrt(static_cast<double>(rb))) + 1);
                 c >= 0; --c) {
                const long rc = rb - c * c;
                if (rc < 0 || c > b) continue;
                const long dd = static_cast<long>(std::llround(std::sqrt(static_cast<double>(rc))));
                if (dd <= c && dd * dd == rc) return {a, b, c, dd};
            }
        }
    }
    // Unreachable: Lagrange guarantees a representation.
    throw Error("four_squares: no representation found");
}

RationalMatrix quaternion_block(long a, long b, long c, long d, std::size_t g) {
    const long h[4][4] = {
        {a, -b, -c, -d},
        {b, a, d, -c},
        {c, -d, a, b},
        {d, c, -b, a},
    };
    const std::size_t n = 2 * g;
    RationalMatrix q(4 * n, 4 * n);
    for (std::size_t bi = 0; bi < 4; ++bi)
        for (std::size_t bj = 0; bj < 4; ++bj)
            for (std::size_t k = 0; k < n; ++k) q.at(bi * n + k, bj * n + k) = Rat(h[bi][bj]);
    return q;
}

} // namespace orbitlab
