#pragma once

#include "orbitlab/matrix.hpp"
#include "orbitlab/siegel.hpp"

#include <array>
#include <optional>
#include <vector>

namespace orbitlab {

// Integral similitude alpha with multiplier nu and degree nu^g = det(alpha):
// the rational representation of a polarized isogeny.
struct PolarizedIsogenyMatrix {
    RationalMatrix alpha;
    Int nu;
    Int degree;

    explicit PolarizedIsogenyMatrix(RationalMatrix a);
    std::size_t g() const { return alpha.rows() / 2; }
};

// nu (alpha^t)^{-1}; integral, same multiplier, equals J alpha J^{-1}.
RationalMatrix matrix_expression(const PolarizedIsogenyMatrix& iso);

// All index-d sublattice representatives [[a, b], [0, d/a]], a | d,
// 0 <= b < d/a. Exactly sigma(d) of them, HNF-lexicographic order.
std::vector<PolarizedIsogenyMatrix> enumerate_isogenies_g1(long d);

// Smallest d <= d_max with a degree-d representative mapping tau_a into the
// Sp_2(Z)-class of tau_t; both inputs are expected reduced.
std::optional<long> min_isogeny_degree_g1(const SiegelPoint& tau_a, const SiegelPoint& tau_t,
                                          long d_max, const Tolerances& tol = {});

// Lagrange decomposition n = a^2+b^2+c^2+d^2 with a >= b >= c >= d >= 0.
std::array<long, 4> four_squares(long n);

// H tensor I_{2g} for the 4x4 quaternion matrix of (a,b,c,d); satisfies
// Q^t Q = (a^2+b^2+c^2+d^2) I exactly.
RationalMatrix quaternion_block(long a, long b, long c, long d, std::size_t g);

} // namespace orbitlab
