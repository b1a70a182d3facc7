#pragma once

#include "orbitlab/isogeny.hpp"
#include "orbitlab/mixed.hpp"

#include <functional>
#include <vector>

namespace orbitlab {

struct Provenance {
    PolarizedIsogenyMatrix alpha;
    Int n_prime;
    std::vector<Rat> w; // torsion shift
};

struct OrbitPoint {
    MixedPoint point; // reduced
    Provenance provenance;
    GroupElement reduce_cert; // reduce_to_F certificate of the raw point
    Int complexity;           // 0 until a complexity op fills it
};

struct DecompositionRecord {
    PolarizedIsogenyMatrix f_t;
    PolarizedIsogenyMatrix phi; // endomorphism of the base fiber
    Int n0;
    std::vector<Rat> s0_v;
    std::vector<Rat> p_v; // torsion
};

// Raw orbit formula ((m v)/n' + w, m Z) with m = matrix_expression(alpha),
// reduced to the fundamental set. Complexity is left at the 0 sentinel.
OrbitPoint orbit_point(const MixedPoint& base, const PolarizedIsogenyMatrix& alpha, Int n_prime,
                       std::vector<Rat> w, const LevelStructure& level,
                       const Tolerances& tol = {});

// max(minimal isogeny degree to the base fiber, torsion order); stores the
// value in t. Throws DegreeSearchExhausted when no degree <= d_max connects.
Int complexity_torsion(OrbitPoint& t, const SiegelPoint& base_tau, long d_max,
                       const Tolerances& tol = {});

// max(n_t, order of delta) per the non-torsion complexity convention.
Int complexity_nontorsion(const Int& n_t, const std::vector<Rat>& delta_v);

struct Lemma53Witness {
    GroupElement gel;
    Int H;
    double residual;
};

// Group element moving the reduced base to t, built from provenance and the
// reduction certificate, with its multiplicative height. Throws
// WitnessVerificationFailed when the re-applied action misses t.
Lemma53Witness lemma53_witness(const OrbitPoint& t, const MixedPoint& base,
                               const Tolerances& tol = {});

// One Sp_2(Z)-class of fibers reachable from the base fiber, with the
// minimal-degree representative (HNF-lex first) and reduction data.
struct OrbitFiber {
    PolarizedIsogenyMatrix alpha;
    long min_degree;
    RationalMatrix m;      // matrix expression of alpha
    RationalMatrix gamma;  // Sp_2(Z) certificate: act(gamma, act(m, base)) = z_red
    SiegelPoint z_red;
    RationalMatrix witness_M; // gamma * m
    Int witness_M_height;
    double z_residual; // |act(gamma*m, base) - z_red|, shared by all points on the fiber
};

// All fiber classes reachable by an isogeny of degree <= max_degree,
// deduplicated by reduced representative, ascending first-appearance degree.
std::vector<OrbitFiber> orbit_fibers_g1(const SiegelPoint& base_tau, long max_degree,
                                        const Tolerances& tol = {});

// All orbit points of complexity <= n_max, deduplicated, deterministic order
// (fiber first-appearance, then shift denominator, then shift lexicographic).
std::vector<OrbitPoint> enumerate_orbit_g1(const MixedPoint& base, long n_max,
                                           const LevelStructure& level,
                                           const Tolerances& tol = {});

struct DivisionPoints {
    std::vector<std::vector<Rat>> points; // representatives mod Z^{2g}
    bool box_truncated;                   // coefficient box clipped the generator span
};

// Representatives mod Z^{2g} of (1/n)(<gens> + Z^{2g}).
DivisionPoints division_points(const std::vector<std::vector<Rat>>& gens, long n, std::size_t g,
                               long coeff_box = 1000000);

struct DecompositionCheck {
    bool ok;
    double residual;
};

DecompositionCheck verify_decomposition(const OrbitPoint& t, const MixedPoint& base,
                                        const DecompositionRecord& rec,
                                        const LevelStructure& level, const Tolerances& tol = {});

// The record implied by an orbit point's provenance: f_t = alpha, phi = id,
// n0 = n', s0 = base.v / n', p = alpha^{-1}-pulled-back shift.
DecompositionRecord canonical_decomposition(const OrbitPoint& t, const MixedPoint& base);

} // namespace orbitlab
