#pragma once

#include "orbitlab/matrix.hpp"
#include "orbitlab/siegel.hpp"

#include <optional>
#include <vector>

namespace orbitlab {

// Point (v, Z) of V_{2g}(R) x H_g^+. v carries an exact rational tag when
// it is known exactly; the double image is always kept in sync.
struct MixedPoint {
    std::vector<double> v;
    std::optional<std::vector<Rat>> v_exact;
    SiegelPoint Z;

    static MixedPoint exact(std::vector<Rat> vv, SiegelPoint z);
    static MixedPoint real(std::vector<double> vv, SiegelPoint z);

    bool rational() const { return v_exact.has_value(); }
    std::size_t dim() const { return v.size(); } // 2g
};

// Element (w, M) of V_{2g}(Q) ⋊ GSp_{2g}(Q)^+.
struct GroupElement {
    std::vector<Rat> w;
    RationalMatrix M;

    GroupElement(std::vector<Rat> ww, RationalMatrix mm);
    static GroupElement identity(std::size_t g);
};

// Group law (w1, M1)(w2, M2) = (w1 + M1 w2, M1 M2).
GroupElement compose(const GroupElement& a, const GroupElement& b);

struct LevelStructure {
    long N;
    explicit LevelStructure(long n = 4);
};

// (w, M) . (v, Z) = (w + Mv, M Z).
MixedPoint mixed_act(const GroupElement& gel, const MixedPoint& p, const Tolerances& tol = {});

struct ReduceToFResult {
    MixedPoint reduced;
    GroupElement cert;           // mixed_act(cert, input) == reduced
    RationalMatrix coset_residue; // cert.M mod N, entries in [0, N)
};

// Reduction to the fundamental set [0, N)^{2g} x F_G: the Z-part through
// reduce_g1 / reduce_siegel_approx, the V-part through N Z^{2g} translations.
ReduceToFResult reduce_to_F(const MixedPoint& p, const LevelStructure& level,
                            const Tolerances& tol = {});

// Order of the torsion point v mod Z^{2g}. Throws NotRational when untagged.
Int torsion_order(const MixedPoint& p);

} // namespace orbitlab
