#pragma once

#include "orbitlab/matrix.hpp"
#include "orbitlab/mixed.hpp"

#include <optional>
#include <vector>

namespace orbitlab {

// Fiberwise slice v0 + v + span(V_N_basis) of a weakly special subvariety,
// taken modulo Z^{2g}.
struct WeaklySpecialFiberData {
    std::size_t g;
    std::vector<std::vector<Rat>> V_N_basis; // possibly empty, each of length 2g
    std::vector<Rat> v0;                     // torsion part
    std::vector<double> v;                   // constant part
};

// p in v0 + v + span(V_N_basis) + Z^{2g}, within tol. Exact when p is
// rational and the constant part vanishes.
bool fiber_membership(const std::vector<double>& p, const WeaklySpecialFiberData& data,
                      double tol = 1e-9);
bool fiber_membership(const std::vector<Rat>& p, const WeaklySpecialFiberData& data,
                      double tol = 1e-9);

// Smallest m <= M with m v(tau) integral (within tol) across all section
// samples; nullopt when none. Throws InsufficientSamples below 3 samples.
std::optional<long> torsion_section_test_g1(const std::vector<MixedPoint>& samples, long M,
                                            double tol = 1e-9);

} // namespace orbitlab
