#pragma once

#include "orbitlab/matrix.hpp"

#include <random>

namespace testutil {

using orbitlab::Int;
using orbitlab::Rat;
using orbitlab::RationalMatrix;

// Random word in the standard integral symplectic generators: the form
// matrix J, upper unipotents [[I, B], [0, I]] with B symmetric, and
// GL-conjugations [[A, 0], [0, A^{-t}]] with A an elementary matrix.
inline RationalMatrix random_sp(std::mt19937& rng, std::size_t g, int steps) {
    using orbitlab::SymplecticForm;
    const std::size_t n = 2 * g;
    SymplecticForm form(g);
    RationalMatrix m = RationalMatrix::identity(n);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> small(-2, 2);
    std::uniform_int_distribution<std::size_t> idx(0, g - 1);
    for (int s = 0; s < steps; ++s) {
        switch (kind(rng)) {
        case 0:
            m = form.J * m;
            break;
        case 1: {
            RationalMatrix e = RationalMatrix::identity(n);
            std::size_t i = idx(rng), j = idx(rng);
            int b = small(rng);
            e.at(i, g + j) = Rat(b);
            e.at(j, g + i) = Rat(b);
            m = e * m;
            break;
        }
        default: {
            std::size_t i = idx(rng), j = idx(rng);
            if (i == j) break;
            RationalMatrix e = RationalMatrix::identity(n);
            int b = small(rng);
            e.at(i, j) = Rat(b);        // A = I + b e_ij
            e.at(g + j, g + i) = Rat(-b); // A^{-t} = I - b e_ji
            m = e * m;
            break;
        }
        }
    }
    return m;
}

// Integral similitude with multiplier nu and entries of bounded height:
// gamma1 * diag(I, nu I) * gamma2.
inline RationalMatrix random_similitude(std::mt19937& rng, std::size_t g, long nu,
                                        long max_height) {
    const std::size_t n = 2 * g;
    for (;;) {
        RationalMatrix d = RationalMatrix::identity(n);
        for (std::size_t i = 0; i < g; ++i) d.at(g + i, g + i) = Rat(nu);
        RationalMatrix m = random_sp(rng, g, 4) * d * random_sp(rng, g, 4);
        if (orbitlab::height(m) <= max_height) return m;
    }
}

} // namespace testutil
