#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace orbitlab {

// Exact arithmetic is carried by GMP: mpq_class keeps fractions reduced with
// positive denominator, which is exactly the Rational invariant we need.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat parse_rat(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Multiplicative height of a reduced fraction p/q: max(|p|, q). H(0) = 1.
inline Int height(const Rat& r) {
    Int num = abs(r.get_num());
    const Int& den = r.get_den();
    return num > den ? num : den;
}

inline Int height(const std::vector<Rat>& v) {
    Int h = 1;
    for (const Rat& r : v) {
        Int hr = height(r);
        if (hr > h) h = hr;
    }
    return h;
}

// Fractional part in [0, 1).
inline Rat frac_mod1(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return r - Rat(q);
}

// Order of v in (Q/Z)^k: lcm of the reduced denominators.
inline Int torsion_order(const std::vector<Rat>& v) {
    Int ord = 1;
    for (const Rat& r : v) {
        Int l;
        mpz_lcm(l.get_mpz_t(), ord.get_mpz_t(), r.get_den().get_mpz_t());
        ord = l;
    }
    return ord;
}

} // namespace orbitlab
