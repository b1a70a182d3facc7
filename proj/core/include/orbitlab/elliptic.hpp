#pragma once

#include "orbitlab/errors.hpp"
#include "orbitlab/rational.hpp"

#include <optional>
#include <utility>

namespace orbitlab {

// y^2 = x^3 + a2 x^2 + a4 x + a6 over Q. The short form has a2 = 0;
// the 2-isogeny-ready form has a6 = 0 so that (0,0) is a rational 2-torsion
// point.
struct CurveQ {
    Rat a2, a4, a6;

    static CurveQ short_form(Rat a, Rat b);        // y^2 = x^3 + a x + b
    static CurveQ two_torsion_form(Rat A, Rat B);  // y^2 = x^3 + A x^2 + B x

    Rat rhs(const Rat& x) const { return ((x + a2) * x + a4) * x + a6; }
    bool two_torsion_form_flag() const { return a6 == 0; }
};

struct PointQ {
    std::optional<std::pair<Rat, Rat>> xy;

    static PointQ infinity() { return PointQ{std::nullopt}; }
    static PointQ affine(Rat x, Rat y) { return PointQ{std::make_pair(std::move(x), std::move(y))}; }

    bool is_infinity() const { return !xy.has_value(); }
    const Rat& x() const { return xy->first; }
    const Rat& y() const { return xy->second; }
    bool operator==(const PointQ& o) const = default;
};

bool on_curve(const CurveQ& e, const PointQ& p);

PointQ ec_neg(const PointQ& p);
PointQ ec_add(const CurveQ& e, const PointQ& p, const PointQ& q);
PointQ ec_mul(const CurveQ& e, long n, const PointQ& p);

// log max(|p|, q) of the reduced x-coordinate; 0 at infinity.
double naive_height(const PointQ& p);

struct HeightOptions {
    double tol = 1e-6;
    int max_doublings = 16;
    long bit_budget = 1000000; // per x-coordinate numerator/denominator
};

// Duplication-limit canonical height: lim 4^{-n} h(2^n P). Throws
// PrecisionLoss when coordinates exceed the bit budget before convergence.
double canonical_height(const CurveQ& e, const PointQ& p, const HeightOptions& opt = {});

// Degree-2 isogeny with kernel {O, (0,0)} from y^2 = x^3 + A x^2 + B x
// to y^2 = x^3 - 2A x^2 + (A^2 - 4B) x.
struct TwoIsogeny {
    CurveQ domain;
    CurveQ codomain;

    bool in_kernel(const PointQ& p) const;
    PointQ apply(const PointQ& p) const;        // kernel points map to O
    PointQ apply_strict(const PointQ& p) const; // throws KernelPoint instead
};

TwoIsogeny two_isogeny(const CurveQ& e);

// Exact torsion order over Q (Mazur bound 12), or nullopt for non-torsion.
std::optional<int> torsion_order_ec(const CurveQ& e, const PointQ& p);

struct ScalingReport {
    double lhs;  // canonical height of phi(P) on the codomain
    double rhs;  // 2 * canonical height of P
    bool pass;
};

// Checks h^(phi P) = 2 h^(P) for the curve's 2-isogeny, both sides via the
// duplication limit.
ScalingReport isogeny_height_scaling_check(const CurveQ& e, const PointQ& p, double tol,
                                           const HeightOptions& opt = {});

} // namespace orbitlab
