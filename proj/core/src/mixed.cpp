#include "orbitlab/mixed.hpp"

#include <cassert>
#include <cmath>
#include <utility>

namespace orbitlab {

MixedPoint MixedPoint::exact(std::vector<Rat> vv, SiegelPoint z) {
    std::vector<double> vd(vv.size());
    for (std::size_t i = 0; i < vv.size(); ++i) vd[i] = vv[i].get_d();
    assert(vv.size() == 2 * z.g());
    return MixedPoint{std::move(vd), std::move(vv), std::move(z)};
}

MixedPoint MixedPoint::real(std::vector<double> vv, SiegelPoint z) {
    assert(vv.size() == 2 * z.g());
    return MixedPoint{std::move(vv), std::nullopt, std::move(z)};
}

GroupElement::GroupElement(std::vector<Rat> ww, RationalMatrix mm)
    : w(std::move(ww)), M(std::move(mm)) {
    assert(w.size() == M.rows());
    if (gsp_multiplier(M) <= 0)
        throw NotASimilitude("GroupElement: similitude multiplier must be positive");
}

GroupElement GroupElement::identity(std::size_t g) {
    return GroupElement(std::vector<Rat>(2 * g, Rat(0)), RationalMatrix::identity(2 * g));
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
    std::vector<Rat> w = a.M * b.w;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += a.w[i];
    return GroupElement(std::move(w), a.M * b.M);
}

LevelStructure::LevelStructure(long n) : N(n) {
    if (n < 4 || n % 2 != 0) throw Error("LevelStructure: N must be even and >= 4");
}

MixedPoint mixed_act(const GroupElement& gel, const MixedPoint& p, const Tolerances& tol) {
    assert(gel.w.size() == p.dim());
    SiegelPoint z = act(gel.M, p.Z, tol);
    if (p.rational()) {
        std::vector<Rat> v = gel.M * (*p.v_exact);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += gel.w[i];
        return MixedPoint::exact(std::move(v), std::move(z));
    }
    const std::size_t n = p.dim();
    std::vector<double> v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = gel.w[i].get_d();
        for (std::size_t j = 0; j < n; ++j) acc += gel.M.at(i, j).get_d() * p.v[j];
        v[i] = acc;
    }
    return MixedPoint::real(std::move(v), std::move(z));
}

ReduceToFResult reduce_to_F(const MixedPoint& p, const LevelStructure& level,
                            const Tolerances& tol) {
    const std::size_t g = p.Z.g();
    FundDomainCertificate zcert =
        (g == 1) ? reduce_g1(p.Z, tol) : reduce_siegel_approx(p.Z, tol);

    std::vector<Rat> w(2 * g, Rat(0));
    if (p.rational()) {
        std::vector<Rat> v1 = zcert.gamma * (*p.v_exact);
        for (std::size_t i = 0; i < v1.size(); ++i) {
            Rat scaled = v1[i] / level.N;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
            w[i] = Rat(-q * level.N);
        }
    } else {
        for (std::size_t i = 0; i < 2 * g; ++i) {
            double acc = 0;
            for (std::size_t j = 0; j < 2 * g; ++j) acc += zcert.gamma.at(i, j).get_d() * p.v[j];
            w[i] = Rat(-static_cast<long>(std::floor(acc / level.N)) * level.N);
        }
    }
    GroupElement cert(std::move(w), zcert.gamma);
    MixedPoint reduced = mixed_act(cert, p, tol);

    RationalMatrix residue(2 * g, 2 * g);
    for (std::size_t i = 0; i < 2 * g; ++i)
        for (std::size_t j = 0; j < 2 * g; ++j) {
            Int r;
            mpz_fdiv_r(r.get_mpz_t(), cert.M.at(i, j).get_num().get_mpz_t(),
                       Int(level.N).get_mpz_t());
            residue.at(i, j) = Rat(r);
        }
    return {std::move(reduced), std::move(cert), std::move(residue)};
}

Int torsion_order(const MixedPoint& p) {
    if (!p.rational()) throw NotRational("torsion_order: point has no rational tag");
    return torsion_order(*p.v_exact);
}

} // namespace orbitlab
