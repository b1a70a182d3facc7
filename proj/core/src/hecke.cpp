#include "orbitlab/hecke.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace orbitlab {

namespace {

Rat inv_int(const Int& n) {
    Rat r(Int(1), n);
    r.canonicalize();
    return r;
}

std::vector<Rat> scaled(const std::vector<Rat>& v, const Rat& c) {
    std::vector<Rat> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
    return out;
}

std::vector<Rat> vec_add(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

double point_residual(const MixedPoint& a, const MixedPoint& b) {
    double r = 0;
    for (std::size_t i = 0; i < a.v.size(); ++i) r = std::max(r, std::abs(a.v[i] - b.v[i]));
    r = std::max(r, (a.Z.X() - b.Z.X()).cwiseAbs().maxCoeff());
    r = std::max(r, (a.Z.Y() - b.Z.Y()).cwiseAbs().maxCoeff());
    return r;
}

} // namespace

OrbitPoint orbit_point(const MixedPoint& base, const PolarizedIsogenyMatrix& alpha, Int n_prime,
                       std::vector<Rat> w, const LevelStructure& level, const Tolerances& tol) {
    if (!base.rational()) throw NotRational("orbit_point: base.v must be rational");
    assert(n_prime >= 1 && w.size() == base.dim());
    RationalMatrix m = matrix_expression(alpha);
    std::vector<Rat> raw_v = vec_add(scaled(m * (*base.v_exact), inv_int(n_prime)), w);
    MixedPoint raw = MixedPoint::exact(std::move(raw_v), act(m, base.Z, tol));
    ReduceToFResult red = reduce_to_F(raw, level, tol);
    return OrbitPoint{std::move(red.reduced),
                      Provenance{alpha, std::move(n_prime), std::move(w)},
                      std::move(red.cert), Int(0)};
}

Int complexity_torsion(OrbitPoint& t, const SiegelPoint& base_tau, long d_max,
                       const Tolerances& tol) {
    std::optional<long> deg = min_isogeny_degree_g1(base_tau, t.point.Z, d_max, tol);
    if (!deg)
        throw DegreeSearchExhausted("complexity_torsion: no isogeny of degree <= " +
                                    std::to_string(d_max));
    Int ord = torsion_order(t.point);
    Int c = std::max(Int(*deg), ord);
    t.complexity = c;
    return c;
}

Int complexity_nontorsion(const Int& n_t, const std::vector<Rat>& delta_v) {
    return std::max(n_t, torsion_order(delta_v));
}

Lemma53Witness lemma53_witness(const OrbitPoint& t, const MixedPoint& base,
                               const Tolerances& tol) {
    RationalMatrix m = matrix_expression(t.provenance.alpha);
    GroupElement raw_gel(t.provenance.w, m * inv_int(t.provenance.n_prime));
    GroupElement gel = compose(t.reduce_cert, raw_gel);
    MixedPoint image = mixed_act(gel, base, tol);
    double residual = point_residual(image, t.point);
    if (residual > tol.tol_act)
        throw WitnessVerificationFailed("lemma53_witness: residual " + std::to_string(residual));
    Int h = std::max(height(gel.w), height(gel.M));
    return {std::move(gel), std::move(h), residual};
}

std::vector<OrbitFiber> orbit_fibers_g1(const SiegelPoint& base_tau, long max_degree,
                                        const Tolerances& tol) {
    assert(base_tau.g() == 1);
    std::vector<OrbitFiber> fibers;
    std::set<std::pair<long long, long long>> seen;
    for (long d = 1; d <= max_degree; ++d) {
        for (const PolarizedIsogenyMatrix& iso : enumerate_isogenies_g1(d)) {
            RationalMatrix m = matrix_expression(iso);
            SiegelPoint z_raw = act(m, base_tau, tol);
            FundDomainCertificate cert = reduce_g1(z_raw, tol);
            auto key = std::make_pair(std::llround(cert.reduced.x1() * 1e8),
                                      std::llround(cert.reduced.y1() * 1e8));
            if (!seen.insert(key).second) continue;
            RationalMatrix wm = cert.gamma * m;
            SiegelPoint direct = act(wm, base_tau, tol);
            double res = std::max(std::abs(direct.x1() - cert.reduced.x1()),
                                  std::abs(direct.y1() - cert.reduced.y1()));
            Int wh = height(wm);
            fibers.push_back(OrbitFiber{iso, d, std::move(m), cert.gamma, cert.reduced,
                                        std::move(wm), std::move(wh), res});
        }
    }
    return fibers;
}

std::vector<OrbitPoint> enumerate_orbit_g1(const MixedPoint& base, long n_max,
                                           const LevelStructure& level, const Tolerances& tol) {
    if (!base.rational()) throw NotRational("enumerate_orbit_g1: base.v must be rational");
    assert(base.Z.g() == 1);
    std::vector<OrbitPoint> out;
    std::set<std::pair<std::pair<std::string, std::string>, std::pair<long long, long long>>> seen;
    for (const OrbitFiber& fiber : orbit_fibers_g1(base.Z, n_max, tol)) {
        std::vector<Rat> m_base_v = fiber.m * (*base.v_exact);
        for (long q = 1; q <= n_max; ++q) {
            if (std::max(fiber.min_degree, q) > n_max) break;
            for (long p1 = 0; p1 < q; ++p1) {
                for (long p2 = 0; p2 < q; ++p2) {
                    if (std::gcd(std::gcd(p1, p2), q) != 1) continue;
                    // Target torsion value u of exact order q; the shift
                    // w = u - m v realizes it through the raw orbit formula.
                    std::vector<Rat> u{make_rat(p1, q), make_rat(p2, q)};
                    std::vector<Rat> w{u[0] - m_base_v[0], u[1] - m_base_v[1]};
                    OrbitPoint pt = orbit_point(base, fiber.alpha, 1, std::move(w), level, tol);
                    pt.complexity = std::max(Int(fiber.min_degree), Int(q));
                    auto key = std::make_pair(
                        std::make_pair(pt.point.v_exact->at(0).get_str(),
                                       pt.point.v_exact->at(1).get_str()),
                        std::make_pair(std::llround(pt.point.Z.x1() * 1e8),
                                       std::llround(pt.point.Z.y1() * 1e8)));
                    if (!seen.insert(key).second) continue;
                    out.push_back(std::move(pt));
                }
            }
        }
    }
    return out;
}

DivisionPoints division_points(const std::vector<std::vector<Rat>>& gens, long n, std::size_t g,
                               long coeff_box) {
    assert(n >= 1);
    const std::size_t dim = 2 * g;
    bool truncated = false;

    // Subgroup generated by the gens mod Z^{2g}: full coefficient grid,
    // one coordinate per generator, bounded by its order (or the box).
    std::vector<std::vector<Rat>> subgroup{std::vector<Rat>(dim, Rat(0))};
    for (const std::vector<Rat>& gen : gens) {
        assert(gen.size() == dim);
        Int ord = torsion_order(gen);
        long reps;
        if (ord > coeff_box) {
            truncated = true;
            reps = coeff_box;
        } else {
            reps = static_cast<long>(ord.get_si());
        }
        std::vector<std::vector<Rat>> next;
        for (const std::vector<Rat>& s : subgroup) {
            std::vector<Rat> cur = s;
            for (long c = 0; c < reps; ++c) {
                next.push_back(cur);
                for (std::size_t i = 0; i < dim; ++i) cur[i] = frac_mod1(cur[i] + gen[i]);
            }
        }
        subgroup = std::move(next);
    }

    std::set<std::vector<std::pair<std::string, std::string>>> seen;
    std::vector<std::vector<Rat>> points;
    std::vector<long> k(dim, 0);
    for (const std::vector<Rat>& s : subgroup) {
        std::fill(k.begin(), k.end(), 0);
        while (true) {
            std::vector<Rat> x(dim);
            std::vector<std::pair<std::string, std::string>> key(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                x[i] = frac_mod1((s[i] + k[i]) / n);
                key[i] = {x[i].get_num().get_str(), x[i].get_den().get_str()};
            }
            if (seen.insert(key).second) points.push_back(std::move(x));
            std::size_t pos = 0;
            while (pos < dim && ++k[pos] == n) k[pos++] = 0;
            if (pos == dim) break;
        }
    }
    return {std::move(points), truncated};
}

DecompositionCheck verify_decomposition(const OrbitPoint& t, const MixedPoint& base,
                                        const DecompositionRecord& rec,
                                        const LevelStructure& level, const Tolerances& tol) {
    assert(base.rational() && t.point.rational());
    // s = n0 * s0 on the base fiber.
    for (std::size_t i = 0; i < base.dim(); ++i)
        if (frac_mod1(base.v_exact->at(i) - Rat(rec.n0) * rec.s0_v[i]) != 0)
            return {false, 1.0};

    RationalMatrix m_ft = matrix_expression(rec.f_t);
    RationalMatrix m_phi = matrix_expression(rec.phi);
    std::vector<Rat> inner = vec_add(m_phi * rec.s0_v, rec.p_v);
    MixedPoint raw = MixedPoint::exact(m_ft * inner, act(m_ft * m_phi, base.Z, tol));
    ReduceToFResult red = reduce_to_F(raw, level, tol);

    double residual = 0;
    for (std::size_t i = 0; i < base.dim(); ++i)
        residual = std::max(residual,
                            std::abs(Rat(red.reduced.v_exact->at(i) - t.point.v_exact->at(i)).get_d()));
    bool z_ok = same_sl2z_class(red.reduced.Z, t.point.Z, tol);
    if (!z_ok) residual = std::max(residual, point_residual(red.reduced, t.point));
    return {z_ok && residual <= tol.tol_act, residual};
}

DecompositionRecord canonical_decomposition(const OrbitPoint& t, const MixedPoint& base) {
    assert(base.rational());
    const std::size_t g = base.Z.g();
    PolarizedIsogenyMatrix id(RationalMatrix::identity(2 * g));
    std::vector<Rat> s0 = scaled(*base.v_exact, inv_int(t.provenance.n_prime));
    RationalMatrix m_inv = matrix_expression(t.provenance.alpha).inverse();
    std::vector<Rat> p = m_inv * t.provenance.w;
    return DecompositionRecord{t.provenance.alpha, std::move(id), t.provenance.n_prime,
                               std::move(s0), std::move(p)};
}

} // namespace orbitlab
