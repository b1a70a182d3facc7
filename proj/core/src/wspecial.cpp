#include "orbitlab/wspecial.hpp"

#include <cassert>
#include <cmath>

namespace orbitlab {

namespace {

// Saturated integer annihilator of the basis span: rows c with c . b = 0.
// Membership in span + Z^{2g} is then the integrality of C (p - v0 - v).
std::vector<std::vector<Rat>> annihilator(const WeaklySpecialFiberData& data) {
    const std::size_t dim = 2 * data.g;
    if (data.V_N_basis.empty()) {
        std::vector<std::vector<Rat>> rows;
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<Rat> e(dim, Rat(0));
            e[i] = 1;
            rows.push_back(std::move(e));
        }
        return rows;
    }
    RationalMatrix bt(data.V_N_basis.size(), dim);
    for (std::size_t i = 0; i < data.V_N_basis.size(); ++i) {
        assert(data.V_N_basis[i].size() == dim);
        for (std::size_t j = 0; j < dim; ++j) bt.at(i, j) = data.V_N_basis[i][j];
    }
    std::vector<std::vector<Rat>> kernel = integer_kernel(bt);
    if (kernel.size() != dim - data.V_N_basis.size())
        throw Error("fiber_membership: basis vectors are linearly dependent");
    return kernel;
}

} // namespace

bool fiber_membership(const std::vector<double>& p, const WeaklySpecialFiberData& data,
                      double tol) {
    const std::size_t dim = 2 * data.g;
    assert(p.size() == dim && data.v0.size() == dim && data.v.size() == dim);
    for (const auto& row : annihilator(data)) {
        double acc = 0;
        for (std::size_t j = 0; j < dim; ++j)
            acc += row[j].get_d() * (p[j] - data.v0[j].get_d() - data.v[j]);
        if (std::abs(acc - std::round(acc)) > tol) return false;
    }
    return true;
}

bool fiber_membership(const std::vector<Rat>& p, const WeaklySpecialFiberData& data, double tol) {
    const std::size_t dim = 2 * data.g;
    assert(p.size() == dim && data.v0.size() == dim && data.v.size() == dim);
    bool constant_part_zero = true;
    for (double c : data.v)
        if (c != 0) constant_part_zero = false;
    if (!constant_part_zero) {
        std::vector<double> pd(dim);
        for (std::size_t i = 0; i < dim; ++i) pd[i] = p[i].get_d();
        return fiber_membership(pd, data, tol);
    }
    for (const auto& row : annihilator(data)) {
        Rat acc(0);
        for (std::size_t j = 0; j < dim; ++j) acc += row[j] * (p[j] - data.v0[j]);
        if (frac_mod1(acc) != 0) return false;
    }
    return true;
}

std::optional<long> torsion_section_test_g1(const std::vector<MixedPoint>& samples, long M,
                                            double tol) {
    if (samples.size() < 3) throw InsufficientSamples();
    for (const MixedPoint& s : samples) assert(s.Z.g() == 1);
    for (long m = 1; m <= M; ++m) {
        bool all = true;
        for (const MixedPoint& s : samples) {
            if (s.rational()) {
                for (const Rat& c : *s.v_exact)
                    if (frac_mod1(c * m) != 0) {
                        all = false;
                        break;
                    }
            } else {
                for (double c : s.v) {
                    double mc = m * c;
                    if (std::abs(mc - std::round(mc)) > tol) {
                        all = false;
                        break;
                    }
                }
            }
            if (!all) break;
        }
        if (all) return m;
    }
    return std::nullopt;
}

} // namespace orbitlab
