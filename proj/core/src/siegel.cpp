#include "orbitlab/siegel.hpp"

#include <cassert>
#include <cmath>
#include <utility>
#include <vector>

namespace orbitlab {

namespace {

Eigen::MatrixXd to_double(const RationalMatrix& m) {
    Eigen::MatrixXd d(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = m.at(i, j).get_d();
    return d;
}

} // namespace

SiegelPoint::SiegelPoint(Eigen::MatrixXd x, Eigen::MatrixXd y, const Tolerances& tol)
    : x_(std::move(x)), y_(std::move(y)) {
    assert(x_.rows() == x_.cols() && y_.rows() == y_.cols() && x_.rows() == y_.rows());
    if ((x_ - x_.transpose()).cwiseAbs().maxCoeff() > tol.tol_sym ||
        (y_ - y_.transpose()).cwiseAbs().maxCoeff() > tol.tol_sym)
        throw NumericalBreakdown("SiegelPoint: X or Y not symmetric within tol_sym");
    x_ = ((x_ + x_.transpose()) / 2).eval();
    y_ = ((y_ + y_.transpose()) / 2).eval();
    Eigen::LLT<Eigen::MatrixXd> llt(y_);
    if (llt.info() != Eigen::Success || y_.diagonal().minCoeff() <= tol.tol_pd)
        throw NumericalBreakdown("SiegelPoint: Y not positive definite");
}

SiegelPoint SiegelPoint::tau(double x, double y, const Tolerances& tol) {
    Eigen::MatrixXd mx(1, 1), my(1, 1);
    mx(0, 0) = x;
    my(0, 0) = y;
    return SiegelPoint(mx, my, tol);
}

Eigen::MatrixXcd SiegelPoint::Z() const {
    return x_.cast<std::complex<double>>() +
           std::complex<double>(0, 1) * y_.cast<std::complex<double>>();
}

SiegelPoint act(const RationalMatrix& m, const SiegelPoint& z, const Tolerances& tol) {
    const std::size_t g = z.g();
    assert(m.rows() == 2 * g && m.cols() == 2 * g);
    Rat nu = gsp_multiplier(m); // throws NotASimilitude / Singular
    if (nu <= 0) throw NotASimilitude("similitude multiplier must be positive to act on H_g^+");

    Eigen::MatrixXd md = to_double(m);
    Eigen::MatrixXcd Z = z.Z();
    Eigen::MatrixXcd A = md.topLeftCorner(g, g).cast<std::complex<double>>();
    Eigen::MatrixXcd B = md.topRightCorner(g, g).cast<std::complex<double>>();
    Eigen::MatrixXcd C = md.bottomLeftCorner(g, g).cast<std::complex<double>>();
    Eigen::MatrixXcd D = md.bottomRightCorner(g, g).cast<std::complex<double>>();

    Eigen::MatrixXcd den = C * Z + D;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(den);
    if (!lu.isInvertible() || 1.0 / lu.rcond() > tol.cond_bound)
        throw NumericalBreakdown("act: CZ+D ill-conditioned");
    Eigen::MatrixXcd W = (A * Z + B) * lu.inverse();
    W = ((W + W.transpose().eval()) / 2).eval();
    return SiegelPoint(W.real(), W.imag(), tol);
}

namespace {

const RationalMatrix kS = RationalMatrix::from_ints(2, 2, {0, -1, 1, 0});

RationalMatrix translation_g1(const Int& n) {
    RationalMatrix t = RationalMatrix::identity(2);
    t.at(0, 1) = Rat(n);
    return t;
}

} // namespace

FundDomainCertificate reduce_g1(const SiegelPoint& tau, const Tolerances& tol) {
    assert(tau.g() == 1);
    double x = tau.x1(), y = tau.y1();
    if (y < tol.tol_pd) throw NumericalBreakdown("reduce_g1: Im tau below tol_pd");
    RationalMatrix gamma = RationalMatrix::identity(2);
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        double n = std::floor(x + 0.5);
        if (n != 0) {
            x -= n;
            gamma = translation_g1(Int(-static_cast<long>(n))) * gamma;
        }
        double norm2 = x * x + y * y;
        if (norm2 < 1 - tol.tol_act) {
            x = -x / norm2;
            y = y / norm2;
            gamma = kS * gamma;
            continue;
        }
        // On the unit circle the representative with Re <= 0 is kept.
        if (std::abs(norm2 - 1) <= tol.tol_act && x > tol.tol_act) {
            x = -x / norm2;
            y = y / norm2;
            gamma = kS * gamma;
        }
        SiegelPoint red = act(gamma, tau, tol);
        return {gamma, red};
    }
    throw NumericalBreakdown("reduce_g1: did not converge");
}

bool in_fundamental_domain_g1(const SiegelPoint& tau, const Tolerances& tol) {
    assert(tau.g() == 1);
    const double x = tau.x1(), y = tau.y1();
    const double norm2 = x * x + y * y;
    if (norm2 < 1 - tol.tol_act) return false;
    if (x < -0.5 - tol.tol_act || x >= 0.5 - tol.tol_act) return false;
    if (std::abs(norm2 - 1) <= tol.tol_act && x > tol.tol_act) return false;
    return true;
}

bool same_sl2z_class(const SiegelPoint& a, const SiegelPoint& b, const Tolerances& tol) {
    FundDomainCertificate ra = reduce_g1(a, tol);
    FundDomainCertificate rb = reduce_g1(b, tol);
    auto close = [&](const SiegelPoint& p, const SiegelPoint& q) {
        return std::abs(p.x1() - q.x1()) <= 10 * tol.tol_act &&
               std::abs(p.y1() - q.y1()) <= 10 * tol.tol_act;
    };
    if (close(ra.reduced, rb.reduced)) return true;
    // Near the boundary the reduction may land on either copy; compare the
    // alternate representatives too.
    auto alternates = [&](const SiegelPoint& p) {
        std::vector<SiegelPoint> alts;
        const double x = p.x1(), y = p.y1();
        const double norm2 = x * x + y * y;
        const double band = 100 * tol.tol_act;
        if (std::abs(norm2 - 1) <= band) alts.push_back(SiegelPoint::tau(-x / norm2, y / norm2, tol));
        if (std::abs(x + 0.5) <= band) alts.push_back(SiegelPoint::tau(x + 1, y, tol));
        if (std::abs(x - 0.5) <= band) alts.push_back(SiegelPoint::tau(x - 1, y, tol));
        return alts;
    };
    for (const SiegelPoint& pa : alternates(ra.reduced))
        if (close(pa, rb.reduced)) return true;
    for (const SiegelPoint& pb : alternates(rb.reduced))
        if (close(ra.reduced, pb)) return true;
    return false;
}

namespace {

// LLL on the Gram matrix G (columns of U are the lattice basis in the
// quadratic form G). Exact integer U, double arithmetic for the Gram data.
Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> lll_unimodular(
    const Eigen::MatrixXd& G) {
    const int n = static_cast<int>(G.rows());
    using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
    IMat U = IMat::Identity(n, n);
    const double delta = 0.99;
    auto gram = [&]() {
        Eigen::MatrixXd Ud = U.cast<double>();
        return Eigen::MatrixXd(Ud.transpose() * G * Ud);
    };
    int guard = 0;
    int k = 1;
    while (k < n && guard++ < 10000) {
        Eigen::MatrixXd Gm = gram();
        // Gram-Schmidt coefficients from the Gram matrix.
        Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd Bs(n);
        for (int i = 0; i < n; ++i) {
            double bi = Gm(i, i);
            for (int j = 0; j < i; ++j) {
                double m = Gm(i, j);
                for (int l = 0; l < j; ++l) m -= mu(i, l) * mu(j, l) * Bs(l);
                mu(i, j) = m / Bs(j);
                bi -= mu(i, j) * mu(i, j) * Bs(j);
            }
            Bs(i) = bi;
        }
        bool changed = false;
        for (int j = k - 1; j >= 0; --j) {
            long long q = std::llround(mu(k, j));
            if (q != 0) {
                U.col(k) -= q * U.col(j);
                changed = true;
            }
        }
        if (changed) continue;
        if (Bs(k) >= (delta - mu(k, k - 1) * mu(k, k - 1)) * Bs(k - 1)) {
            ++k;
        } else {
            U.col(k).swap(U.col(k - 1));
            k = std::max(1, k - 1);
        }
    }
    return U;
}

} // namespace

FundDomainCertificate reduce_siegel_approx(const SiegelPoint& z, const Tolerances& tol) {
    const std::size_t g = z.g();
    assert(g >= 2);
    RationalMatrix gamma = RationalMatrix::identity(2 * g);
    SiegelPoint cur = z;
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        bool changed = false;

        // 1. lattice-reduce Y by a block-diagonal symplectic element.
        auto U = lll_unimodular(cur.Y());
        bool u_trivial = true;
        for (std::size_t i = 0; i < g && u_trivial; ++i)
            for (std::size_t j = 0; j < g; ++j)
                if (U(i, j) != (i == j ? 1 : 0)) {
                    u_trivial = false;
                    break;
                }
        if (!u_trivial) {
            // A = U^t acts as Z -> U^t Z U.
            RationalMatrix a(g, g);
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j) a.at(i, j) = Rat(static_cast<long>(U(j, i)));
            RationalMatrix e = RationalMatrix::zero(2 * g, 2 * g);
            RationalMatrix ainv_t = a.inverse().transpose();
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j) {
                    e.at(i, j) = a.at(i, j);
                    e.at(g + i, g + j) = ainv_t.at(i, j);
                }
            gamma = e * gamma;
            cur = act(e, cur, tol);
            changed = true;
        }

        // 2. integral translation of X by a symmetric integer matrix.
        // floor(x + 1/2) keeps the half-integer boundary stable under repeats.
        Eigen::MatrixXd B = (cur.X().array() + 0.5).floor().matrix();
        if (B.cwiseAbs().maxCoeff() > 0.5) {
            RationalMatrix e = RationalMatrix::identity(2 * g);
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j)
                    e.at(i, g + j) = Rat(-static_cast<long>(std::llround(B(i, j))));
            gamma = e * gamma;
            cur = act(e, cur, tol);
            changed = true;
        }

        // 3. raise the imaginary part by a full symplectic inversion.
        const double z11 = std::hypot(cur.X()(0, 0), cur.Y()(0, 0));
        if (z11 < 1 - tol.tol_act) {
            SymplecticForm form(g);
            gamma = form.J * gamma;
            cur = act(form.J, cur, tol);
            changed = true;
        }

        if (!changed) {
            SiegelPoint red = act(gamma, z, tol);
            return {gamma, red};
        }
    }
    throw IterationLimit("reduce_siegel_approx: max_iter exceeded");
}

} // namespace orbitlab
