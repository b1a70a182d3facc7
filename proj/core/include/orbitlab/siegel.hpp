#pragma once

#include "orbitlab/errors.hpp"
#include "orbitlab/matrix.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace orbitlab {

struct Tolerances {
    double tol_sym = 1e-9;
    double tol_act = 1e-9;
    double tol_pd = 1e-12;
    int max_iter = 10000;
    double cond_bound = 1e12;
};

// Point Z = X + iY of the Siegel upper half space: X, Y symmetric, Y > 0.
class SiegelPoint {
public:
    SiegelPoint(Eigen::MatrixXd x, Eigen::MatrixXd y, const Tolerances& tol = {});

    // g = 1 convenience: tau = x + iy.
    static SiegelPoint tau(double x, double y, const Tolerances& tol = {});

    std::size_t g() const { return static_cast<std::size_t>(x_.rows()); }
    const Eigen::MatrixXd& X() const { return x_; }
    const Eigen::MatrixXd& Y() const { return y_; }
    Eigen::MatrixXcd Z() const;

    double x1() const { return x_(0, 0); }
    double y1() const { return y_(0, 0); }

private:
    Eigen::MatrixXd x_, y_;
};

struct FundDomainCertificate {
    RationalMatrix gamma; // integral, in Sp_{2g}(Z)
    SiegelPoint reduced;
};

// (AZ+B)(CZ+D)^{-1} for a similitude with positive multiplier.
SiegelPoint act(const RationalMatrix& m, const SiegelPoint& z, const Tolerances& tol = {});

// Classical SL_2(Z) reduction to the standard fundamental domain:
// Re in [-1/2, 1/2), |tau| >= 1, and Re <= 0 on the arc |tau| = 1.
FundDomainCertificate reduce_g1(const SiegelPoint& tau, const Tolerances& tol = {});

bool in_fundamental_domain_g1(const SiegelPoint& tau, const Tolerances& tol = {});

// Sp_2(Z)-equivalence of two g=1 points, decided on reduced representatives
// with a both-boundary-copies fallback near the domain boundary.
bool same_sl2z_class(const SiegelPoint& a, const SiegelPoint& b, const Tolerances& tol = {});

// Certified approximate reduction for g >= 2: Y lattice-reduced (LLL),
// |X entries| <= 1/2 + tol_act, leading |z_11| pushed off zero by symplectic
// inversions. The certificate is exact and verifiable; no canonical-domain
// membership is claimed.
FundDomainCertificate reduce_siegel_approx(const SiegelPoint& z, const Tolerances& tol = {});

} // namespace orbitlab
