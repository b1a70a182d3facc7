#pragma once

#include <stdexcept>
#include <string>

namespace orbitlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotASimilitude : Error {
    explicit NotASimilitude(const std::string& what = "matrix is not a symplectic similitude")
        : Error(what) {}
};

struct Singular : Error {
    explicit Singular(const std::string& what = "matrix is singular") : Error(what) {}
};

struct NotRational : Error {
    explicit NotRational(const std::string& what = "value carries no exact rational tag")
        : Error(what) {}
};

struct NumericalBreakdown : Error {
    explicit NumericalBreakdown(const std::string& what = "numerical breakdown") : Error(what) {}
};

struct IterationLimit : Error {
    explicit IterationLimit(const std::string& what = "iteration limit exceeded") : Error(what) {}
};

struct DegreeSearchExhausted : Error {
    explicit DegreeSearchExhausted(const std::string& what = "no isogeny found within degree bound")
        : Error(what) {}
};

struct WitnessVerificationFailed : Error {
    explicit WitnessVerificationFailed(const std::string& what = "witness action residual too large")
        : Error(what) {}
};

struct PrecisionLoss : Error {
    explicit PrecisionLoss(const std::string& what = "bit budget exhausted before convergence")
        : Error(what) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what = "candidate budget exceeded") : Error(what) {}
};

struct InsufficientSamples : Error {
    explicit InsufficientSamples(const std::string& what = "too few section samples") : Error(what) {}
};

struct KernelPoint : Error {
    explicit KernelPoint(const std::string& what = "point lies in the isogeny kernel") : Error(what) {}
};

} // namespace orbitlab
