#pragma once

#include "orbitlab/errors.hpp"
#include "orbitlab/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace orbitlab {

// Dense matrix over Q, row-major. Used for similitudes, reduction
// certificates, isogeny representations and the symplectic form itself.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Rat(0)) {}
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);

    // Row-major integer initializer, mostly for tests and fixed generators.
    static RationalMatrix from_ints(std::size_t rows, std::size_t cols,
                                    std::initializer_list<long> vals);
    static RationalMatrix identity(std::size_t n);
    static RationalMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rat& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    const std::vector<Rat>& entries() const { return entries_; }

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix operator+(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix operator*(const Rat& c) const;
    std::vector<Rat> operator*(const std::vector<Rat>& v) const;
    bool operator==(const RationalMatrix& o) const = default;

    Rat det() const;
    // Throws Singular.
    RationalMatrix inverse() const;

    bool is_integral() const;
    bool is_zero() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> entries_;
};

Int height(const RationalMatrix& m);

// The standard alternating form J = [[0, I_g], [-I_g, 0]].
struct SymplecticForm {
    std::size_t g;
    RationalMatrix J;

    explicit SymplecticForm(std::size_t genus);
};

// Multiplier nu with M^t J M = nu J. Throws Singular / NotASimilitude.
Rat gsp_multiplier(const RationalMatrix& m, const SymplecticForm& form);
Rat gsp_multiplier(const RationalMatrix& m); // derives g = rows/2

struct HermiteResult {
    RationalMatrix h; // upper triangular, positive diagonal, reduced above
    RationalMatrix u; // unimodular, h = u * m
};

// Row-style HNF of a nonsingular integral matrix. Throws Singular.
HermiteResult hermite_normal_form(const RationalMatrix& m);

// Basis of the integer kernel {x in Z^cols : M x = 0} of a rational matrix.
// The returned lattice is saturated (= Z^cols intersected with the Q-kernel).
std::vector<std::vector<Rat>> integer_kernel(const RationalMatrix& m);

// Basis of the rational kernel {x in Q^cols : M x = 0}.
std::vector<std::vector<Rat>> rational_kernel(const RationalMatrix& m);

// Basis of the largest subspace on which every generator acts as the
// identity: intersection of ker(gens[i] - I).
std::vector<std::vector<Rat>> trivial_isotypic(const std::vector<RationalMatrix>& gens,
                                               std::size_t dim);

} // namespace orbitlab
