#include "orbitlab/matrix.hpp"

#include <cassert>
#include <utility>

namespace orbitlab {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    assert(entries_.size() == rows_ * cols_);
}

RationalMatrix RationalMatrix::from_ints(std::size_t rows, std::size_t cols,
                                         std::initializer_list<long> vals) {
    assert(vals.size() == rows * cols);
    RationalMatrix m(rows, cols);
    std::size_t k = 0;
    for (long v : vals) m.entries_[k++] = Rat(v);
    return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::zero(std::size_t rows, std::size_t cols) {
    return RationalMatrix(rows, cols);
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    assert(cols_ == o.rows_);
    RationalMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    RationalMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k] + o.entries_[k];
    return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    RationalMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k] - o.entries_[k];
    return r;
}

RationalMatrix RationalMatrix::operator*(const Rat& c) const {
    RationalMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k] * c;
    return r;
}

std::vector<Rat> RationalMatrix::operator*(const std::vector<Rat>& v) const {
    assert(v.size() == cols_);
    std::vector<Rat> r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

Rat RationalMatrix::det() const {
    assert(is_square());
    RationalMatrix a = *this;
    const std::size_t n = rows_;
    Rat d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a.at(pivot, col) == 0) ++pivot;
        if (pivot == n) return Rat(0);
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
            d = -d;
        }
        d *= a.at(col, col);
        Rat inv = Rat(1) / a.at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a.at(i, col) == 0) continue;
            Rat f = a.at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
        }
    }
    return d;
}

RationalMatrix RationalMatrix::inverse() const {
    assert(is_square());
    const std::size_t n = rows_;
    RationalMatrix a = *this;
    RationalMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a.at(pivot, col) == 0) ++pivot;
        if (pivot == n) throw Singular();
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(pivot, j), a.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        Rat p = Rat(1) / a.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a.at(col, j) *= p;
            inv.at(col, j) *= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

bool RationalMatrix::is_integral() const {
    for (const Rat& r : entries_)
        if (r.get_den() != 1) return false;
    return true;
}

bool RationalMatrix::is_zero() const {
    for (const Rat& r : entries_)
        if (r != 0) return false;
    return true;
}

Int height(const RationalMatrix& m) { return height(m.entries()); }

SymplecticForm::SymplecticForm(std::size_t genus) : g(genus), J(2 * genus, 2 * genus) {
    for (std::size_t i = 0; i < g; ++i) {
        J.at(i, g + i) = 1;
        J.at(g + i, i) = -1;
    }
}

Rat gsp_multiplier(const RationalMatrix& m, const SymplecticForm& form) {
    assert(m.is_square() && m.rows() == 2 * form.g);
    if (m.det() == 0) throw Singular();
    RationalMatrix s = m.transpose() * form.J * m;
    // nu is read off at the (0, g) slot; the full comparison below validates it.
    Rat nu = s.at(0, form.g);
    if (!(s == form.J * nu)) throw NotASimilitude();
    return nu;
}

Rat gsp_multiplier(const RationalMatrix& m) {
    assert(m.is_square() && m.rows() % 2 == 0);
    return gsp_multiplier(m, SymplecticForm(m.rows() / 2));
}

namespace {

// Row-style integer echelon with unimodular bookkeeping: returns (H, U) with
// H = U * M, H in row echelon form, pivots positive, entries above each pivot
// reduced into [0, pivot). Works for any shape; zero rows sink to the bottom.
std::pair<RationalMatrix, RationalMatrix> integer_echelon(const RationalMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    RationalMatrix h = m;
    RationalMatrix u = RationalMatrix::identity(rows);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Eliminate below row r in column c by gcd steps.
        for (std::size_t i = r + 1; i < rows; ++i) {
            while (h.at(i, c) != 0) {
                if (h.at(r, c) == 0) {
                    for (std::size_t j = 0; j < cols; ++j) std::swap(h.at(r, j), h.at(i, j));
                    for (std::size_t j = 0; j < rows; ++j) std::swap(u.at(r, j), u.at(i, j));
                    break;
                }
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_num().get_mpz_t(),
                           h.at(r, c).get_num().get_mpz_t());
                Rat f{q};
                for (std::size_t j = 0; j < cols; ++j) h.at(i, j) -= f * h.at(r, j);
                for (std::size_t j = 0; j < rows; ++j) u.at(i, j) -= f * u.at(r, j);
                if (h.at(i, c) != 0) {
                    for (std::size_t j = 0; j < cols; ++j) std::swap(h.at(r, j), h.at(i, j));
                    for (std::size_t j = 0; j < rows; ++j) std::swap(u.at(r, j), u.at(i, j));
                }
            }
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0) {
            for (std::size_t j = 0; j < cols; ++j) h.at(r, j) = -h.at(r, j);
            for (std::size_t j = 0; j < rows; ++j) u.at(r, j) = -u.at(r, j);
        }
        // Reduce entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_num().get_mpz_t(),
                       h.at(r, c).get_num().get_mpz_t());
            if (q == 0) continue;
            Rat f{q};
            for (std::size_t j = 0; j < cols; ++j) h.at(i, j) -= f * h.at(r, j);
            for (std::size_t j = 0; j < rows; ++j) u.at(i, j) -= f * u.at(r, j);
        }
        ++r;
    }
    return {h, u};
}

} // namespace

HermiteResult hermite_normal_form(const RationalMatrix& m) {
    assert(m.is_square());
    if (!m.is_integral()) throw Error("hermite_normal_form requires integral entries");
    if (m.det() == 0) throw Singular();
    auto [h, u] = integer_echelon(m);
    return {h, u};
}

std::vector<std::vector<Rat>> rational_kernel(const RationalMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    RationalMatrix a = m;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a.at(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(r, j));
        Rat inv = Rat(1) / a.at(r, c);
        for (std::size_t j = 0; j < cols; ++j) a.at(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            Rat f = a.at(i, c);
            for (std::size_t j = 0; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Rat>> integer_kernel(const RationalMatrix& m) {
    // Echelonize M^t with unimodular row ops; the U-rows matching zero rows
    // of the echelon form span Z^cols ∩ ker(M), which is saturated.
    RationalMatrix mt = m.transpose();
    // Clear denominators by the global lcm (does not change the kernel).
    RationalMatrix mi(mt.rows(), mt.cols());
    Int l = 1;
    for (const Rat& r : mt.entries()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den().get_mpz_t());
    for (std::size_t i = 0; i < mt.rows(); ++i)
        for (std::size_t j = 0; j < mt.cols(); ++j) mi.at(i, j) = mt.at(i, j) * Rat(l);
    auto [h, u] = integer_echelon(mi);
    std::vector<std::vector<Rat>> basis;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) {
                zero = false;
                break;
            }
        if (!zero) continue;
        std::vector<Rat> v(u.cols());
        for (std::size_t j = 0; j < u.cols(); ++j) v[j] = u.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Rat>> trivial_isotypic(const std::vector<RationalMatrix>& gens,
                                               std::size_t dim) {
    if (gens.empty()) {
        std::vector<std::vector<Rat>> basis;
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<Rat> e(dim, Rat(0));
            e[i] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    // Stack (A_i - I) and take the common rational kernel.
    RationalMatrix stacked(gens.size() * dim, dim);
    const RationalMatrix id = RationalMatrix::identity(dim);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        assert(gens[k].rows() == dim && gens[k].cols() == dim);
        RationalMatrix d = gens[k] - id;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) stacked.at(k * dim + i, j) = d.at(i, j);
    }
    return rational_kernel(stacked);
}

} // namespace orbitlab
