#pragma once

// Exact rational linear algebra: sparse Gauss-Jordan elimination with
// optional row-operation tracking, used for nullspaces, consistency
// certificates and ranks.

#include <cubix/rational.hpp>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cubix {

using Vector = std::vector<Rational>;
using SparseRow = std::map<std::size_t, Rational>;

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

    std::size_t rows() const { return data_.size(); }
    std::size_t cols() const { return cols_; }

    void set(std::size_t r, std::size_t c, const Rational& v) {
        check(r, c);
        if (v == 0)
            data_[r].erase(c);
        else
            data_[r][c] = v;
    }

    void add_to(std::size_t r, std::size_t c, const Rational& v) {
        check(r, c);
        if (v == 0) return;
        auto [it, inserted] = data_[r].try_emplace(c, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0) data_[r].erase(it);
        }
    }

    Rational at(std::size_t r, std::size_t c) const {
        check(r, c);
        auto it = data_[r].find(c);
        return it == data_[r].end() ? Rational(0) : it->second;
    }

    const SparseRow& row(std::size_t r) const { return data_.at(r); }

    /// Appends an empty row and returns its index.
    std::size_t add_row() {
        data_.emplace_back();
        return data_.size() - 1;
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    Vector multiply(std::span<const Rational> x) const {
        if (x.size() != cols_) throw ContractViolation("multiply: vector length != cols");
        Vector out(rows());
        for (std::size_t r = 0; r < rows(); ++r)
            for (const auto& [c, v] : data_[r]) out[r] += v * x[c];
        return out;
    }

    /// yᵀA
    Vector left_multiply(std::span<const Rational> y) const {
        if (y.size() != rows()) throw ContractViolation("left_multiply: vector length != rows");
        Vector out(cols_);
        for (std::size_t r = 0; r < rows(); ++r) {
            if (y[r] == 0) continue;
            for (const auto& [c, v] : data_[r]) out[c] += y[r] * v;
        }
        return out;
    }

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= data_.size() || c >= cols_) throw ContractViolation("matrix index out of range");
    }

    std::size_t cols_ = 0;
    std::vector<SparseRow> data_;
};

struct SolutionFamily {
    Vector particular;
    std::vector<Vector> nullspace;
};

/// yᵀA = 0 and yᵀb != 0.
struct NoSolutionCertificate {
    Vector y;
};

using SolveResult = std::variant<NoSolutionCertificate, SolutionFamily>;

namespace detail {

inline void axpy_row(SparseRow& target, const Rational& factor, const SparseRow& source) {
    for (const auto& [c, v] : source) {
        auto [it, inserted] = target.try_emplace(c, 0);
        it->second -= factor * v;
        if (it->second == 0) target.erase(it);
    }
}

/// Reduced row echelon form. Columns are visited in ascending order; among
/// candidate rows for a pivot the one with fewest nonzeros wins, lowest index
/// on ties.
struct Echelon {
    std::vector<SparseRow> rows;
    Vector rhs;
    std::vector<SparseRow> tracker;  // rows[r] = Σ tracker[r][k] · original[k]
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (col, row)
    std::vector<bool> is_pivot_row;
};

inline Echelon reduce(const SparseMatrix& a, const Vector* b, bool track) {
    Echelon e;
    const std::size_t m = a.rows();
    e.rows.reserve(m);
    for (std::size_t r = 0; r < m; ++r) e.rows.push_back(a.row(r));
    if (b) e.rhs = *b;
    if (track) {
        e.tracker.resize(m);
        for (std::size_t r = 0; r < m; ++r) e.tracker[r][r] = 1;
    }
    e.is_pivot_row.assign(m, false);

    // column -> rows currently holding a nonzero there
    std::vector<std::vector<std::size_t>> col_rows(a.cols());
    for (std::size_t r = 0; r < m; ++r)
        for (const auto& [c, v] : e.rows[r]) col_rows[c].push_back(r);

    for (std::size_t c = 0; c < a.cols(); ++c) {
        std::size_t best = m;
        for (std::size_t r : col_rows[c]) {
            if (e.is_pivot_row[r] || !e.rows[r].count(c)) continue;
            if (best == m || e.rows[r].size() < e.rows[best].size() ||
                (e.rows[r].size() == e.rows[best].size() && r < best))
                best = r;
        }
        if (best == m) continue;

        const Rational inv = 1 / e.rows[best].at(c);
        for (auto& [k, v] : e.rows[best]) v *= inv;
        if (b) e.rhs[best] *= inv;
        if (track)
            for (auto& [k, v] : e.tracker[best]) v *= inv;

        for (std::size_t r : col_rows[c]) {
            if (r == best) continue;
            auto it = e.rows[r].find(c);
            if (it == e.rows[r].end()) continue;
            const Rational factor = it->second;
            // remember which columns gain a new entry in row r
            for (const auto& [k, v] : e.rows[best])
                if (!e.rows[r].count(k)) col_rows[k].push_back(r);
            axpy_row(e.rows[r], factor, e.rows[best]);
            if (b) e.rhs[r] -= factor * e.rhs[best];
            if (track) axpy_row(e.tracker[r], factor, e.tracker[best]);
        }
        e.is_pivot_row[best] = true;
        e.pivots.emplace_back(c, best);
    }
    return e;
}

inline std::vector<Vector> nullspace_from(const Echelon& e, std::size_t cols) {
    std::vector<bool> pivot_col(cols, false);
    for (auto [c, r] : e.pivots) pivot_col[c] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (pivot_col[f]) continue;
        Vector v(cols);
        v[f] = 1;
        for (auto [c, r] : e.pivots) {
            auto it = e.rows[r].find(f);
            if (it != e.rows[r].end()) v[c] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

inline std::size_t rank(const SparseMatrix& a) {
    return detail::reduce(a, nullptr, false).pivots.size();
}

/// Basis of {v : Av = 0}, one vector per non-pivot column in ascending order.
inline std::vector<Vector> nullspace_basis(const SparseMatrix& a) {
    return detail::nullspace_from(detail::reduce(a, nullptr, false), a.cols());
}

/// Either one particular solution plus a nullspace basis, or a left-kernel
/// vector y with yᵀA = 0 and yᵀb != 0.
inline SolveResult solve(const SparseMatrix& a, const Vector& b) {
    if (b.size() != a.rows())
        throw ContractViolation("solve: rhs length " + std::to_string(b.size()) +
                                " != rows " + std::to_string(a.rows()));
    const auto e = detail::reduce(a, &b, true);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (e.is_pivot_row[r] || e.rhs[r] == 0) continue;
        NoSolutionCertificate cert{Vector(a.rows())};
        for (const auto& [k, v] : e.tracker[r]) cert.y[k] = v;
        return cert;
    }
    SolutionFamily family;
    family.particular.assign(a.cols(), 0);
    for (auto [c, r] : e.pivots) family.particular[c] = e.rhs[r];
    family.nullspace = detail::nullspace_from(e, a.cols());
    return family;
}

/// Dense determinant by rational elimination with first-nonzero pivoting.
inline Rational determinant(std::vector<Vector> m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw ContractViolation("determinant: matrix is not square");
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

}  // namespace cubix
