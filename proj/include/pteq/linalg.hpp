#pragma once

#include <pteq/errors.hpp>
#include <pteq/matrix.hpp>

#include <vector>

namespace pteq {

struct RrefResult {
    Matrix matrix;
    int rank = 0;
    std::vector<int> pivot_columns;
};

/*
 * Reduced row echelon form by Gauss-Jordan elimination.
 *
 * Pivot choice: the first nonzero entry scanning top-to-bottom in the
 * leftmost unresolved column. Arithmetic is exact, so there is nothing to
 * stabilize; the fixed rule makes the result (and every error report built
 * on it) deterministic. The RREF itself is unique regardless.
 */
inline RrefResult rref(Matrix m) {
    RrefResult out;
    const int rows = m.rows(), cols = m.cols();
    int pivot_row = 0;
    for (int col = 0; col < cols && pivot_row < rows; ++col) {
        int found = -1;
        for (int i = pivot_row; i < rows; ++i) {
            if (!m(i, col).is_zero()) { found = i; break; }
        }
        if (found < 0) continue;
        if (found != pivot_row) m.swap_rows(found, pivot_row);

        const Rational inv = m(pivot_row, col).reciprocal();
        for (int j = col; j < cols; ++j) m(pivot_row, j) *= inv;

        for (int i = 0; i < rows; ++i) {
            if (i == pivot_row || m(i, col).is_zero()) continue;
            const Rational factor = m(i, col);
            for (int j = col; j < cols; ++j)
                m(i, j) -= factor * m(pivot_row, j);
        }
        out.pivot_columns.push_back(col);
        ++pivot_row;
    }
    out.rank = pivot_row;
    out.matrix = std::move(m);
    return out;
}

inline int rank(const Matrix& m) { return rref(m).rank; }

/*
 * Exact inverse by Gauss-Jordan on the augmented matrix [a | I]. Entry growth
 * stays polynomial, unlike the adjugate route. Throws SingularMatrixError
 * carrying the rank elimination reached.
 */
inline Matrix inverse(const Matrix& a) {
    if (!a.is_square())
        throw ShapeError("inverse: matrix is " + a.shape_str() + ", not square");
    const int n = a.rows();
    RrefResult r = rref(Matrix::hcat(a, Matrix::identity(n)));
    if (r.rank < n || r.pivot_columns.back() >= n) {
        // Rank of a alone: pivots that landed inside the left block.
        int rank_a = 0;
        for (int p : r.pivot_columns)
            if (p < n) ++rank_a;
        throw SingularMatrixError(
            "inverse: singular matrix of rank " + std::to_string(rank_a) + " < " + std::to_string(n),
            rank_a);
    }
    return r.matrix.block(0, n, n, n);
}

/// Determinant by Gaussian elimination (product of pivots, sign from swaps).
inline Rational determinant(Matrix m) {
    if (!m.is_square())
        throw ShapeError("determinant: matrix is " + m.shape_str() + ", not square");
    const int n = m.rows();
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int found = -1;
        for (int i = col; i < n; ++i) {
            if (!m(i, col).is_zero()) { found = i; break; }
        }
        if (found < 0) return Rational(0);
        if (found != col) {
            m.swap_rows(found, col);
            det = -det;
        }
        det *= m(col, col);
        const Rational inv = m(col, col).reciprocal();
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            const Rational factor = m(i, col) * inv;
            for (int j = col; j < n; ++j)
                m(i, j) -= factor * m(col, j);
        }
    }
    return det;
}

} // namespace pteq
