#pragma once

#include <pteq/errors.hpp>
#include <pteq/json_io.hpp>
#include <pteq/linalg.hpp>
#include <pteq/matrix.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pteq {

/*
 * A candidate solution of the r-dimensional power-sum problem of degree m and
 * size n: two multisets of n points in Q^r, stored as the columns of r x n
 * matrices. Construction validates shapes only; verify() decides whether the
 * power-sum identities actually hold, so invalid candidates are representable
 * and can be rejected with a concrete witness.
 */
struct PteSolution {
    int r = 0; ///< dimension
    int n = 0; ///< size (points per side)
    int m = 0; ///< intended degree; stored, not inferred
    Matrix A;  ///< r x n, columns are points
    Matrix B;  ///< r x n, columns are points

    PteSolution(int r, int n, int m, Matrix A, Matrix B)
        : r(r), n(n), m(m), A(std::move(A)), B(std::move(B)) {
        if (r <= 0 || n <= 0 || m < 0)
            throw ShapeError("PteSolution: need r >= 1, n >= 1, m >= 0");
        if (this->A.rows() != r || this->A.cols() != n)
            throw ShapeError("PteSolution: A is " + this->A.shape_str() + ", expected " +
                             std::to_string(r) + "x" + std::to_string(n));
        if (this->B.rows() != r || this->B.cols() != n)
            throw ShapeError("PteSolution: B is " + this->B.shape_str() + ", expected " +
                             std::to_string(r) + "x" + std::to_string(n));
    }
};

/// One violated power-sum identity, reported exactly.
struct PowerSumViolation {
    std::vector<int> exponents; ///< (k_1, ..., k_r)
    Rational lhs;               ///< sum over A
    Rational rhs;               ///< sum over B

    std::string str() const {
        std::string s = "sum a^(";
        for (size_t i = 0; i < exponents.size(); ++i)
            s += (i ? "," : "") + std::to_string(exponents[i]);
        s += ") = " + lhs.str() + " but sum b^(...) = " + rhs.str();
        return s;
    }
};

struct VerifyResult {
    bool ok = false;
    bool disjoint = false; ///< diagnostic only, never a validity condition
    std::optional<PowerSumViolation> violation;
};

/*
 * Enumerates exponent tuples (k_1,...,k_r) with 1 <= sum <= m in graded
 * lexicographic order: total degree 1, then 2, ...; within a degree, tuples
 * in lexicographically decreasing order starting from (d, 0, ..., 0). The
 * callback returns false to stop early.
 */
inline void for_each_exponent_tuple(int r, int m,
                                    const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> k(static_cast<size_t>(r), 0);
    for (int d = 1; d <= m; ++d) {
        // First composition of d into r parts, grlex-largest.
        std::fill(k.begin(), k.end(), 0);
        k[0] = d;
        while (true) {
            if (!fn(k)) return;
            // Next composition in lexicographically decreasing order: take one
            // unit from the rightmost nonzero entry before the last slot and
            // restart the tail just after it.
            int i = r - 2;
            while (i >= 0 && k[static_cast<size_t>(i)] == 0) --i;
            if (i < 0) break;
            --k[static_cast<size_t>(i)];
            const int tail = k[static_cast<size_t>(r - 1)] + 1;
            k[static_cast<size_t>(r - 1)] = 0;
            k[static_cast<size_t>(i + 1)] = tail;
        }
    }
}

namespace detail {

/// Monomial power sum over the columns of M for exponent tuple k.
inline Rational power_sum(const Matrix& M, const std::vector<int>& k) {
    Rational total(0);
    for (int col = 0; col < M.cols(); ++col) {
        Rational term(1);
        for (int row = 0; row < M.rows(); ++row) {
            const int e = k[static_cast<size_t>(row)];
            const Rational& x = M(row, col);
            for (int p = 0; p < e; ++p) term *= x;
            if (term.is_zero() && e > 0) break;
        }
        total += term;
    }
    return total;
}

inline bool multisets_disjoint(const Matrix& A, const Matrix& B) {
    for (int i = 0; i < A.cols(); ++i)
        for (int j = 0; j < B.cols(); ++j)
            if (A.col_vector(i) == B.col_vector(j)) return false;
    return true;
}

} // namespace detail

/*
 * Checks every monomial power-sum identity of total degree 1..m, exactly.
 * Verification short-circuits at the first violated identity (graded-lex
 * order), so counterexample reports are deterministic. Disjointness of the
 * two multisets is reported as a flag; equal sides are a legal solution.
 */
inline VerifyResult verify(const PteSolution& sol) {
    VerifyResult res;
    res.disjoint = detail::multisets_disjoint(sol.A, sol.B);
    res.ok = true;
    for_each_exponent_tuple(sol.r, sol.m, [&](const std::vector<int>& k) {
        Rational lhs = detail::power_sum(sol.A, k);
        Rational rhs = detail::power_sum(sol.B, k);
        if (lhs != rhs) {
            res.ok = false;
            res.violation = PowerSumViolation{k, std::move(lhs), std::move(rhs)};
            return false;
        }
        return true;
    });
    return res;
}

/*
 * A solution whose concatenated witness [A B] equals its own RREF. Row
 * operations act as a linear change of coordinates on the points, and equal
 * moments up to degree m are preserved by any linear map, so the normalized
 * pair is again a degree-m solution.
 */
struct NormalizedSolution {
    PteSolution base;
    Matrix witness;               ///< the r x 2n matrix [A B], in RREF
    std::vector<int> pivot_columns;
    bool pivots_in_b = false;     ///< flagged, not repaired
};

inline NormalizedSolution normalize(const PteSolution& sol) {
    const int rank_a = rank(sol.A);
    const int rank_b = rank(sol.B);
    if (rank_a < sol.r || rank_b < sol.r) {
        std::string side = rank_a < sol.r && rank_b < sol.r ? "A and B"
                          : rank_a < sol.r                  ? "A"
                                                            : "B";
        throw PreconditionError("normalize: rank deficient side " + side + " (rank A = " +
                                std::to_string(rank_a) + ", rank B = " + std::to_string(rank_b) +
                                ", need " + std::to_string(sol.r) + ")");
    }
    RrefResult r = rref(Matrix::hcat(sol.A, sol.B));
    Matrix a = r.matrix.block(0, 0, sol.r, sol.n);
    Matrix b = r.matrix.block(0, sol.n, sol.r, sol.n);
    NormalizedSolution out{PteSolution(sol.r, sol.n, sol.m, std::move(a), std::move(b)),
                           std::move(r.matrix), std::move(r.pivot_columns), false};
    for (int p : out.pivot_columns)
        if (p >= sol.n) out.pivots_in_b = true;
    return out;
}

/*
 * The k cyclic shifts of v under (x_1,...,x_k) -> (x_k,x_1,...,x_{k-1}),
 * as the columns of a k x k matrix in orbit order. Duplicates are kept:
 * the orbit is a multiset of exactly k points.
 */
inline Matrix cyclic_orbit(const Point& v) {
    const int k = static_cast<int>(v.size());
    if (k == 0) throw ShapeError("cyclic_orbit: empty vector");
    Matrix m(k, k);
    Point cur = v;
    for (int j = 0; j < k; ++j) {
        m.set_col(j, cur);
        Point next(static_cast<size_t>(k));
        next[0] = cur[static_cast<size_t>(k - 1)];
        for (int i = 1; i < k; ++i) next[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
        cur = std::move(next);
    }
    return m;
}

// --- solution file format: {"r": int, "n": int, "m": int, "A": matrix, "B": matrix}

inline Json to_json(const PteSolution& s) {
    return Json{{"r", s.r}, {"n", s.n}, {"m", s.m}, {"A", to_json(s.A)}, {"B", to_json(s.B)}};
}

inline PteSolution solution_from_json(const Json& j) {
    if (!j.is_object())
        throw ParseError("solution: expected {r, n, m, A, B}");
    for (const char* key : {"r", "n", "m", "A", "B"})
        if (!j.contains(key)) throw ParseError(std::string("solution: missing field ") + key);
    try {
        return PteSolution(j.at("r").get<int>(), j.at("n").get<int>(), j.at("m").get<int>(),
                           matrix_from_json(j.at("A")), matrix_from_json(j.at("B")));
    } catch (const ShapeError& e) {
        throw ParseError(std::string("solution: ") + e.what());
    }
}

} // namespace pteq
