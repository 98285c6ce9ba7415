#pragma once

#include <pteq/errors.hpp>
#include <pteq/json_io.hpp>
#include <pteq/linalg.hpp>
#include <pteq/matrix.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace pteq {

/*
 * Positive definite rational quadratic form, held as its Gram matrix.
 * Definiteness is decided exactly by the signs of the leading principal
 * minors; no eigenvalues are ever needed over Q.
 */
class QuadraticForm {
public:
    explicit QuadraticForm(Matrix gram) : gram_(std::move(gram)) {
        if (!gram_.is_square() || gram_.rows() == 0)
            throw InstanceError("QuadraticForm: Gram matrix must be square and nonempty");
        if (!gram_.is_symmetric())
            throw InstanceError("QuadraticForm: Gram matrix must be symmetric");
        for (int k = 1; k <= gram_.rows(); ++k) {
            if (determinant(gram_.block(0, 0, k, k)).sign() <= 0)
                throw InstanceError("QuadraticForm: leading principal minor " +
                                    std::to_string(k) + " is not positive");
        }
    }

    int dim() const { return gram_.rows(); }
    const Matrix& gram() const { return gram_; }

    /// x^T Q y, the bilinear pairing.
    Rational pair(const Point& x, const Point& y) const {
        if (static_cast<int>(x.size()) != dim() || static_cast<int>(y.size()) != dim())
            throw ShapeError("QuadraticForm::pair: point dimension mismatch");
        Rational total(0);
        for (int i = 0; i < dim(); ++i) {
            if (x[static_cast<size_t>(i)].is_zero()) continue;
            Rational row(0);
            for (int j = 0; j < dim(); ++j)
                row += gram_(i, j) * y[static_cast<size_t>(j)];
            total += x[static_cast<size_t>(i)] * row;
        }
        return total;
    }

    Rational evaluate(const Point& x) const { return pair(x, x); }

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
        return a.gram_ == b.gram_;
    }

private:
    Matrix gram_;
};

/*
 * The built-in diagonal family: triangular_form(n) is the (n-1)-dimensional
 * form diag[1, 3, 6, ..., n(n-1)/2] (k-th entry the triangular number
 * k(k+1)/2) and pronic_form(n) is its doubling diag[2, 6, 12, ..., n(n-1)].
 * The doubled form is the Gram matrix of the block conjugation basis; halving
 * it is a similarity, so the two have the same rational orthogonal group.
 */
inline QuadraticForm triangular_form(int n) {
    if (n < 2) throw PreconditionError("triangular_form: need n >= 2");
    std::vector<Rational> d;
    d.reserve(static_cast<size_t>(n - 1));
    for (long k = 1; k < n; ++k) d.emplace_back(k * (k + 1), 2L);
    return QuadraticForm(Matrix::diagonal(d));
}

inline QuadraticForm pronic_form(int n) {
    if (n < 2) throw PreconditionError("pronic_form: need n >= 2");
    std::vector<Rational> d;
    d.reserve(static_cast<size_t>(n - 1));
    for (long k = 1; k < n; ++k) d.emplace_back(k * (k + 1));
    return QuadraticForm(Matrix::diagonal(d));
}

/// Exact test of M^T Q M = Q.
inline bool in_orthogonal_group(const Matrix& m, const QuadraticForm& q) {
    if (!m.is_square() || m.rows() != q.dim())
        throw ShapeError("in_orthogonal_group: matrix is " + m.shape_str() +
                         ", form has dimension " + std::to_string(q.dim()));
    return m.transpose() * q.gram() * m == q.gram();
}

/*
 * Generates elements of O(Q, Q) from skew-symmetric seeds:
 *
 *     M = (I + Q^{-1}K)^{-1} (I - Q^{-1}K),   K = -K^T.
 *
 * Q^{-1}K is skew-adjoint for the Q-inner product, so its Cayley transform
 * is Q-orthogonal; I + Q^{-1}K is nonsingular because (I + Q^{-1}K)x = 0
 * forces x^T Q x = 0. The postcondition M^T Q M = Q is asserted.
 */
inline Matrix cayley_orthogonal(const Matrix& k, const QuadraticForm& q) {
    if (!k.is_square() || k.rows() != q.dim())
        throw ShapeError("cayley_orthogonal: K is " + k.shape_str() +
                         ", form has dimension " + std::to_string(q.dim()));
    if (k.transpose() != -k)
        throw PreconditionError("cayley_orthogonal: K is not skew-symmetric");
    const Matrix eye = Matrix::identity(q.dim());
    const Matrix n = inverse(q.gram()) * k;
    Matrix inv;
    try {
        inv = inverse(eye + n);
    } catch (const SingularMatrixError&) {
        throw PreconditionError("cayley_orthogonal: I + Q^{-1}K is singular");
    }
    Matrix m = inv * (eye - n);
    if (!in_orthogonal_group(m, q))
        throw InternalCheckError("cayley_orthogonal: output fails M^T Q M = Q");
    return m;
}

/// Every prime congruent to 3 mod 4 must appear to an even power.
inline bool is_sum_of_two_squares(std::uint64_t n) {
    if (n < 2) return true; // 0 = 0^2+0^2, 1 = 1^2+0^2
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (p % 4 == 3 && e % 2 == 1) return false;
    }
    // Leftover prime factor > sqrt(original n).
    return n % 4 != 3;
}

enum class SchoenbergClause {
    none,
    odd_square,       ///< n odd and a perfect square
    divisible_by_4,   ///< n = 0 (mod 4)
    two_mod_4_sum_sq, ///< n = 2 (mod 4) and n a sum of two squares
};

inline const char* to_string(SchoenbergClause c) {
    switch (c) {
        case SchoenbergClause::odd_square: return "n odd and square";
        case SchoenbergClause::divisible_by_4: return "n = 0 (mod 4)";
        case SchoenbergClause::two_mod_4_sum_sq: return "n = 2 (mod 4) and a sum of two squares";
        case SchoenbergClause::none: break;
    }
    return "none";
}

struct SchoenbergResult {
    bool similar = false;
    SchoenbergClause clause = SchoenbergClause::none;
};

/*
 * Schoenberg's classification: the (n-1)-dimensional forms
 * sum_k k(k+1) x_k^2 and sum_k y_k^2 are similar over Q exactly when
 * (a) n is odd and square, (b) n = 0 (mod 4), or (c) n = 2 (mod 4) and n is
 * a sum of two squares. In those cases O_{n-1}(Q, Q) is conjugate to the
 * usual rational orthogonal group O(n-1, Q). Only the decision for this
 * family is exposed; a general similarity decision procedure is out of scope.
 */
inline SchoenbergResult schoenberg_similar_to_identity(std::uint64_t n) {
    if (n < 2) throw PreconditionError("schoenberg_similar_to_identity: need n >= 2");
    if (n % 2 == 1) {
        std::uint64_t r = 0;
        while ((r + 1) * (r + 1) <= n) ++r;
        if (r * r == n) return {true, SchoenbergClause::odd_square};
        return {false, SchoenbergClause::none};
    }
    if (n % 4 == 0) return {true, SchoenbergClause::divisible_by_4};
    if (is_sum_of_two_squares(n)) return {true, SchoenbergClause::two_mod_4_sum_sq};
    return {false, SchoenbergClause::none};
}

/*
 * Witness check for similarity: verifies g^T Q1 g = a Q2 exactly. Finding
 * witnesses is out of scope; refuting similarity is impossible here.
 */
inline bool equivalence_witness_check(const QuadraticForm& q1, const QuadraticForm& q2,
                                      const Matrix& g, const Rational& a) {
    if (q1.dim() != q2.dim())
        throw ShapeError("equivalence_witness_check: form dimensions differ");
    if (!g.is_square() || g.rows() != q1.dim())
        throw ShapeError("equivalence_witness_check: witness is " + g.shape_str() +
                         ", forms have dimension " + std::to_string(q1.dim()));
    if (a.is_zero())
        throw PreconditionError("equivalence_witness_check: scale a must be nonzero");
    return g.transpose() * q1.gram() * g == a * q2.gram();
}

} // namespace pteq
