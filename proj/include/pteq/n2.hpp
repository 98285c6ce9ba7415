#pragma once

#include <pteq/errors.hpp>
#include <pteq/json_io.hpp>
#include <pteq/linalg.hpp>
#include <pteq/matrix.hpp>
#include <pteq/pte.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace pteq {

/*
 * The group of rational orthogonal matrices fixing the all-ones vector:
 *
 *     N2(n) = { M in M_n(Q) : M M^T = I_n, M 1 = 1 }.
 *
 * Equivalently, the matrices A^{-1}B arising from full-rank degree-2 size-n
 * power-sum solution pairs (A, B). Every element admits a Cayley certificate
 *
 *     M = (I + S)^{-1} (I - S) R
 *
 * with S skew-symmetric, S 1 = 0, and R a permutation matrix. Conjugating by
 * a fixed orthogonal-column basis whose first column is the all-ones vector
 * turns N2(n) into the rational orthogonal group of the diagonal form
 * Q' = diag[2, 6, ..., n(n-1)] in dimension n-1; to_block/from_block realize
 * the two directions of that isomorphism.
 */

/// 0-indexed image sequence: perm[i] is the image of i.
using Permutation = std::vector<int>;

inline bool is_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<size_t>(v)]) return false;
        seen[static_cast<size_t>(v)] = true;
    }
    return true;
}

/// Matrix R with R e_i = e_{perm[i]}.
inline Matrix permutation_matrix(const Permutation& perm) {
    if (!is_permutation(perm))
        throw PreconditionError("permutation_matrix: not a permutation of 0..n-1");
    const int n = static_cast<int>(perm.size());
    Matrix r(n, n);
    for (int i = 0; i < n; ++i) r(perm[static_cast<size_t>(i)], i) = Rational(1);
    return r;
}

inline Permutation identity_permutation(int n) {
    Permutation p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

struct MembershipCheck {
    bool ok = false;
    std::string failed_condition; ///< empty when ok; else "M M^T != I" or "M 1 != 1"
};

/// Exact two-condition membership test. Non-square input is a shape error.
inline MembershipCheck membership(const Matrix& m) {
    if (!m.is_square())
        throw ShapeError("membership: matrix is " + m.shape_str() + ", not square");
    const int n = m.rows();
    if (m * m.transpose() != Matrix::identity(n))
        return {false, "M M^T != I"};
    if (m * Matrix::all_ones(n) != Matrix::all_ones(n))
        return {false, "M 1 != 1"};
    return {true, {}};
}

struct CayleyCertificate {
    Matrix skew;      ///< S with S = -S^T and S 1 = 0
    Permutation perm; ///< R
};

/*
 * A certified member of N2(n). Construction re-checks membership exactly;
 * with exact rationals that costs one multiply, so every API boundary pays
 * it. A Cayley certificate is attached when the construction path produced
 * one and can be recovered on demand otherwise.
 */
class N2Element {
public:
    static N2Element from_matrix(Matrix m) {
        MembershipCheck chk = membership(m);
        if (!chk.ok)
            throw PreconditionError("N2Element: " + chk.failed_condition);
        return N2Element(std::move(m), std::nullopt);
    }

    int n() const { return matrix_.rows(); }
    const Matrix& matrix() const { return matrix_; }
    const std::optional<CayleyCertificate>& certificate() const { return certificate_; }

    friend bool operator==(const N2Element& a, const N2Element& b) {
        return a.matrix_ == b.matrix_;
    }

private:
    N2Element(Matrix m, std::optional<CayleyCertificate> cert)
        : matrix_(std::move(m)), certificate_(std::move(cert)) {}

    Matrix matrix_;
    std::optional<CayleyCertificate> certificate_;

    friend N2Element cayley(const Matrix&, const Permutation&);
};

inline bool is_skew_fixing_ones(const Matrix& s) {
    return s.is_square() && s.transpose() == -s &&
           (s * Matrix::all_ones(s.rows())).is_zero();
}

/*
 * Builds (I + S)^{-1} (I - S) R from a certificate. I + S is nonsingular for
 * every rational skew-symmetric S ((I+S)x = 0 forces x^T x = 0); the inverse
 * is still routed through the exact solver, so a violation would surface as
 * an internal check failure rather than silently poisoning the result.
 */
inline N2Element cayley(const Matrix& skew, const Permutation& perm) {
    if (!skew.is_square())
        throw ShapeError("cayley: S is " + skew.shape_str() + ", not square");
    const int n = skew.rows();
    if (static_cast<int>(perm.size()) != n)
        throw ShapeError("cayley: permutation length " + std::to_string(perm.size()) +
                         " != n = " + std::to_string(n));
    if (skew.transpose() != -skew)
        throw PreconditionError("cayley: S is not skew-symmetric");
    if (!(skew * Matrix::all_ones(n)).is_zero())
        throw PreconditionError("cayley: S 1 != 0");
    const Matrix eye = Matrix::identity(n);
    Matrix inv;
    try {
        inv = inverse(eye + skew);
    } catch (const SingularMatrixError&) {
        throw InternalCheckError("cayley: I + S singular for a skew-symmetric S");
    }
    Matrix m = inv * (eye - skew) * permutation_matrix(perm);
    MembershipCheck chk = membership(m);
    if (!chk.ok)
        throw InternalCheckError("cayley: constructed matrix failed " + chk.failed_condition);
    return N2Element(std::move(m), CayleyCertificate{skew, perm});
}

/*
 * A^{-1}B for a full-rank degree-2 size-n solution pair. The membership of
 * the result is a theorem (equal second moments give A A^T = B B^T, equal
 * first moments give A 1 = B 1), so failure here is an internal check error.
 */
inline N2Element from_pte(const Matrix& a, const Matrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw ShapeError("from_pte: need square matrices of equal size, got " +
                         a.shape_str() + " and " + b.shape_str());
    const int n = a.rows();
    const int rank_a = rank(a);
    const int rank_b = rank(b);
    if (rank_a < n || rank_b < n) {
        std::string side = rank_a < n && rank_b < n ? "A and B" : rank_a < n ? "A" : "B";
        throw PreconditionError("from_pte: rank deficient side " + side);
    }
    VerifyResult chk = verify(PteSolution(n, n, 2, a, b));
    if (!chk.ok)
        throw PreconditionError("from_pte: pair is not a degree-2 solution; violated identity: " +
                                chk.violation->str());
    Matrix m = inverse(a) * b;
    MembershipCheck mem = membership(m);
    if (!mem.ok)
        throw InternalCheckError("from_pte: A^{-1}B failed " + mem.failed_condition);
    return N2Element::from_matrix(std::move(m));
}

struct DecomposeOptions {
    // Full lexicographic scan up to this many permutations; n <= 8 fits under
    // the default. Beyond the cap, random permutations are sampled.
    std::uint64_t lex_budget = 40320;
    std::uint64_t random_budget = 40320;
    std::uint64_t seed = 0;
};

/*
 * Recovers a Cayley certificate: scan permutations R in lexicographic order,
 * set M = E R^T, skip when I + M is singular, and return
 * S = (I - M)(I + M)^{-1}. Every element has a certificate, and for the R it
 * came from I + E R^T = 2(I + S)^{-1} is nonsingular, so the full scan cannot
 * exhaust. A capped scan on large n can, and reports so honestly.
 */
inline CayleyCertificate cayley_decompose(const N2Element& e,
                                          const DecomposeOptions& opts = {}) {
    const int n = e.n();
    const Matrix eye = Matrix::identity(n);

    auto attempt = [&](const Permutation& perm) -> std::optional<Matrix> {
        Matrix m = e.matrix() * permutation_matrix(perm).transpose();
        Matrix inv;
        try {
            inv = inverse(eye + m);
        } catch (const SingularMatrixError&) {
            return std::nullopt;
        }
        Matrix s = (eye - m) * inv;
        if (!is_skew_fixing_ones(s))
            throw InternalCheckError("cayley_decompose: recovered S violates skew/ones conditions");
        return s;
    };

    auto certify = [&](std::optional<Matrix> s, const Permutation& perm) {
        CayleyCertificate cert{std::move(*s), perm};
        if (!(cayley(cert.skew, cert.perm) == e))
            throw InternalCheckError("cayley_decompose: certificate does not round-trip");
        return cert;
    };

    std::uint64_t tried = 0;
    bool capped = false;
    Permutation perm = identity_permutation(n);
    do {
        if (tried >= opts.lex_budget) { capped = true; break; }
        ++tried;
        if (auto s = attempt(perm)) return certify(std::move(s), perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (capped) {
        std::mt19937_64 rng(opts.seed);
        Permutation p = identity_permutation(n);
        for (std::uint64_t k = 0; k < opts.random_budget; ++k) {
            std::shuffle(p.begin(), p.end(), rng);
            if (auto s = attempt(p)) return certify(std::move(s), p);
        }
        throw PreconditionError(
            "cayley_decompose: budget exhausted before finding a certificate (n = " +
            std::to_string(n) + "); enlarge DecomposeOptions budgets");
    }
    // Unreachable for a valid element: the parametrization guarantees a hit.
    throw InternalCheckError("cayley_decompose: full permutation scan found no certificate");
}

inline N2Element compose(const N2Element& a, const N2Element& b) {
    if (a.n() != b.n())
        throw ShapeError("compose: sizes " + std::to_string(a.n()) + " and " +
                         std::to_string(b.n()) + " differ");
    return N2Element::from_matrix(a.matrix() * b.matrix());
}

/// Inverse is the transpose, since E E^T = I.
inline N2Element invert(const N2Element& e) {
    return N2Element::from_matrix(e.matrix().transpose());
}

/*
 * Change-of-basis data for the block isomorphism. The built-in basis P has
 * columns 1, b_1, ..., b_{n-1} with b_k = (1,...,1, -k, 0,...,0)^T, the -k in
 * component k+1. Any P whose first column is the all-ones vector and whose
 * columns are pairwise orthogonal (none zero) is accepted; then
 * P^T P = diag[n, |b_1|^2, ..., |b_{n-1}|^2] and Q' is its lower block.
 */
class ConjugationBasis {
public:
    static ConjugationBasis standard(int n) {
        if (n < 2) throw PreconditionError("ConjugationBasis: need n >= 2");
        Matrix p(n, n);
        for (int i = 0; i < n; ++i) p(i, 0) = Rational(1);
        for (int k = 1; k < n; ++k) {
            for (int i = 0; i < k; ++i) p(i, k) = Rational(1);
            p(k, k) = Rational(-k);
        }
        return ConjugationBasis(std::move(p));
    }

    explicit ConjugationBasis(Matrix p) : p_(std::move(p)) {
        if (!p_.is_square() || p_.rows() < 2)
            throw PreconditionError("ConjugationBasis: P must be square, n >= 2");
        const int n = p_.rows();
        for (int i = 0; i < n; ++i)
            if (p_(i, 0) != Rational(1))
                throw PreconditionError("ConjugationBasis: first column of P must be all ones");
        Matrix gram = p_.transpose() * p_;
        for (int i = 0; i < n; ++i) {
            if (gram(i, i).is_zero())
                throw PreconditionError("ConjugationBasis: column " + std::to_string(i) + " is zero");
            for (int j = i + 1; j < n; ++j)
                if (!gram(i, j).is_zero())
                    throw PreconditionError("ConjugationBasis: columns " + std::to_string(i) +
                                            " and " + std::to_string(j) + " are not orthogonal");
        }
        pinv_ = inverse(p_);
        qprime_ = gram.block(1, 1, n - 1, n - 1);
    }

    int n() const { return p_.rows(); }
    const Matrix& P() const { return p_; }
    const Matrix& Pinv() const { return pinv_; }
    /// diag[|b_1|^2, ..., |b_{n-1}|^2]; diag[2, 6, ..., n(n-1)] for the standard basis.
    const Matrix& Qprime() const { return qprime_; }

private:
    Matrix p_;
    Matrix pinv_;
    Matrix qprime_;
};

/*
 * Conjugates E to P^{-1} E P = diag(1, B') and returns B'. The block shape
 * and (B')^T Q' B' = Q' both hold for every member; they are asserted, and a
 * violation is reported as an internal check failure.
 */
inline Matrix to_block(const N2Element& e, const ConjugationBasis& basis) {
    if (e.n() != basis.n())
        throw ShapeError("to_block: element size " + std::to_string(e.n()) +
                         " != basis size " + std::to_string(basis.n()));
    const int n = e.n();
    Matrix t = basis.Pinv() * e.matrix() * basis.P();
    for (int i = 0; i < n; ++i) {
        const bool corner = i == 0;
        if (t(0, i) != (corner ? Rational(1) : Rational(0)) ||
            t(i, 0) != (corner ? Rational(1) : Rational(0)))
            throw InternalCheckError("to_block: conjugate lacks the diag(1, B') block shape");
    }
    Matrix b = t.block(1, 1, n - 1, n - 1);
    if (b.transpose() * basis.Qprime() * b != basis.Qprime())
        throw InternalCheckError("to_block: block fails (B')^T Q' B' = Q'");
    return b;
}

/// Inverse direction: P diag(1, B') P^{-1}, for B' orthogonal for Q'.
inline N2Element from_block(const Matrix& b, const ConjugationBasis& basis) {
    const int n = basis.n();
    if (!b.is_square() || b.rows() != n - 1)
        throw ShapeError("from_block: block is " + b.shape_str() + ", expected " +
                         std::to_string(n - 1) + "x" + std::to_string(n - 1));
    if (b.transpose() * basis.Qprime() * b != basis.Qprime())
        throw PreconditionError("from_block: (B')^T Q' B' != Q'");
    Matrix t(n, n);
    t(0, 0) = Rational(1);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j)
            t(i + 1, j + 1) = b(i, j);
    return N2Element::from_matrix(basis.P() * t * basis.Pinv());
}

// --- JSON: permutations are 0-indexed image arrays

inline Json to_json(const Permutation& p) {
    Json a = Json::array();
    for (int v : p) a.push_back(v);
    return a;
}

inline Permutation permutation_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("permutation: expected array of images");
    Permutation p;
    p.reserve(j.size());
    for (const Json& v : j) p.push_back(v.get<int>());
    if (!is_permutation(p)) throw ParseError("permutation: not a bijection of 0..n-1");
    return p;
}

} // namespace pteq
