#pragma once

#include <pteq/errors.hpp>
#include <pteq/rational.hpp>

#include <string>
#include <vector>

namespace pteq {

/*
 * Gegenbauer (ultraspherical) polynomials for the sphere S^{d-1}, normalized
 * to G_k(1) = 1, with exact rational coefficients:
 *
 *     G_0 = 1,  G_1 = x,
 *     G_k = ((2k + d - 4) x G_{k-1} - (k - 1) G_{k-2}) / (k + d - 3).
 *
 * For d = 2 this is the Chebyshev recurrence G_k = 2x G_{k-1} - G_{k-2}.
 * Any positive rescaling of G_k leaves the design pair-sum criterion intact;
 * this normalization is fixed purely for determinism.
 *
 * Orthogonality is with respect to the weight (1 - x^2)^{(d-3)/2} on [-1, 1].
 * Its even moments, normalized by total mass, are rational for every d >= 2:
 *
 *     m_0 = 1,  m_{2j} = m_{2j-2} (2j - 1) / (2j + d - 2),
 *
 * odd moments vanish. Inner products are evaluated against these normalized
 * moments, so the whole orthogonality check runs in exact arithmetic even
 * when d is even and the raw integrals are transcendental.
 */
class GegenbauerTable {
public:
    GegenbauerTable(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
        if (dim < 2) throw PreconditionError("GegenbauerTable: need dimension >= 2");
        if (max_degree < 0) throw PreconditionError("GegenbauerTable: need max degree >= 0");
        coeffs_.reserve(static_cast<size_t>(max_degree) + 1);
        coeffs_.push_back({Rational(1)});
        if (max_degree >= 1) coeffs_.push_back({Rational(0), Rational(1)});
        for (int k = 2; k <= max_degree; ++k) {
            const std::vector<Rational>& g1 = coeffs_[static_cast<size_t>(k - 1)];
            const std::vector<Rational>& g2 = coeffs_[static_cast<size_t>(k - 2)];
            const Rational lead(2 * k + dim - 4, k + dim - 3);
            const Rational drop(k - 1, k + dim - 3);
            std::vector<Rational> g(static_cast<size_t>(k) + 1, Rational(0));
            for (size_t i = 0; i < g1.size(); ++i) g[i + 1] = lead * g1[i];
            for (size_t i = 0; i < g2.size(); ++i) g[i] -= drop * g2[i];
            coeffs_.push_back(std::move(g));
        }
    }

    int dim() const { return dim_; }
    int max_degree() const { return max_degree_; }

    /// Coefficients of G_k, ascending powers of x.
    const std::vector<Rational>& coefficients(int k) const {
        require_degree(k);
        return coeffs_[static_cast<size_t>(k)];
    }

    Rational evaluate(int k, const Rational& x) const {
        require_degree(k);
        const std::vector<Rational>& c = coeffs_[static_cast<size_t>(k)];
        Rational acc(0);
        for (size_t i = c.size(); i-- > 0;)
            acc = acc * x + c[i];
        return acc;
    }

    /// Normalized even moments m_0, m_2, ..., m_{2*count} of the weight.
    static std::vector<Rational> normalized_even_moments(int dim, int count) {
        if (dim < 2) throw PreconditionError("normalized_even_moments: need dimension >= 2");
        std::vector<Rational> m;
        m.reserve(static_cast<size_t>(count) + 1);
        m.emplace_back(1);
        for (long j = 1; j <= count; ++j)
            m.push_back(m.back() * Rational(2 * j - 1, 2 * j + dim - 2));
        return m;
    }

    /// <G_a, G_b> relative to total weight mass; exact, zero iff orthogonal.
    Rational inner_product(int a, int b) const {
        require_degree(a);
        require_degree(b);
        const std::vector<Rational>& ca = coeffs_[static_cast<size_t>(a)];
        const std::vector<Rational>& cb = coeffs_[static_cast<size_t>(b)];
        const std::vector<Rational> m = normalized_even_moments(dim_, (a + b) / 2 + 1);
        Rational total(0);
        for (size_t i = 0; i < ca.size(); ++i) {
            if (ca[i].is_zero()) continue;
            for (size_t j = 0; j < cb.size(); ++j) {
                if (cb[j].is_zero() || (i + j) % 2 == 1) continue;
                total += ca[i] * cb[j] * m[(i + j) / 2];
            }
        }
        return total;
    }

private:
    void require_degree(int k) const {
        if (k < 0 || k > max_degree_)
            throw PreconditionError("GegenbauerTable: degree " + std::to_string(k) +
                                    " outside table (max " + std::to_string(max_degree_) + ")");
    }

    int dim_;
    int max_degree_;
    std::vector<std::vector<Rational>> coeffs_;
};

} // namespace pteq
