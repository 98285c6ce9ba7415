#pragma once

#include <pteq/errors.hpp>
#include <pteq/gegenbauer.hpp>
#include <pteq/json_io.hpp>
#include <pteq/quadform.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pteq {

/*
 * A finite rational point set on the central quadric x^T Q x = r together
 * with a target strength t. Construction checks that every point lies on the
 * quadric exactly and that the set is nonempty.
 *
 * Strength is decided by the Gegenbauer pair-sum criterion:
 *
 *     X is a t-design  iff  sum_{x,y in X} G_k(x^T Q y / r) = 0  for k = 1..t.
 *
 * Why this is equivalent to the measure-theoretic definition, and exact: any
 * real change of basis L with L^T Q L = (1/r) I maps the quadric onto the
 * unit sphere and pushes the invariant measure to the uniform one. L itself
 * is irrational in general, but the transformed inner products are
 * (Lx)^T(Ly) = x^T Q y / r, which is rational. By the addition theorem each
 * pair sum equals a positive multiple of the squared norm of the degree-k harmonic
 * moment vector of the image set, so it vanishes exactly when that moment
 * does, and X maps to a spherical t-design iff all moments of degree 1..t
 * vanish. Every quantity the test touches is a rational number.
 */
struct DesignInstance {
    QuadraticForm form;
    Rational radius;
    std::vector<Point> points;
    int strength_target = 0;

    DesignInstance(QuadraticForm form_, Rational radius_, std::vector<Point> points_, int t)
        : form(std::move(form_)), radius(std::move(radius_)), points(std::move(points_)),
          strength_target(t) {
        if (radius.sign() <= 0)
            throw InstanceError("DesignInstance: radius must be positive");
        if (strength_target < 0)
            throw InstanceError("DesignInstance: strength target must be >= 0");
        if (points.empty())
            throw InstanceError("DesignInstance: point set is empty");
        for (size_t i = 0; i < points.size(); ++i) {
            if (static_cast<int>(points[i].size()) != form.dim())
                throw InstanceError("DesignInstance: point " + std::to_string(i) +
                                    " has wrong dimension");
            const Rational v = form.evaluate(points[i]);
            if (v != radius)
                throw InstanceError("DesignInstance: point " + std::to_string(i) +
                                    " is off the quadric (x^T Q x = " + v.str() +
                                    ", expected " + radius.str() + ")");
        }
    }
};

struct DesignCheck {
    bool ok = false;
    int failing_degree = 0; ///< first k in 1..t whose pair sum is nonzero; 0 when ok
    Rational failing_sum;   ///< that pair sum, exact
};

/// Pair-sum strength test; reports the first failing degree. t = 0 is vacuous.
inline DesignCheck verify_design(const DesignInstance& inst) {
    const int t = inst.strength_target;
    if (t == 0) return {true, 0, Rational(0)};
    if (inst.form.dim() < 2)
        throw PreconditionError("verify_design: need ambient dimension >= 2");
    const GegenbauerTable table(inst.form.dim(), t);

    const size_t npts = inst.points.size();
    // Pairwise cosines x^T Q y / r; diagonal entries are 1 by the invariant.
    std::vector<Rational> cos(npts * npts);
    const Rational rinv = inst.radius.reciprocal();
    for (size_t i = 0; i < npts; ++i)
        for (size_t j = i; j < npts; ++j) {
            Rational c = inst.form.pair(inst.points[i], inst.points[j]) * rinv;
            cos[i * npts + j] = c;
            cos[j * npts + i] = std::move(c);
        }

    for (int k = 1; k <= t; ++k) {
        Rational sum(0);
        for (size_t i = 0; i < npts; ++i) {
            sum += table.evaluate(k, cos[i * npts + i]);
            for (size_t j = i + 1; j < npts; ++j) {
                Rational v = table.evaluate(k, cos[i * npts + j]);
                sum += v + v;
            }
        }
        if (!sum.is_zero()) return {false, k, std::move(sum)};
    }
    return {true, 0, Rational(0)};
}

/*
 * The lower bound a t-design on a quadric in R^n must meet to be called
 * tight: C(n+s-1, s) + C(n+s-2, s-1) points for t = 2s, and 2 C(n+s-1, s)
 * for t = 2s+1.
 */
inline mpz_class tight_size(int n, int t) {
    if (n < 1 || t < 0) throw PreconditionError("tight_size: need n >= 1, t >= 0");
    auto binom = [](long a, long b) {
        mpz_class r;
        if (b < 0 || a < b) return mpz_class(0);
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
        return r;
    };
    const long s = t / 2;
    if (t % 2 == 0) return binom(n + s - 1, s) + binom(n + s - 2, s - 1);
    return 2 * binom(n + s - 1, s);
}

/// max over coordinates of max(|numerator|, denominator), canonical form.
inline mpz_class point_height(const Point& p) {
    mpz_class h = 0;
    for (const Rational& x : p) {
        mpz_class hx = x.height();
        if (hx > h) h = hx;
    }
    return h;
}

/*
 * Second intersection of the quadric x^T Q x = r with the line through base
 * along direction u: with base on the quadric the line parameter of the
 * other point solves s (2 u^T Q base + s u^T Q u) = 0, so
 *
 *     x = base - (2 u^T Q base / u^T Q u) u.
 *
 * Returns nothing when the chord meets the quadric only at base
 * (u^T Q base = 0). Positive definiteness keeps u^T Q u nonzero.
 */
inline std::optional<Point> chord_point(const QuadraticForm& q, const Rational& r,
                                        const Point& base, const Point& direction) {
    if (q.evaluate(base) != r)
        throw PreconditionError("chord_point: base is off the quadric");
    if (static_cast<int>(direction.size()) != q.dim())
        throw ShapeError("chord_point: direction dimension mismatch");
    bool all_zero = std::all_of(direction.begin(), direction.end(),
                                [](const Rational& x) { return x.is_zero(); });
    if (all_zero) throw PreconditionError("chord_point: zero direction");
    const Rational ub = q.pair(direction, base);
    if (ub.is_zero()) return std::nullopt;
    const Rational s = Rational(-2) * ub / q.pair(direction, direction);
    Point x(base.size());
    for (size_t i = 0; i < base.size(); ++i)
        x[i] = base[i] + s * direction[i];
    return x;
}

namespace detail {

/// Primitive integer direction vectors with entries in [-h, h], first nonzero
/// entry positive (u and -u cut the same chord), in lexicographic order.
inline std::vector<Point> primitive_directions(int dim, int h) {
    std::vector<long> u(static_cast<size_t>(dim), -h);
    std::vector<Point> out;
    auto gcd_all = [](const std::vector<long>& v) {
        long g = 0;
        for (long x : v) g = std::gcd(g, std::labs(x));
        return g;
    };
    while (true) {
        long first = 0;
        for (long x : u) {
            if (x != 0) { first = x; break; }
        }
        if (first > 0 && gcd_all(u) == 1) {
            Point p;
            p.reserve(u.size());
            for (long x : u) p.emplace_back(x);
            out.push_back(std::move(p));
        }
        int i = dim - 1;
        while (i >= 0 && u[static_cast<size_t>(i)] == h) {
            u[static_cast<size_t>(i)] = -h;
            --i;
        }
        if (i < 0) break;
        ++u[static_cast<size_t>(i)];
    }
    return out;
}

} // namespace detail

/*
 * All rational points reached from base by chords with primitive integer
 * directions of height <= height_bound. Output is deduplicated and sorted
 * lexicographically; base itself only appears if some chord regenerates it,
 * which the u^T Q base = 0 skip rules out.
 */
inline std::vector<Point> enumerate_rational_points(const QuadraticForm& q, const Rational& r,
                                                    const Point& base, int height_bound) {
    if (q.evaluate(base) != r)
        throw PreconditionError("enumerate_rational_points: base is off the quadric");
    if (height_bound < 1)
        throw PreconditionError("enumerate_rational_points: height bound must be >= 1");
    std::vector<Point> out;
    for (const Point& u : detail::primitive_directions(q.dim(), height_bound)) {
        if (auto x = chord_point(q, r, base, u)) out.push_back(std::move(*x));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/*
 * Bounded brute-force scan for any rational point on the quadric with
 * coordinate heights <= h, trying candidates in lexicographic order. Meant
 * to seed enumerate_rational_points when the caller has no base in hand.
 */
inline std::optional<Point> find_point_by_scan(const QuadraticForm& q, const Rational& r, int h) {
    if (h < 1) throw PreconditionError("find_point_by_scan: height bound must be >= 1");
    std::vector<Rational> candidates;
    for (long den = 1; den <= h; ++den)
        for (long num = -h; num <= h; ++num) {
            Rational x(num, den);
            if (x.height() <= h) candidates.push_back(std::move(x));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const int dim = q.dim();
    std::vector<size_t> idx(static_cast<size_t>(dim), 0);
    while (true) {
        Point p;
        p.reserve(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) p.push_back(candidates[idx[static_cast<size_t>(i)]]);
        if (q.evaluate(p) == r) return p;
        int i = dim - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] + 1 == candidates.size()) {
            idx[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) return std::nullopt;
        ++idx[static_cast<size_t>(i)];
    }
}

// --- instance file format: {"form": matrix, "r": "p/q", "t": int, "points": [[...], ...]}

inline Json to_json(const DesignInstance& inst) {
    Json pts = Json::array();
    for (const Point& p : inst.points) pts.push_back(to_json(p));
    return Json{{"form", to_json(inst.form.gram())},
                {"r", inst.radius.str()},
                {"t", inst.strength_target},
                {"points", std::move(pts)}};
}

inline DesignInstance instance_from_json(const Json& j) {
    if (!j.is_object())
        throw ParseError("design instance: expected {form, r, t, points}");
    for (const char* key : {"form", "r", "t", "points"})
        if (!j.contains(key)) throw ParseError(std::string("design instance: missing field ") + key);
    return DesignInstance(QuadraticForm(matrix_from_json(j.at("form"))),
                          rational_from_json(j.at("r")),
                          points_from_json(j.at("points")),
                          j.at("t").get<int>());
}

} // namespace pteq
