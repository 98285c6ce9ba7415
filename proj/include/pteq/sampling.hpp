#pragma once

#include <pteq/matrix.hpp>
#include <pteq/n2.hpp>
#include <pteq/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <random>

namespace pteq {

/*
 * Deterministic, seedable sources of random exact objects. Everything here
 * is driven by a caller-owned mt19937_64 so identical seeds reproduce
 * identical objects across runs and platforms.
 */

inline Rational random_small_rational(std::mt19937_64& rng, long max_num = 4, long max_den = 4) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols,
                            long max_num = 4, long max_den = 4) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = random_small_rational(rng, max_num, max_den);
    return m;
}

inline Permutation random_permutation(std::mt19937_64& rng, int n) {
    Permutation p = identity_permutation(n);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/*
 * Random skew-symmetric S with S 1 = 0, sampled from a basis of that space.
 * For each 1 <= i < j <= n-1 the 3-cycle matrix supported on rows/columns
 * {i, j, n} (+1 at (i,j), (j,n), (n,i), -1 mirrored) is skew with zero row
 * sums; these (n-1)(n-2)/2 matrices are independent and span, so random
 * small-rational coefficients hit the preconditions by construction instead
 * of by rejection.
 */
inline Matrix random_skew_fixing_ones(std::mt19937_64& rng, int n,
                                      long max_num = 3, long max_den = 3) {
    Matrix s(n, n);
    const int last = n - 1;
    for (int i = 0; i + 1 < last; ++i)
        for (int j = i + 1; j < last; ++j) {
            const Rational c = random_small_rational(rng, max_num, max_den);
            if (c.is_zero()) continue;
            s(i, j) += c;
            s(j, i) -= c;
            s(j, last) += c;
            s(last, j) -= c;
            s(last, i) += c;
            s(i, last) -= c;
        }
    return s;
}

struct RandomN2Options {
    long max_num = 3;
    long max_den = 3;
};

/// Random certified element: a Cayley transform of a random certificate.
inline N2Element random_n2_element(std::mt19937_64& rng, int n,
                                   const RandomN2Options& opts = {}) {
    Matrix s = random_skew_fixing_ones(rng, n, opts.max_num, opts.max_den);
    Permutation r = random_permutation(rng, n);
    return cayley(s, r);
}

} // namespace pteq
