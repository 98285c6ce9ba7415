#pragma once

#include <pteq/linalg.hpp>
#include <pteq/matrix.hpp>
#include <pteq/sampling.hpp>

#include <random>
#include <string>

namespace pteq::testing {

inline std::string fixture(const std::string& name) {
    return std::string(PTEQ_FIXTURE_DIR) + "/" + name;
}

/// Random matrix resampled until nonsingular.
inline Matrix random_nonsingular(std::mt19937_64& rng, int n, long max_num = 4, long max_den = 4) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Matrix m = random_matrix(rng, n, n, max_num, max_den);
        if (!determinant(m).is_zero()) return m;
    }
    throw std::logic_error("random_nonsingular: exhausted attempts");
}

} // namespace pteq::testing
