#pragma once

#include <random>

#include "gaugeobs/matrix.hpp"

namespace gaugeobs::testsupport {

// Deterministic RNG so failures reproduce across runs.
inline std::mt19937_64 make_rng(unsigned seed = 0x5eed) { return std::mt19937_64(seed); }

inline Int random_int(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return Int(d(rng));
}

inline IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                   long lo = -5, long hi = 5) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_int(rng, lo, hi);
    return m;
}

inline Rat random_rat(std::mt19937_64& rng, long num_bound, long den_bound) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound);
    std::uniform_int_distribution<long> den(1, den_bound);
    return make_rat(Int(num(rng)), Int(den(rng)));
}

inline RatMatrix random_rat_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                   long num_bound = 4, long den_bound = 4) {
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rat(rng, num_bound, den_bound);
    return m;
}

}  // namespace gaugeobs::testsupport
