#pragma once

#include <random>

#include "wpdo/fourier.hpp"
#include "wpdo/types.hpp"

namespace wpdo::testing {

/// Random coefficients in the unit square, optionally damped by e^{-|k|/decay}.
inline CoeffVector random_coeffs(long N, unsigned seed, double decay = 0.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    CoeffVector c(N);
    for (long k = -N; k <= N; ++k) {
        cplx v(U(rng), U(rng));
        if (decay > 0.0) v *= std::exp(-std::abs(static_cast<double>(k)) / decay);
        c.at(k) = v;
    }
    return c;
}

inline GridFunction random_band_limited(long N, int M, unsigned seed, double decay = 0.0) {
    return inverse_transform(random_coeffs(N, seed, decay), M);
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

inline double max_abs_diff(const CoeffVector& a, const CoeffVector& b) {
    double m = 0.0;
    for (long k = -a.N; k <= a.N; ++k) m = std::max(m, std::abs(a.at(k) - b.at(k)));
    return m;
}

}  // namespace wpdo::testing
