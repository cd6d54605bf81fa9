#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "wpdo/error.hpp"

namespace wpdo {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Periodic function sampled on the uniform grid x_j = 2*pi*j/M of [0, 2*pi).
struct GridFunction {
    std::vector<cplx> samples;

    GridFunction() = default;
    explicit GridFunction(int m) : samples(static_cast<std::size_t>(m)) {
        if (m < 1) throw_config("GridFunction: grid size must be positive");
    }

    int size() const { return static_cast<int>(samples.size()); }
    double x(int j) const { return two_pi * j / size(); }

    cplx& operator[](int j) { return samples[static_cast<std::size_t>(j)]; }
    const cplx& operator[](int j) const { return samples[static_cast<std::size_t>(j)]; }
};

/// Fourier coefficients (or a windowed sequence on Z) indexed by k in {-N,...,N}.
struct CoeffVector {
    std::vector<cplx> coeffs;
    long N = 0;

    CoeffVector() = default;
    explicit CoeffVector(long n) : coeffs(static_cast<std::size_t>(2 * n + 1)), N(n) {
        if (n < 0) throw_config("CoeffVector: truncation radius must be nonnegative");
    }

    long size() const { return 2 * N + 1; }
    bool contains(long k) const { return k >= -N && k <= N; }

    cplx& at(long k) { return coeffs[static_cast<std::size_t>(k + N)]; }
    const cplx& at(long k) const { return coeffs[static_cast<std::size_t>(k + N)]; }

    /// Value with zero extension outside the window.
    cplx value_or_zero(long k) const { return contains(k) ? at(k) : cplx(0.0); }
};

/// Windowed sequences on Z share the representation of coefficient vectors.
using LatticeSequence = CoeffVector;

}  // namespace wpdo
