#pragma once

//
// Brute-force reference implementations certifying the fast paths. The
// quantization oracle evaluates the defining double sum with its own inline
// quadrature and shares no transform code with the library; the composition
// oracle is the plain product of Galerkin matrices; the diagonal Gohberg
// oracle reads singular values straight off |sigma(k)|.
//
// These run at N <= 64, M <= 256 on purpose: they are the correctness layer,
// not the performance layer, and they stay single-threaded so failures
// reproduce byte-for-byte.
//

#include <vector>

#include "wpdo/quantization.hpp"

namespace wpdo::oracle {

struct OracleConfig {
    long N = 32;
    int M = 128;
    double tolerance = 1e-10;
};

/// (1/2pi) sum_{|k|<=N} int e^{ik(x-y)} sigma(x,k) f(y) dy by direct
/// triple loop with M-point quadrature, sampled on f's grid.
GridFunction quantization_oracle(const Symbol& s, const GridFunction& f, long N);

/// matrix(s, N) * matrix(t, N): ground truth for composition expansions on
/// interior frequencies.
DenseOperator composition_oracle(const Symbol& s, const Symbol& t, long N);

struct DiagonalGohberg {
    std::vector<double> singular_values;  ///< descending, exactly {|sigma(k)|}
    std::vector<double> modulus_by_k;     ///< |sigma(k)| for k = -N..N
    long N = 0;

    /// Exact tail sup over K0 <= |k| <= N.
    double d_exact(long K0) const;
};

/// Refuses symbols with any x-variation.
DiagonalGohberg diagonal_gohberg_oracle(const Symbol& s, long N);

}  // namespace wpdo::oracle
