#pragma once

//
// Symbolic calculus: truncated composition and adjoint expansions,
// M-ellipticity detection, the inverse cutoff symbol and the recursive
// parametrix construction, plus residual profiles against the dense
// matrix product.
//

#include <vector>

#include "wpdo/quantization.hpp"
#include "wpdo/symbols.hpp"

namespace wpdo {

struct EllipticityReport {
    bool is_elliptic = false;
    double C = 0.0;       ///< best lower constant on the window
    long R = 0;           ///< frequency threshold the constant is attained from
    long window = 0;
    double stability = 0.0;  ///< C on the full window over C on the half window
};

/// Truncated composition expansion for T_first T_second:
///   lambda_K = sum_{alpha<K} (1/alpha!) (Delta^alpha first) (D^(alpha) second),
/// where D^(alpha) = D(D-1)...(D-alpha+1) with D = -i d/dx is the
/// falling-factorial derivative the frequency shift produces (it matches
/// (-i d/dx)^alpha through alpha = 1). Differences land on the left factor,
/// x-derivatives on the right one; declared order = sum of the orders.
Symbol compose(const Symbol& first, const Symbol& second, int K_terms);

/// Truncated adjoint expansion:
///   tau_K = sum_{alpha<K} (1/alpha!) Delta^alpha D^(alpha) conj(sigma).
Symbol formal_adjoint(const Symbol& s, int K_terms);

/// min over x-grid and R <= |k| <= K of |sigma| / Lambda^m, for each candidate
/// R; elliptic when the best constant clears c_min and is stable from the
/// half window to the full one.
EllipticityReport m_ellipticity(const Symbol& s, long K, const std::vector<long>& R_grid = {},
                                double c_min = 1e-8, int M = 32);

/// Same with Re(sigma) / Lambda^m in place of the modulus.
EllipticityReport strong_m_ellipticity(const Symbol& s, long K,
                                       const std::vector<long>& R_grid = {},
                                       double c_min = 1e-8, int M = 32);

/// q(x,k) = psi(k)/sigma(x,k) with psi vanishing on |k| <= R1 and equal to 1
/// on |k| >= R2; declared order -m. Throws on near-zero divisors under the
/// open cutoff.
Symbol inverse_cutoff_symbol(const Symbol& s, double R1, double R2);

/// Parametrix of an M-elliptic symbol: tau = sum_{l<L} tau_l with
/// tau_0 = psi(k)/sigma (psi = 0 on |k| <= R, 1 on |k| >= 2R) and the
/// inductive corrections
///   tau_l = -[ sum_{gamma+j=l, j<l} (1/gamma!) (D^(gamma) sigma)(Delta^gamma tau_j) ] tau_0,
/// so that T_tau T_sigma - I smooths to order -rho*L.
/// R <= 0 requests the threshold from m_ellipticity (at least 1).
Symbol parametrix(const Symbol& s, int L, long R = 0);

/// The individual terms tau_0..tau_{L-1}; tau_l has declared order -m - rho*l.
std::vector<Symbol> parametrix_terms(const Symbol& s, int L, long R = 0);

struct ResidualProfile {
    std::vector<long> k;            ///< interior frequencies
    std::vector<double> left;       ///< column norms of T_t T_s - I
    std::vector<double> right;      ///< column norms of T_s T_t - I
};

/// Per-frequency residual ||(matrix(t) matrix(s) - I) e_k||_2 and the reversed
/// product, restricted to interior frequencies.
ResidualProfile parametrix_residual(const Symbol& s, const Symbol& t, long N);

/// Least-squares slope of log(values) against log(Lambda(k)); pairs with
/// nonpositive values are skipped.
double fit_log_slope(const std::vector<long>& ks, const std::vector<double>& values,
                     const WeightFunction& w);

/// Max-abs entry over the interior block |row|,|col| <= N - margin.
double interior_max_abs(const Eigen::MatrixXcd& A, long N, long margin);

}  // namespace wpdo
