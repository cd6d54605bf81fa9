#pragma once

//
// Strong-solution solver for (T_sigma + lambda I) u = f on the circle via the
// Galerkin truncation, with the shift lambda_0 extracted from the Garding
// constants and optional parametrix preconditioning of the Krylov iteration.
//

#include <string>

#include "wpdo/diagnostics.hpp"

namespace wpdo {

struct SolveResult {
    GridFunction u;        ///< solution samples on the residual grid
    CoeffVector u_hat;     ///< solved coefficients on |k| <= N
    double residual = 0.0; ///< L2 of T_sigma u + lambda u - f, recomputed through
                           ///< apply(), measured against the order-N part of f
    int iterations = 1;
    bool preconditioned = false;
    bool converged = false;
    double condition_estimate = 0.0;  ///< sigma_max/sigma_min, filled on failure
    std::string warning;
};

/// lambda_0 = C1 from the Garding constants of sigma (order 2m); requires
/// strong M-ellipticity. Throws a hypothesis error when Garding fails.
double lambda0_estimate(const Symbol& s, double m, long N);

/// Solve (matrix(sigma, N) + lambda I) u_hat = f_hat. Direct dense solve by
/// default; with precondition = true a left parametrix-preconditioned GMRES
/// runs instead (the preconditioner completes the parametrix cutoff zone with
/// the diagonal inverse of the averaged symbol, which the raw parametrix
/// annihilates). lambda >= lambda_0 is checked when enforce_lambda0 is set and
/// the estimate is available; an override leaves a warning in the result.
SolveResult solve(const Symbol& s, double lambda, const GridFunction& f, long N, double tol,
                  bool precondition, int L = 2, int max_iter = 500,
                  bool enforce_lambda0 = true);

/// Smallest singular value of matrix(sigma, N) + lambda I.
double uniqueness_check(const Symbol& s, double lambda, long N);

/// Left-preconditioned full GMRES on a dense system; residual norms are
/// monotone by construction.
struct GmresOutcome {
    Eigen::VectorXcd x;
    int iterations = 0;
    bool converged = false;
};
GmresOutcome gmres(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double rtol,
                   int max_iter);

}  // namespace wpdo
