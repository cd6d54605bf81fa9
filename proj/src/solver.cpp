#include "wpdo/solver.hpp"

#include <Eigen/LU>

#include <cmath>

namespace wpdo {

double lambda0_estimate(const Symbol& s, double m, long N) {
    const EllipticityReport ell = strong_m_ellipticity(s, std::max<long>(64, N));
    if (!ell.is_elliptic)
        throw_hypothesis("lambda0_estimate: symbol is not strongly M-elliptic");
    std::vector<long> Ns = N >= 16 ? std::vector<long>{N / 2, N} : std::vector<long>{N};
    const GardingReport rep = garding_constants(s, m, Ns);
    if (!rep.holds) throw_hypothesis("lambda0_estimate: no Garding certificate found");
    return rep.C1;
}

GmresOutcome gmres(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double rtol,
                   int max_iter) {
    const Eigen::Index n = A.rows();
    GmresOutcome out;
    out.x = Eigen::VectorXcd::Zero(n);
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        out.converged = true;
        return out;
    }
    const int m = static_cast<int>(std::min<Eigen::Index>(max_iter, n));
    Eigen::MatrixXcd V(n, m + 1);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
    std::vector<cplx> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m));
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(m + 1);

    V.col(0) = b / bnorm;
    g(0) = bnorm;
    int j = 0;
    for (; j < m; ++j) {
        Eigen::VectorXcd w = A * V.col(j);
        for (Eigen::Index i = 0; i <= j; ++i) {
            H(i, j) = V.col(i).dot(w);  // conjugated in the first argument
            w -= H(i, j) * V.col(i);
        }
        H(j + 1, j) = w.norm();
        if (std::abs(H(j + 1, j)) > 1e-300) V.col(j + 1) = w / H(j + 1, j);

        // apply stored Givens rotations, then zero the new subdiagonal
        for (int i = 0; i < j; ++i) {
            const cplx t = cs[static_cast<std::size_t>(i)] * H(i, j) +
                           sn[static_cast<std::size_t>(i)] * H(i + 1, j);
            H(i + 1, j) = -std::conj(sn[static_cast<std::size_t>(i)]) * H(i, j) +
                          std::conj(cs[static_cast<std::size_t>(i)]) * H(i + 1, j);
            H(i, j) = t;
        }
        const double denom = std::sqrt(std::norm(H(j, j)) + std::norm(H(j + 1, j)));
        if (denom < 1e-300) {
            ++j;
            break;
        }
        cs[static_cast<std::size_t>(j)] = std::conj(H(j, j)) / denom;
        sn[static_cast<std::size_t>(j)] = std::conj(H(j + 1, j)) / denom;
        H(j, j) = cs[static_cast<std::size_t>(j)] * H(j, j) +
                  sn[static_cast<std::size_t>(j)] * H(j + 1, j);
        H(j + 1, j) = 0.0;
        g(j + 1) = -std::conj(sn[static_cast<std::size_t>(j)]) * g(j);
        g(j) = cs[static_cast<std::size_t>(j)] * g(j);

        if (std::abs(g(j + 1)) <= rtol * bnorm) {
            ++j;
            out.converged = true;
            break;
        }
    }
    const int k = j;
    if (k > 0) {
        const Eigen::VectorXcd y =
            H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
        out.x = V.leftCols(k) * y;
    }
    out.iterations = k;
    if (!out.converged) out.converged = (A * out.x - b).norm() <= rtol * bnorm;
    return out;
}

namespace {

Eigen::MatrixXcd preconditioner_matrix(const Symbol& s, double lambda, long N, int L) {
    const EllipticityReport ell = m_ellipticity(s, std::max<long>(64, N));
    if (!ell.is_elliptic)
        throw_hypothesis("solve: parametrix preconditioning needs an M-elliptic symbol");
    const long R = std::max<long>(ell.R, 1);
    const Symbol tau = parametrix(s, L, R);
    Eigen::MatrixXcd P = matrix(tau, N).A;

    // The parametrix vanishes under its cutoff; complete those columns with
    // the inverse of the x-averaged symbol so P stays nonsingular.
    const int M = static_cast<int>(std::max<long>(4 * N + 4, s.x_resolution()));
    for (long l = -N; l <= N; ++l) {
        const double psi = cutoff_bridge(static_cast<double>(l), static_cast<double>(R),
                                         2.0 * static_cast<double>(R));
        if (psi >= 1.0) continue;
        cplx mean(0.0);
        for (int jx = 0; jx < M; ++jx) mean += s(two_pi * jx / M, l);
        mean = mean / static_cast<double>(M) + lambda;
        if (std::abs(mean) > 1e-12)
            P(l + N, l + N) += (1.0 - psi) / mean;
    }
    return P;
}

}  // namespace

SolveResult solve(const Symbol& s, double lambda, const GridFunction& f, long N, double tol,
                  bool precondition, int L, int max_iter, bool enforce_lambda0) {
    SolveResult result;
    result.preconditioned = precondition;

    if (enforce_lambda0) {
        try {
            const double lambda0 = lambda0_estimate(s, s.order() / 2.0, N);
            if (lambda < lambda0 - 1e-9)
                result.warning = "lambda = " + std::to_string(lambda) +
                                 " is below the Garding shift lambda0 = " + std::to_string(lambda0);
        } catch (const Error&) {
            result.warning = "lambda0 estimate unavailable for this symbol";
        }
    }

    const CoeffVector fh = forward_transform(f, N);
    const DenseOperator A = matrix(s, N);
    Eigen::MatrixXcd B = A.A + lambda * Eigen::MatrixXcd::Identity(A.dim(), A.dim());
    Eigen::VectorXcd rhs(A.dim());
    for (long k = -N; k <= N; ++k) rhs(A.idx(k)) = fh.at(k);

    Eigen::VectorXcd u;
    if (precondition) {
        const Eigen::MatrixXcd P = preconditioner_matrix(s, lambda, N, L);
        const GmresOutcome g = gmres(P * B, P * rhs, std::min(1e-12, tol * 1e-2), max_iter);
        u = g.x;
        result.iterations = std::max(1, g.iterations);
        result.converged = g.converged;
    } else {
        u = B.partialPivLu().solve(rhs);
        result.iterations = 1;
        result.converged = u.allFinite();
    }

    result.u_hat = CoeffVector(N);
    for (long k = -N; k <= N; ++k) result.u_hat.at(k) = u(A.idx(k));

    // Independent residual: quantization action on the recovered grid
    // function, never the Galerkin matrix.
    const int M_res = std::max<int>(f.size(), static_cast<int>(4 * N + 4));
    result.u = inverse_transform(result.u_hat, M_res);
    const GridFunction f_proj = inverse_transform(fh, M_res);
    GridFunction r = apply(s, result.u, N);
    for (int j = 0; j < M_res; ++j) r[j] += lambda * result.u[j] - f_proj[j];
    result.residual = l2_norm(r);

    const double fnorm = l2_norm(fh);
    if (!result.converged || !(result.residual <= tol * std::max(fnorm, 1e-300))) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
        const auto& sv = svd.singularValues();
        result.condition_estimate = sv(0) / std::max(sv(sv.size() - 1), 1e-300);
        if (sv(sv.size() - 1) <= 1e-12 * sv(0))
            throw_numerical("solve: system is numerically singular, condition ~ " +
                            std::to_string(result.condition_estimate) +
                            " (lambda below lambda0?)");
        result.converged = false;
        if (result.warning.empty())
            result.warning = "residual " + std::to_string(result.residual) +
                             " missed the tolerance; partial result returned";
    }
    return result;
}

double uniqueness_check(const Symbol& s, double lambda, long N) {
    const DenseOperator A = matrix(s, N);
    const Eigen::MatrixXcd B =
        A.A + lambda * Eigen::MatrixXcd::Identity(A.dim(), A.dim());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace wpdo
