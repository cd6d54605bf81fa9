#pragma once

//
// Operators from symbols: the action T_sigma f(x) = sum_k e^{ikx} sigma(x,k) f_hat(k)
// on grid functions, its dense Galerkin matrix on the frequency window
// |k| <= N, the sequence-side quantization on Z, the duality transfer between
// the two, and Bessel potentials.
//

#include <Eigen/Dense>

#include "wpdo/fourier.hpp"
#include "wpdo/symbols.hpp"
#include "wpdo/types.hpp"

namespace wpdo {

/// Galerkin truncation of T_sigma: rows/cols indexed by frequencies in
/// {-N,...,N}; entry (k,l) = sigma_hat(k-l, l) with sigma_hat the x-Fourier
/// coefficients of sigma(., l).
struct DenseOperator {
    Eigen::MatrixXcd A;
    long N = 0;

    DenseOperator() = default;
    DenseOperator(Eigen::MatrixXcd a, long n) : A(std::move(a)), N(n) {}

    long dim() const { return 2 * N + 1; }
    Eigen::Index idx(long k) const { return static_cast<Eigen::Index>(k + N); }

    cplx& entry(long k, long l) { return A(idx(k), idx(l)); }
    const cplx& entry(long k, long l) const { return A(idx(k), idx(l)); }
};

/// T_sigma f sampled on f's grid. f must hold the window |k| <= N alias-free
/// (grid size >= 2N+1); the output is evaluated pointwise from the defining
/// sum, so it may carry frequencies up to N + bandwidth(sigma).
GridFunction apply(const Symbol& s, const GridFunction& f, long N);

/// Same action on a coefficient window.
CoeffVector apply(const Symbol& s, const CoeffVector& f_hat, int M_out = 0);

/// Dense Galerkin matrix on |k| <= N. The x-sampling resolution is chosen
/// internally (>= 4N+2) so every needed coefficient bin is alias-free.
DenseOperator matrix(const Symbol& s, long N);

/// Smallest B whose excluded tail of x-coefficient mass is below tol,
/// probed over a few frequencies. Used to pick interior windows for matrix
/// comparisons.
long x_bandwidth(const Symbol& s, double tol = 1e-12);

/// Sequence-side quantization on the window |n| <= f.N with zero extension:
/// (T_sigma f)(n) = (1/M) sum_j e^{i n x_j} sigma(n, x_j) (F_Z f)(x_j),
/// where F_Z f(x) = sum_m f(m) e^{-imx}. Requires the lattice side tag.
LatticeSequence lattice_apply(const Symbol& s, const LatticeSequence& f, int M);

/// Dense matrix of the lattice quantization on the window |n| <= N.
DenseOperator lattice_matrix(const Symbol& s, long N, int M);

/// F_Z as a grid function: g(x_j) = scale * sum_n f(n) e^{-i n x_j}.
/// unitary = false reproduces the bare sum; unitary = true applies the
/// 1/sqrt(2*pi) scale that makes the map an isometry for the L2(dx) norm
/// used by this library (the choice under which the weighted-norm identity
/// between the two sides is exact).
GridFunction lattice_fourier(const LatticeSequence& f, int M, bool unitary);

/// tau(x,k) = conj(sigma(-k, x)): the torus-side symbol whose adjoint
/// conjugates to the lattice operator.
Symbol duality_transfer(const Symbol& s);

/// Builds T_sigma on the lattice window twice: directly by quadrature and as
/// F_Z^{-1} T_tau^* F_Z through matrix(tau, N). Returns the max entrywise gap.
double duality_identity_check(const Symbol& s, long N, int M);

/// Bessel potential J_s: x-independent symbol Lambda(k)^{-s} of order -s.
Symbol bessel_potential(double s, const WeightFunction& w);

/// Conjugate transpose.
DenseOperator adjoint_matrix(const DenseOperator& op);

/// Operator norm of G_{s-m} A G_s^{-1} with G_t = diag(Lambda^t): the
/// H^s -> H^{s-m} norm of the truncation.
double sobolev_operator_norm(const DenseOperator& op, const WeightFunction& w, double s,
                             double m);

/// Matrix-vector product in CoeffVector form.
CoeffVector apply_matrix(const DenseOperator& op, const CoeffVector& f);

}  // namespace wpdo
