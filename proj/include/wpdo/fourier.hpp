#pragma once

//
// Discrete Fourier conventions on the circle, fixed once for the whole
// library:
//
//   forward:   f_hat(k) = (1/M) sum_j f(x_j) e^{-i k x_j},   x_j = 2*pi*j/M
//   inverse:   f(x)     = sum_{|k|<=N} f_hat(k) e^{i k x}
//   L2 norm:   ||f|| = ( 2*pi/M * sum_j |f(x_j)|^2 )^{1/2}
//                    = ( 2*pi * sum_k |f_hat(k)|^2 )^{1/2}   (band-limited f)
//
// With this pairing the operator with symbol 1 is exactly the identity.
// Transforms are direct O(M*N) sums; grid sizes here stay at desk scale.
//

#include "wpdo/types.hpp"

namespace wpdo {

/// Forward transform onto frequencies |k| <= N. Requires M >= 2N+1, else the
/// requested window is not alias-free.
CoeffVector forward_transform(const GridFunction& f, long N);

/// Trigonometric synthesis of a coefficient vector on an M-point grid.
/// Requires M >= 2N+1.
GridFunction inverse_transform(const CoeffVector& c, int M);

/// Grid-side L2 norm, (2*pi/M * sum |f_j|^2)^{1/2}.
double l2_norm(const GridFunction& f);

/// Coefficient-side L2 norm, (2*pi * sum |c_k|^2)^{1/2}.
double l2_norm(const CoeffVector& c);

/// Grid-side inner product <f, g> = 2*pi/M * sum_j f_j conj(g_j).
cplx l2_inner(const GridFunction& f, const GridFunction& g);

/// beta-th spectral derivative: multiply coefficients by (ik)^beta and
/// synthesize back on the same grid. f must be band-limited at
/// N = floor((M-1)/2); for even M the Nyquist bin is dropped.
GridFunction spectral_derivative(const GridFunction& f, int order);

/// Evaluate the trig polynomial sum c_k e^{ikx} at an arbitrary point.
cplx evaluate(const CoeffVector& c, double x);

/// Largest alias-free truncation radius held by an M-point grid.
long max_truncation(int M);

}  // namespace wpdo
