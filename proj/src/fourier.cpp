#include "wpdo/fourier.hpp"

#include <cmath>

namespace wpdo {

long max_truncation(int M) {
    // Even grids lose the Nyquist bin: its +M/2 and -M/2 aliases coincide.
    return (M - 1) / 2;
}

CoeffVector forward_transform(const GridFunction& f, long N) {
    const int M = f.size();
    if (M < 2 * N + 1)
        throw_hypothesis("forward_transform: aliasing, grid size " + std::to_string(M) +
                         " cannot hold frequencies |k| <= " + std::to_string(N));
    CoeffVector c(N);
    for (long k = -N; k <= N; ++k) {
        cplx acc(0.0);
        for (int j = 0; j < M; ++j) {
            const double phase = -k * f.x(j);
            acc += f[j] * cplx(std::cos(phase), std::sin(phase));
        }
        c.at(k) = acc / static_cast<double>(M);
    }
    return c;
}

GridFunction inverse_transform(const CoeffVector& c, int M) {
    if (M < 2 * c.N + 1)
        throw_hypothesis("inverse_transform: grid size " + std::to_string(M) +
                         " too small for truncation N = " + std::to_string(c.N));
    GridFunction f(M);
    for (int j = 0; j < M; ++j) {
        const double xj = f.x(j);
        cplx acc(0.0);
        for (long k = -c.N; k <= c.N; ++k) {
            const double phase = k * xj;
            acc += c.at(k) * cplx(std::cos(phase), std::sin(phase));
        }
        f[j] = acc;
    }
    return f;
}

double l2_norm(const GridFunction& f) {
    double s = 0.0;
    for (const cplx& v : f.samples) s += std::norm(v);
    return std::sqrt(two_pi * s / f.size());
}

double l2_norm(const CoeffVector& c) {
    double s = 0.0;
    for (const cplx& v : c.coeffs) s += std::norm(v);
    return std::sqrt(two_pi * s);
}

cplx l2_inner(const GridFunction& f, const GridFunction& g) {
    if (f.size() != g.size())
        throw_config("l2_inner: grid sizes differ");
    cplx s(0.0);
    for (int j = 0; j < f.size(); ++j) s += f[j] * std::conj(g[j]);
    return two_pi * s / static_cast<double>(f.size());
}

GridFunction spectral_derivative(const GridFunction& f, int order) {
    if (order < 0) throw_config("spectral_derivative: order must be >= 0");
    if (order == 0) return f;
    const long N = max_truncation(f.size());
    CoeffVector c = forward_transform(f, N);
    for (long k = -N; k <= N; ++k) {
        cplx factor(1.0);
        const cplx ik(0.0, static_cast<double>(k));
        for (int b = 0; b < order; ++b) factor *= ik;
        c.at(k) *= factor;
    }
    return inverse_transform(c, f.size());
}

cplx evaluate(const CoeffVector& c, double x) {
    cplx acc(0.0);
    for (long k = -c.N; k <= c.N; ++k) {
        const double phase = k * x;
        acc += c.at(k) * cplx(std::cos(phase), std::sin(phase));
    }
    return acc;
}

}  // namespace wpdo
