#include "wpdo/quantization.hpp"

#include <cmath>

namespace wpdo {

namespace {

void require_torus(const Symbol& s, const char* who) {
    if (s.side() != SymbolSide::Torus)
        throw_config(std::string(who) + ": expected a torus-side symbol");
}

void require_lattice(const Symbol& s, const char* who) {
    if (s.side() != SymbolSide::Lattice)
        throw_config(std::string(who) + ": expected a lattice-side symbol");
}

}  // namespace

GridFunction apply(const Symbol& s, const GridFunction& f, long N) {
    require_torus(s, "apply");
    const int M = f.size();
    if (M < 2 * N + 1)
        throw_hypothesis("apply: aliasing, grid of size " + std::to_string(M) +
                         " cannot carry |k| <= " + std::to_string(N));
    const CoeffVector fh = forward_transform(f, N);
    GridFunction out(M);
    for (int j = 0; j < M; ++j) {
        const double x = f.x(j);
        cplx acc(0.0);
        for (long k = -N; k <= N; ++k) {
            const double phase = k * x;
            acc += cplx(std::cos(phase), std::sin(phase)) * s(x, k) * fh.at(k);
        }
        out[j] = acc;
    }
    return out;
}

CoeffVector apply(const Symbol& s, const CoeffVector& f_hat, int M_out) {
    const long N = f_hat.N;
    if (M_out <= 0) M_out = static_cast<int>(4 * N + 4);
    GridFunction f = inverse_transform(f_hat, M_out);
    return forward_transform(apply(s, f, N), N);
}

DenseOperator matrix(const Symbol& s, long N) {
    require_torus(s, "matrix");
    // Columns need bins |b| <= 2N; sample sigma(., l) well above that.
    const int M = static_cast<int>(std::max<long>(4 * N + 2, s.x_resolution()));
    DenseOperator op(Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1), N);
    std::vector<cplx> column(static_cast<std::size_t>(M));
    for (long l = -N; l <= N; ++l) {
        for (int j = 0; j < M; ++j) column[static_cast<std::size_t>(j)] = s(two_pi * j / M, l);
        for (long k = -N; k <= N; ++k) {
            const long b = k - l;
            cplx acc(0.0);
            for (int j = 0; j < M; ++j) {
                const double phase = -b * two_pi * j / M;
                acc += column[static_cast<std::size_t>(j)] * cplx(std::cos(phase), std::sin(phase));
            }
            op.entry(k, l) = acc / static_cast<double>(M);
        }
    }
    return op;
}

long x_bandwidth(const Symbol& s, double tol) {
    XSeries xs(s);
    const long probes[] = {0, 1, -1, 5, -7, 16, -23};
    long band = 0;
    for (long k : probes) {
        if (!s.domain().contains(k)) continue;
        const std::vector<cplx>& c = xs.coeffs(k);
        const long B = (static_cast<long>(c.size()) - 1) / 2;
        double total = 0.0;
        for (const cplx& v : c) total += std::abs(v);
        if (total == 0.0) continue;
        double tail = 0.0;
        long needed = B;
        for (long b = B; b >= 1; --b) {
            tail += std::abs(c[static_cast<std::size_t>(B + b)]) +
                    std::abs(c[static_cast<std::size_t>(B - b)]);
            if (tail >= tol * total) {
                needed = b;
                break;
            }
            needed = b - 1;
        }
        band = std::max(band, needed);
    }
    return band;
}

LatticeSequence lattice_apply(const Symbol& s, const LatticeSequence& f, int M) {
    require_lattice(s, "lattice_apply");
    const long N = f.N;
    if (M < 2 * N + 1)
        throw_hypothesis("lattice_apply: quadrature grid too small for the window");
    // F_Z f on the quadrature grid
    std::vector<cplx> g(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double x = two_pi * j / M;
        cplx acc(0.0);
        for (long m = -N; m <= N; ++m) {
            const double phase = -m * x;
            acc += f.at(m) * cplx(std::cos(phase), std::sin(phase));
        }
        g[static_cast<std::size_t>(j)] = acc;
    }
    LatticeSequence out(N);
    for (long n = -N; n <= N; ++n) {
        cplx acc(0.0);
        for (int j = 0; j < M; ++j) {
            const double x = two_pi * j / M;
            const double phase = n * x;
            acc += cplx(std::cos(phase), std::sin(phase)) * s(x, n) * g[static_cast<std::size_t>(j)];
        }
        out.at(n) = acc / static_cast<double>(M);
    }
    return out;
}

DenseOperator lattice_matrix(const Symbol& s, long N, int M) {
    DenseOperator op(Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1), N);
    for (long m = -N; m <= N; ++m) {
        LatticeSequence e(N);
        e.at(m) = 1.0;
        const LatticeSequence col = lattice_apply(s, e, M);
        for (long n = -N; n <= N; ++n) op.entry(n, m) = col.at(n);
    }
    return op;
}

GridFunction lattice_fourier(const LatticeSequence& f, int M, bool unitary) {
    if (M < 2 * f.N + 1)
        throw_hypothesis("lattice_fourier: grid too small for the window");
    const double scale = unitary ? 1.0 / std::sqrt(two_pi) : 1.0;
    GridFunction g(M);
    for (int j = 0; j < M; ++j) {
        const double x = g.x(j);
        cplx acc(0.0);
        for (long n = -f.N; n <= f.N; ++n) {
            const double phase = -n * x;
            acc += f.at(n) * cplx(std::cos(phase), std::sin(phase));
        }
        g[j] = scale * acc;
    }
    return g;
}

Symbol duality_transfer(const Symbol& s) {
    require_lattice(s, "duality_transfer");
    KRange d{-s.domain().hi, -s.domain().lo};
    return Symbol([s](double x, long k) { return std::conj(s(x, -k)); }, s.order(), s.rho(),
                  s.weight(), SymbolSide::Torus, d, s.x_resolution(),
                  s.label().empty() ? std::string{} : s.label() + "_transferred");
}

double duality_identity_check(const Symbol& s, long N, int M) {
    require_lattice(s, "duality_identity_check");
    const DenseOperator direct = lattice_matrix(s, N, M);

    const Symbol tau = duality_transfer(s);
    const DenseOperator B = matrix(tau, N);
    // F_Z^{-1} T_tau^* F_Z in window coordinates: entry (n,m) = conj(B(-m,-n)).
    DenseOperator transferred(Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1), N);
    for (long n = -N; n <= N; ++n)
        for (long m = -N; m <= N; ++m)
            transferred.entry(n, m) = std::conj(B.entry(-m, -n));

    return (direct.A - transferred.A).cwiseAbs().maxCoeff();
}

Symbol bessel_potential(double s, const WeightFunction& w) {
    return Symbol([w, s](double, long k) { return cplx(std::pow(w(k), -s), 0.0); }, -s, 1.0 / w.mu(),
                  w, SymbolSide::Torus, KRange::all(), 16,
                  "bessel_s=" + std::to_string(s));
}

DenseOperator adjoint_matrix(const DenseOperator& op) {
    return DenseOperator(op.A.adjoint(), op.N);
}

double sobolev_operator_norm(const DenseOperator& op, const WeightFunction& w, double s,
                             double m) {
    const long N = op.N;
    Eigen::VectorXcd g_out(op.dim()), g_in(op.dim());
    for (long k = -N; k <= N; ++k) {
        g_out(op.idx(k)) = std::pow(w(k), s - m);
        g_in(op.idx(k)) = std::pow(w(k), -s);
    }
    const Eigen::MatrixXcd scaled = g_out.asDiagonal() * op.A * g_in.asDiagonal();
    return scaled.jacobiSvd().singularValues()(0);
}

CoeffVector apply_matrix(const DenseOperator& op, const CoeffVector& f) {
    if (f.N != op.N) throw_config("apply_matrix: window mismatch");
    Eigen::VectorXcd v(op.dim());
    for (long k = -op.N; k <= op.N; ++k) v(op.idx(k)) = f.at(k);
    const Eigen::VectorXcd w = op.A * v;
    CoeffVector out(op.N);
    for (long k = -op.N; k <= op.N; ++k) out.at(k) = w(op.idx(k));
    return out;
}

}  // namespace wpdo
